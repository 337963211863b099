#pragma once

#include <optional>

#include "operators.hpp"

namespace bergman {

// A computed statistic: the headline number plus a per-radius (or per-level)
// profile and whatever provenance the CLI reports echo.
struct CriterionReport {
  std::string kind;
  double headline = 0.0;
  std::vector<std::pair<double, double>> shell_profile;  // (radius or level, value)
  std::optional<Band> band;
  double mc_stderr = 0.0;
  bool level_overflow = false;
  double overflow_term = 0.0;
  std::vector<std::pair<std::string, double>> config;
  std::vector<std::string> notes;
};

std::string report_to_json(const CriterionReport& rep);

struct ShellGrid {
  double rmax = 0.999;
  int angular_samples = 128;
  uint64_t seed = 7;
};

// sup over Carleson blocks of mu(S_a) / omega(S_a)^(1/p - 1/q + 1); the grid
// pairs dyadic center radii with cap directions and includes the atoms.
CriterionReport carleson_quotient(const WeightTransforms& w, const Measure& mu, double p, double q,
                                  const DyadicPartition& part);

// sup of the Berezin transform over omega(S_z)^(1/p - 1/q).
CriterionReport berezin_quotient(const KernelSeries& ks, const WeightTransforms& w,
                                 const DiscreteMeasure& mu, double p, double q,
                                 const DyadicPartition& part);

// q < p: integral of (mu(D(z,r)) / omega(S_z))^(pq/(p-q)) W_1(|z|) dV.
CriterionReport qlessp_statistic(const WeightTransforms& w, const Measure& mu, double p, double q,
                                 double r, const ShellGrid& grid = {});

// M_mu = sum over cells of (mu(R_kj) / ((1-|c_kj|)^(n-1-alpha) omega_star(c_kj)))^p.
CriterionReport schatten_dyadic(const WeightTransforms& w, const Measure& mu,
                                const DyadicPartition& part, double p, double alpha = 0.0);

// integral of (mu(D(z,r)) / ((1-|z|)^(n-1-alpha) omega_star(z)))^p dlambda.
CriterionReport schatten_integral(const WeightTransforms& w, const Measure& mu, double p, double r,
                                  double alpha = 0.0, const ShellGrid& grid = {});

// sum over cells of (integral_R |Rg|^2 dV/(1-|z|)^(n-1))^(p/2).
CriterionReport besov_statistic(const Polynomial& g, const DyadicPartition& part, double p);

struct BesovIntegral {
  double value = 0.0;       // at the largest cutoff (full integral if convergent)
  double cutoff = 0.0;      // effective rmax used
  double trend_slope = 0.0; // dF / d log(1/(1-rmax)) at the deepest step
  bool divergent_exponent = false;  // p <= n case
};

// integral of |Rg|^p (1-|z|^2)^(p-n-1) dV, with a cutoff-growth trend when
// the exponent makes the boundary singular.
BesovIntegral besov_integral(const Polynomial& g, double p, double rmax = 0.999);

// The fixed desk-scale family: single atoms on 3 radii x 4 directions with
// varying masses.
std::vector<DiscreteMeasure> desk_measure_family(int n = 1);

}  // namespace bergman
