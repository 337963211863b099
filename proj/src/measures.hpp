#pragma once

#include <string>
#include <variant>

#include "basis.hpp"

namespace bergman {

inline constexpr double kAtomRadiusCap = 0.995;
inline constexpr double kMassCap = 1e12;

struct DiscreteMeasure {
  struct Atom {
    Point z;
    double mass = 0.0;
  };
  int n = 1;
  std::vector<Atom> atoms;

  double total_mass() const;
  DiscreteMeasure scaled(double c) const;
  static DiscreteMeasure delta(Point z, double mass = 1.0);
  void validate() const;  // masses > 0, |z| <= 0.995, dimensions agree
};

// d mu = phi(r) |P(z)|^2 dV; P == 1 gives a plain radial density. When phi
// carries mass below the resolvable gap floor (see WeightTransforms), that
// mass rides along as boundary_mass concentrated at |z| = 1.
struct RadialDensityMeasure {
  int n = 1;
  RadialIntegrand phi;
  Polynomial poly;
  double boundary_mass = 0.0;
  std::string description;
};

using Measure = std::variant<DiscreteMeasure, RadialDensityMeasure>;

int measure_dim(const Measure& mu);
double measure_total_mass(const Measure& mu, double rel_tol = 1e-10);

Measure identity_measure(const WeightTransforms& w);  // d mu = omega dV
// mu_g^omega: 4 |Rg(z)|^2 omega_nstar(|z|) / |z|^(2n) dV
Measure volterra_defect_measure(const WeightTransforms& w, const Polynomial& g);

// JSON schema: {"n":1, "atoms":[{"z":[[re,im],...], "mass":m}, ...]}
DiscreteMeasure parse_measure_json(const std::string& text);
// CLI argument: "id" | "delta:z=<re>[(+|-)<im>i][,mass=<m>]" | path to JSON file
Measure parse_measure_arg(const std::string& arg, const WeightTransforms& w);

// mu(S_a); atom membership uses |z_i| >= |a| and the cap filter.
double measure_block(const Measure& mu, const WeightTransforms& w, const Point& a);
// mu(D(z,r)) with Bergman radius r; Monte-Carlo for densities.
double measure_bergman_ball(const Measure& mu, const WeightTransforms& w, const Point& z, double r,
                            uint64_t seed = 1234);
// mu(R_{k,j}); atoms beyond the deepest shell are NOT counted here.
double measure_cell(const Measure& mu, const WeightTransforms& w, const DyadicPartition& part,
                    const DyadicPartition::CellId& id);

}  // namespace bergman
