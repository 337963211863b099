#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quadrature.hpp"

namespace bergman {

// Radial weight on [0,1). Evaluation goes through the gap u = 1-r so that
// boundary-concentrated densities keep full precision inside quadratures.
struct RadialWeight {
  enum class Family { Standard, PowerGap, LogPow, ExpDecay, Tabulated };

  Family family = Family::Standard;
  double param = 0.0;  // alpha (Standard/PowerGap), beta (LogPow), c (ExpDecay)
  int n = 1;           // ambient complex dimension
  double norm_const = 1.0;
  std::vector<std::pair<double, double>> table;  // (r, omega(r)) rows, Tabulated only

  double density_gap(double gap) const;
  double density(double r) const { return density_gap(1.0 - r); }
  std::string describe() const;

  // standard: c_alpha (1-r^2)^alpha with c_alpha = Gamma(n+a+1)/(Gamma(n+1)Gamma(a+1))
  static RadialWeight standard(double alpha, int n);
  // power_gap: (1-r)^alpha, exact doubling constant 2^(alpha+1)
  static RadialWeight power_gap(double alpha, int n);
  // logpow: 1 / ((1-r) (log(e/(1-r)))^beta), beta > 1
  static RadialWeight logpow(double beta, int n);
  // expdecay: exp(-c/(1-r)), c > 0 (not doubling)
  static RadialWeight expdecay(double c, int n);
  static RadialWeight tabulated(std::vector<std::pair<double, double>> rows, int n);

  // Mini-language: std:alpha=<a> | pow:alpha=<a> | logpow:beta=<b> | exp:c=<c> | table:<path.csv>
  static RadialWeight parse(const std::string& spec, int n);
};

struct TransformConfig {
  double rel_tol = 1e-12;
  int grid_points = 48;        // cache grid r_j = 1 - 2^(-j/4)
  int moment_prefill = 600;    // integer moments cached through this exponent
};

// Immutable bundle of a weight and its derived transforms. All caches are
// filled during construction; later cache misses recompute without mutating,
// so const access is safe from any number of threads.
class WeightTransforms {
public:
  explicit WeightTransforms(RadialWeight w, TransformConfig cfg = {});

  const RadialWeight& weight() const { return w_; }
  int n() const { return w_.n; }
  double rel_tol() const { return cfg_.rel_tol; }

  double density(double r) const { return w_.density(r); }
  double omega_hat(double r) const;                  // ∫_r^1 omega
  double moment(double s) const;                     // omega_s = ∫_0^1 r^s omega
  double tail_moment(double r, double s) const;      // ∫_r^1 t^s omega
  double omega_star(double r) const;                 // ∫_r^1 s log(s/r) omega(s) ds
  double omega_nstar(double r) const;                // ∫_r^1 s^(2n-1) log(s/r) omega(s) ds
  double w_alpha(double alpha, double r) const;      // (1-r)^(-alpha) omega_nstar(r) / r^(2n)
  double w1(double r) const;                         // omega_hat(r) / (1-r)
  double omega_ball() const { return omega_ball_; }  // omega(B) = 2n omega_{2n-1}

  // Weight mass in the unresolvable sliver 1-r < 2^-60, carried by every
  // derived integral as a point mass at r = 1 (exact to ~1e-14 for the
  // integrands used here, which are flat across the sliver).
  double boundary_mass() const { return boundary_mass_; }
  double gap_floor() const { return gap_floor_; }

  enum class StarKind { Star, NStar, WAlpha, W1 };
  double star_family(StarKind kind, double alpha, double r) const;

  // ∫_0^1 t^(2k-1) (1-t)^(-alpha) omega_nstar(t) dt, exact cached node set
  double w_alpha_moment(double alpha, long k) const;

  const std::vector<double>& grid_r() const { return grid_r_; }
  const std::vector<double>& grid_omega_hat() const { return grid_hat_; }
  // Monotone-cubic interpolation of log omega_hat on the cache grid; cheap
  // profile evaluations only, asserted values always use the exact path.
  double omega_hat_approx(double r) const;

private:
  double omega_hat_compute(double r) const;
  double lookup(const std::map<double, double>& memo, double key) const;

  RadialWeight w_;
  TransformConfig cfg_;
  double omega_ball_ = 0.0;
  double boundary_mass_ = 0.0;
  double gap_floor_ = 0.0;

  std::vector<double> grid_r_, grid_hat_, grid_star_, grid_nstar_;
  std::vector<double> pchip_val_, pchip_slope_;  // on log omega_hat
  std::map<double, double> hat_memo_;
  std::vector<double> moment_cache_;  // integer exponents 0..moment_prefill
  std::vector<double> fixed_omega_;   // omega at the fixed composite nodes
  std::vector<double> fixed_nstar_;   // omega_nstar at the fixed composite nodes
};

struct Band {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  bool empty() const { return hi < lo; }
  // C such that all scanned values lie in [1/C, C]
  double two_sided() const { return std::max(hi, 1.0 / lo); }
};

struct ClassifyConfig {
  int grid_size = 256;
  double r_max = 0.999;
  double dhat_threshold = 1e4;
  double dhat_stability = 0.25;
  double dcheck_threshold = 1.05;
  double regular_band_ratio = 10.0;
  double trend_flat = 1.5;
};

struct ClassReport {
  double doubling_constant = 0.0;
  bool doubling_overflow = false;  // omega_hat underflowed inside the scan
  bool doubling_stable = false;
  std::optional<std::pair<double, double>> reverse_doubling;  // best (K, C)
  std::optional<double> k_omega_upper_estimate;
  Band regular_band;
  double regular_trend = 0.0;
  bool rapidly_increasing = false;
  bool in_dhat = false, in_dcheck = false, in_d = false, in_r = false, in_i = false;
  ClassifyConfig config;
};

ClassReport classify(const WeightTransforms& w, ClassifyConfig cfg = {});

// Single doubling ratio omega_hat(r) / omega_hat((1+r)/2).
double doubling_ratio(const WeightTransforms& w, double r);

// Lemma-style two-sided scans: omega_x vs omega_hat(1-1/x) over x = 2..2^max_pow,
// and omega_star(r) vs (1-r) omega_hat(r) over [r_lo, r_hi].
Band moment_tail_band(const WeightTransforms& w, int max_pow = 14);
Band star_tail_band(const WeightTransforms& w, double r_lo = 0.5, double r_hi = 0.999,
                    int points = 64);

}  // namespace bergman
