#pragma once

#include "basis.hpp"

namespace bergman {

// Truncated power series of a reproducing kernel in u = <w,z>. Coefficients
// are positive; tails are bounded by an empirically certified geometric
// majorant (suffix ratio over a 64-term lookahead window, doubled).
class KernelSeries {
public:
  static constexpr double kDefaultRhoMax = 0.995;
  static constexpr size_t kMaxTerms = 20000;
  static constexpr size_t kLookahead = 64;

  static KernelSeries bergman(const WeightTransforms& w, double rho_max = kDefaultRhoMax);
  static KernelSeries hw(const WeightTransforms& w, double alpha, double rho_max = kDefaultRhoMax);

  SpaceKind space() const { return space_; }
  double alpha() const { return alpha_; }
  int n() const { return n_; }
  double rho_max() const { return rho_max_; }
  size_t truncation() const { return usable_; }
  double coefficient(size_t k) const { return a_[k]; }

  // Upper bound for |sum_{j>k} a_j u^j| at |u| = rho.
  double tail_bound(double rho, size_t k) const;

  Complex eval_inner(Complex u, double tol) const;
  Complex eval(const Point& z, const Point& w, double tol) const;
  double eval_diag(const Point& z, double tol) const;  // kernel at w = z (real)

  // ||B_z||_{A_omega^p}: exact sqrt(B_z(z)) for p = 2, otherwise the radial
  // integral of M_p^p with angular means by 512-node trapezoid (Bergman
  // series only).
  double norm(const WeightTransforms& w, const Point& z, double p, double tol = 1e-10) const;

  // Pointwise evaluator of the normalized kernel b_z^(w,p) = B_z / ||B_z||_p.
  std::function<Complex(const Point&)> normalized(const WeightTransforms& w, const Point& z,
                                                  double p, double tol = 1e-10) const;

private:
  SpaceKind space_ = SpaceKind::A2;
  double alpha_ = 0.0;
  int n_ = 1;
  double rho_max_ = kDefaultRhoMax;
  std::vector<double> a_;
  std::vector<double> suffix_ratio_;
  size_t usable_ = 0;

  void finalize();
  double angular_mean_pow(double rho, double p, int nodes, double tol) const;
};

}  // namespace bergman
