#include "kernels.hpp"

#include <cmath>

namespace bergman {

namespace {

// log of the Bergman coefficient (n-1+k)! / (2 n! k! omega_{2n+2k-1})
double log_bergman_coef(const WeightTransforms& w, long k) {
  const int n = w.n();
  return std::lgamma(double(n + k)) - std::log(2.0) - std::lgamma(n + 1.0) -
         std::lgamma(k + 1.0) - std::log(w.moment(2.0 * n + 2.0 * k - 1.0));
}

double log_hw_coef(const WeightTransforms& w, double alpha, long k) {
  const int n = w.n();
  return std::lgamma(double(n + k)) - std::log(8.0) - std::lgamma(n + 1.0) -
         2.0 * std::log(double(k)) - std::lgamma(k + 1.0) -
         std::log(w.w_alpha_moment(alpha, k));
}

}  // namespace

KernelSeries KernelSeries::bergman(const WeightTransforms& w, double rho_max) {
  KernelSeries ks;
  ks.space_ = SpaceKind::A2;
  ks.n_ = w.n();
  ks.rho_max_ = rho_max;
  ks.a_.push_back(1.0 / w.omega_ball());
  double partial = ks.a_[0];
  double rho_pow = 1.0;
  for (size_t k = 1; k < kMaxTerms + kLookahead; ++k) {
    ks.a_.push_back(std::exp(log_bergman_coef(w, k)));
    rho_pow *= rho_max;
    partial += ks.a_.back() * rho_pow;
    if (k >= kLookahead && k % 64 == 0) {
      const double g = ks.a_[k] / ks.a_[k - 1];
      if (g * rho_max < 1.0) {
        const double bound = 2.0 * ks.a_[k] * rho_pow * g * rho_max / (1.0 - g * rho_max);
        if (bound <= 1e-15 * partial) break;
      }
    }
  }
  ks.finalize();
  return ks;
}

KernelSeries KernelSeries::hw(const WeightTransforms& w, double alpha, double rho_max) {
  require(alpha < 2.0, ErrorCode::InvalidArgument, "H(W_alpha) kernel needs alpha < 2");
  KernelSeries ks;
  ks.space_ = SpaceKind::HW;
  ks.alpha_ = alpha;
  ks.n_ = w.n();
  ks.rho_max_ = rho_max;
  ks.a_.push_back(1.0 / w.omega_ball());
  double partial = ks.a_[0];
  double rho_pow = 1.0;
  for (size_t k = 1; k < kMaxTerms + kLookahead; ++k) {
    ks.a_.push_back(std::exp(log_hw_coef(w, alpha, k)));
    rho_pow *= rho_max;
    partial += ks.a_.back() * rho_pow;
    if (k >= kLookahead && k % 64 == 0) {
      const double g = ks.a_[k] / ks.a_[k - 1];
      if (g * rho_max < 1.0) {
        const double bound = 2.0 * ks.a_[k] * rho_pow * g * rho_max / (1.0 - g * rho_max);
        if (bound <= 1e-15 * partial) break;
      }
    }
  }
  ks.finalize();
  return ks;
}

void KernelSeries::finalize() {
  const size_t len = a_.size();
  require(len > kLookahead, ErrorCode::TruncationFailure, "series too short");
  suffix_ratio_.assign(len, 0.0);
  double running = 0.0;
  for (size_t k = len - 1; k-- > 0;) {
    running = std::max(running, a_[k + 1] / a_[k]);
    suffix_ratio_[k] = running;
  }
  suffix_ratio_[len - 1] = running;
  usable_ = len - kLookahead;
}

double KernelSeries::tail_bound(double rho, size_t k) const {
  if (rho <= 0.0) return 0.0;
  const double g = suffix_ratio_[std::min(k, suffix_ratio_.size() - 1)];
  const double gr = g * rho;
  if (gr >= 1.0) return std::numeric_limits<double>::infinity();
  return 2.0 * a_[k] * std::pow(rho, double(k)) * gr / (1.0 - gr);
}

Complex KernelSeries::eval_inner(Complex u, double tol) const {
  const double rho = std::abs(u);
  require(rho <= rho_max_ * (1.0 + 1e-12), ErrorCode::TruncationFailure,
          "|<w,z>| beyond the certified radius");
  require(tol > 0.0, ErrorCode::InvalidArgument, "tol must be positive");

  Complex sum(0.0, 0.0), comp(0.0, 0.0), upow(1.0, 0.0);
  for (size_t k = 0; k < usable_; ++k) {
    const Complex term = a_[k] * upow;
    const Complex y = term - comp;
    const Complex t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    upow *= u;
    if ((k & 7u) == 7u || k + 1 == usable_) {
      const double bound = tail_bound(rho, k + 1);
      if (bound <= tol * std::abs(sum) || bound <= 1e-18 * a_[0]) return sum;
    }
  }
  fail(ErrorCode::TruncationFailure, "tail bound did not reach tolerance");
}

Complex KernelSeries::eval(const Point& z, const Point& w, double tol) const {
  require(z.n() == n_ && w.n() == n_, ErrorCode::InvalidArgument, "dimension mismatch");
  return eval_inner(inner(w, z), tol);
}

double KernelSeries::eval_diag(const Point& z, double tol) const {
  return eval_inner(Complex(z.norm() * z.norm(), 0.0), tol).real();
}

double KernelSeries::angular_mean_pow(double rho, double p, int nodes, double tol) const {
  double acc = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double th = 2.0 * M_PI * i / nodes;
    acc += std::pow(std::abs(eval_inner(Complex(rho * std::cos(th), rho * std::sin(th)), tol)), p);
  }
  return acc / nodes;
}

double KernelSeries::norm(const WeightTransforms& w, const Point& z, double p, double tol) const {
  require(space_ == SpaceKind::A2, ErrorCode::InvalidArgument,
          "A_omega^p norms are defined for the Bergman kernel");
  require(p > 0.0, ErrorCode::InvalidArgument, "p must be positive");
  require(z.norm() <= rho_max_, ErrorCode::TruncationFailure, "|z| beyond the certified radius");
  if (p == 2.0) return std::sqrt(eval_diag(z, tol));

  const double nz = z.norm();
  const int theta_nodes = 512;
  const GaussRule& gs = gauss_legendre(31);
  auto mp_pow = [&](double r) {
    if (n_ == 1) return angular_mean_pow(r * nz, p, theta_nodes, tol);
    // push <r xi, z> forward to the disk: density (n-1)/pi (1-s^2)^(n-2) * 2s
    double acc = 0.0;
    for (size_t i = 0; i < gs.x.size(); ++i) {
      const double s = 0.5 * (1.0 + gs.x[i]);
      acc += 0.5 * gs.w[i] * 2.0 * (n_ - 1.0) * s * std::pow(1.0 - s * s, n_ - 2.0) *
             angular_mean_pow(r * nz * s, p, theta_nodes, tol);
    }
    return acc;
  };
  const auto integral = integrate_radial(
      [&](double r, double gap) {
        return 2.0 * n_ * std::pow(r, 2.0 * n_ - 1.0) * w.weight().density_gap(gap) * mp_pow(r);
      },
      0.0, 1.0, 1e-9, w.gap_floor());
  const double boundary = 2.0 * n_ * w.boundary_mass() * mp_pow(1.0);
  return std::pow(integral.value + boundary, 1.0 / p);
}

std::function<Complex(const Point&)> KernelSeries::normalized(const WeightTransforms& w,
                                                              const Point& z, double p,
                                                              double tol) const {
  const double nrm = norm(w, z, p, tol);
  require(nrm > 0.0, ErrorCode::DegenerateWeight, "kernel norm vanished");
  return [this, z, nrm, tol](const Point& pt) { return eval(z, pt, tol) / nrm; };
}

}  // namespace bergman
