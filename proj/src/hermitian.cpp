#include "hermitian.hpp"

#include <algorithm>
#include <cmath>

namespace bergman {

HermitianMatrix::HermitianMatrix(int dim) : dim_(dim) {
  require(dim >= 1, ErrorCode::InvalidArgument, "dim must be >= 1");
  require(dim <= kMaxEigenDim, ErrorCode::SizeExceeded, "dim above eigensolver cap");
  a_.assign(static_cast<size_t>(dim) * dim, Complex(0.0, 0.0));
}

HermitianMatrix::HermitianMatrix(int dim, std::vector<Complex> entries) : HermitianMatrix(dim) {
  require(entries.size() == a_.size(), ErrorCode::InvalidArgument, "entry count mismatch");
  double scale = 0.0, asym = 0.0;
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const Complex v = entries[static_cast<size_t>(i) * dim + j];
      const Complex w = std::conj(entries[static_cast<size_t>(j) * dim + i]);
      scale = std::max(scale, std::abs(v));
      asym = std::max(asym, std::abs(v - w));
      a_[static_cast<size_t>(i) * dim + j] = 0.5 * (v + w);
    }
    a_[static_cast<size_t>(i) * dim + i] = Complex(a_[static_cast<size_t>(i) * dim + i].real(), 0.0);
  }
  require(asym <= 1e-13 * std::max(scale, 1e-300) || asym == 0.0, ErrorCode::InvalidArgument,
          "input matrix is not Hermitian");
}

void HermitianMatrix::set(int i, int j, Complex v) {
  a_[static_cast<size_t>(i) * dim_ + j] = v;
  if (i == j)
    a_[static_cast<size_t>(i) * dim_ + i] = Complex(v.real(), 0.0);
  else
    a_[static_cast<size_t>(j) * dim_ + i] = std::conj(v);
}

double HermitianMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const Complex& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

double HermitianMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i).real();
  return t;
}

namespace {

double offdiag_norm(const std::vector<Complex>& a, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s += std::norm(a[static_cast<size_t>(i) * n + j]);
  return std::sqrt(2.0 * s);
}

}  // namespace

Spectrum hermitian_eigenvalues(const HermitianMatrix& h) {
  const int n = h.dim();
  std::vector<Complex> a = h.entries();
  auto at = [&](int i, int j) -> Complex& { return a[static_cast<size_t>(i) * n + j]; };

  const double fro = h.frobenius_norm();
  const double target = 1e-12 * fro;

  for (int sweep = 0; sweep < 100 && offdiag_norm(a, n) > target; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex apq = at(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const double app = at(p, p).real();
        const double aqq = at(q, q).real();
        // Unitary 2x2 rotation diag(phase) * Givens annihilating a[p][q].
        const double tau = (app - aqq) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sigma = t * c;
        const Complex phase = apq / mag;
        const Complex s = sigma * std::conj(phase);  // column mix: p' = c p + s q

        for (int i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          const Complex aip = at(i, p);
          const Complex aiq = at(i, q);
          at(i, p) = c * aip + s * aiq;
          at(i, q) = -std::conj(s) * aip + c * aiq;
          at(p, i) = std::conj(at(i, p));
          at(q, i) = std::conj(at(i, q));
        }
        at(p, p) = Complex(app + t * mag, 0.0);
        at(q, q) = Complex(aqq - t * mag, 0.0);
        at(p, q) = Complex(0.0, 0.0);
        at(q, p) = Complex(0.0, 0.0);
      }
    }
  }

  Spectrum s;
  s.eigenvalues.resize(n);
  for (int i = 0; i < n; ++i) s.eigenvalues[i] = at(i, i).real();
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), std::greater<double>());
  return s;
}

double schatten_power_sum(const Spectrum& s, double p) {
  require(p > 0.0, ErrorCode::InvalidArgument, "p must be positive");
  double maxabs = 0.0;
  for (double v : s.eigenvalues) maxabs = std::max(maxabs, std::abs(v));
  double sum = 0.0, comp = 0.0;
  for (double v : s.eigenvalues) {  // already descending
    if (v < 0.0) {
      require(v >= -1e-10 * maxabs, ErrorCode::NegativeEigenvalue,
              "eigenvalue below the PSD tolerance");
      v = 0.0;
    }
    const double term = std::pow(v, p);
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace bergman
