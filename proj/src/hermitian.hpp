#pragma once

#include <complex>
#include <vector>

#include "errors.hpp"

namespace bergman {

using Complex = std::complex<double>;

inline constexpr int kMaxEigenDim = 4096;

// Dense Hermitian matrix; construction symmetrizes (A + A^H)/2 and requires
// the input to be Hermitian to 1e-13 relative.
class HermitianMatrix {
public:
  explicit HermitianMatrix(int dim);
  HermitianMatrix(int dim, std::vector<Complex> entries);  // row-major, dim*dim

  int dim() const { return dim_; }
  Complex operator()(int i, int j) const { return a_[static_cast<size_t>(i) * dim_ + j]; }
  void set(int i, int j, Complex v);  // also sets the conjugate mirror entry
  double frobenius_norm() const;
  double trace() const;
  const std::vector<Complex>& entries() const { return a_; }

private:
  int dim_;
  std::vector<Complex> a_;
};

struct Spectrum {
  std::vector<double> eigenvalues;  // sorted descending
};

// Cyclic complex Jacobi sweeps (row-major upper triangle) until the
// off-diagonal Frobenius norm falls below 1e-12 * ||H||_F.
Spectrum hermitian_eigenvalues(const HermitianMatrix& h);

// Sum of lambda^p in descending order with compensated accumulation.
// Negative eigenvalues above -1e-10*max|lambda| are clamped to zero; anything
// more negative signals a non-PSD discretization and raises.
double schatten_power_sum(const Spectrum& s, double p);

}  // namespace bergman
