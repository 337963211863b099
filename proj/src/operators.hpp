#pragma once

#include <memory>

#include "hermitian.hpp"
#include "kernels.hpp"
#include "measures.hpp"

namespace bergman {

enum class SectionKind { Toeplitz, HToeplitz, Volterra };

// Galerkin section of an operator in an orthonormal monomial basis. Toeplitz
// sections are Hermitian Gram matrices of the basis under mu; the Volterra
// section is a general complex matrix.
class OperatorSection {
public:
  OperatorSection(SectionKind kind, std::shared_ptr<const OrthoBasis> basis,
                  std::vector<Complex> matrix, bool truncated_tail);

  SectionKind kind() const { return kind_; }
  const OrthoBasis& basis() const { return *basis_; }
  int dim() const { return dim_; }
  Complex entry(int i, int j) const { return mat_[static_cast<size_t>(i) * dim_ + j]; }
  const std::vector<Complex>& matrix() const { return mat_; }
  bool truncated_tail() const { return truncated_tail_; }

  // Eigenvalues for the Hermitian kinds, singular values for Volterra.
  Spectrum spectrum() const;
  double schatten_pow(double p) const;  // |T|_p^p of the section
  double operator_norm() const;         // top singular value

private:
  SectionKind kind_;
  std::shared_ptr<const OrthoBasis> basis_;
  int dim_;
  std::vector<Complex> mat_;
  bool truncated_tail_;
};

OperatorSection toeplitz_section(std::shared_ptr<const OrthoBasis> basis,
                                 const WeightTransforms& w, const Measure& mu);
OperatorSection htoeplitz_section(std::shared_ptr<const OrthoBasis> basis,
                                  const WeightTransforms& w, const Measure& mu);
OperatorSection volterra_section(std::shared_ptr<const OrthoBasis> basis, const Polynomial& g);

// Berezin transform via the L^2_mu identity: sum_i m_i |B_z(z_i)|^2 / B_z(z).
double berezin(const KernelSeries& ks, const DiscreteMeasure& mu, const Point& z,
               double tol = 1e-10);

}  // namespace bergman
