#include "operators.hpp"

#include <cmath>

namespace bergman {

OperatorSection::OperatorSection(SectionKind kind, std::shared_ptr<const OrthoBasis> basis,
                                 std::vector<Complex> matrix, bool truncated_tail)
    : kind_(kind),
      basis_(std::move(basis)),
      dim_(static_cast<int>(basis_->size())),
      mat_(std::move(matrix)),
      truncated_tail_(truncated_tail) {
  require(mat_.size() == static_cast<size_t>(dim_) * dim_, ErrorCode::InvalidArgument,
          "matrix size mismatch");
}

Spectrum OperatorSection::spectrum() const {
  if (kind_ != SectionKind::Volterra) return hermitian_eigenvalues(HermitianMatrix(dim_, mat_));
  // singular values via M^H M
  std::vector<Complex> gram(static_cast<size_t>(dim_) * dim_, Complex(0.0, 0.0));
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      Complex s(0.0, 0.0);
      for (int k = 0; k < dim_; ++k) s += std::conj(entry(k, i)) * entry(k, j);
      gram[static_cast<size_t>(i) * dim_ + j] = s;
    }
  }
  Spectrum eig = hermitian_eigenvalues(HermitianMatrix(dim_, std::move(gram)));
  for (double& v : eig.eigenvalues) v = std::sqrt(std::max(v, 0.0));
  return eig;
}

double OperatorSection::schatten_pow(double p) const { return schatten_power_sum(spectrum(), p); }

double OperatorSection::operator_norm() const {
  const Spectrum s = spectrum();
  if (s.eigenvalues.empty()) return 0.0;
  if (kind_ != SectionKind::Volterra)
    return std::max(std::abs(s.eigenvalues.front()), std::abs(s.eigenvalues.back()));
  return s.eigenvalues.front();
}

namespace {

std::vector<Complex> gram_matrix(const OrthoBasis& basis, const WeightTransforms& w,
                                 const Measure& mu) {
  const int dim = static_cast<int>(basis.size());
  std::vector<Complex> mat(static_cast<size_t>(dim) * dim, Complex(0.0, 0.0));
  require(measure_dim(mu) == basis.n(), ErrorCode::InvalidArgument, "dimension mismatch");

  if (const auto* d = std::get_if<DiscreteMeasure>(&mu)) {
    require(d->total_mass() <= kMassCap, ErrorCode::MassOverflow, "total mass above 1e12");
    std::vector<Complex> v(dim);
    for (const auto& atom : d->atoms) {
      for (int i = 0; i < dim; ++i) v[i] = basis.eval_normalized(i, atom.z);
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
          mat[static_cast<size_t>(a) * dim + b] += atom.mass * std::conj(v[a]) * v[b];
    }
    return mat;
  }

  const auto& d = std::get<RadialDensityMeasure>(mu);
  const int n = d.n;
  // angular integrals are exact: entry (a,b) collects P-term pairs (u,v)
  // with m_b + u = m_a + v.
  std::map<long, double> radial_memo;  // by total degree
  auto radial = [&](int deg) {
    auto it = radial_memo.find(deg);
    if (it != radial_memo.end()) return it->second;
    const double s_exp = 2.0 * n - 1.0 + deg;
    const double val =
        integrate_radial([&](double r, double gap) { return std::pow(r, s_exp) * d.phi(r, gap); },
                         0.0, 1.0, w.rel_tol(), FixedGrid::instance().gap_floor)
            .value +
        d.boundary_mass;
    radial_memo.emplace(deg, val);
    return val;
  };

  for (int a = 0; a < dim; ++a) {
    const MultiIndex& ma = basis.index(a);
    for (int b = a; b < dim; ++b) {
      const MultiIndex& mb = basis.index(b);
      Complex acc(0.0, 0.0);
      for (const auto& [u, cu] : d.poly.terms()) {
        // need v = m_b + u - m_a componentwise >= 0
        MultiIndex v{std::vector<int>(n, 0)};
        bool ok = true;
        for (int k = 0; k < n; ++k) {
          v.m[k] = mb.m[k] + u.m[k] - ma.m[k];
          if (v.m[k] < 0) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        const Complex cv = d.poly.coefficient(v);
        if (cv == Complex(0.0, 0.0)) continue;
        MultiIndex c = mb;
        for (int k = 0; k < n; ++k) c.m[k] += u.m[k];
        const double ang = std::exp(log_sphere_monomial_integral(c));
        acc += cu * std::conj(cv) * ang * 2.0 * double(n) * radial(c.degree() * 2);
      }
      acc /= basis.norm(a) * basis.norm(b);
      mat[static_cast<size_t>(a) * dim + b] = acc;
      mat[static_cast<size_t>(b) * dim + a] = std::conj(acc);
    }
  }
  return mat;
}

}  // namespace

OperatorSection toeplitz_section(std::shared_ptr<const OrthoBasis> basis,
                                 const WeightTransforms& w, const Measure& mu) {
  require(basis->space() == SpaceKind::A2, ErrorCode::InvalidArgument,
          "Toeplitz section needs an A2 basis");
  auto mat = gram_matrix(*basis, w, mu);
  return OperatorSection(SectionKind::Toeplitz, std::move(basis), std::move(mat), false);
}

OperatorSection htoeplitz_section(std::shared_ptr<const OrthoBasis> basis,
                                  const WeightTransforms& w, const Measure& mu) {
  require(basis->space() == SpaceKind::HW, ErrorCode::InvalidArgument,
          "HToeplitz section needs an H(W_alpha) basis");
  auto mat = gram_matrix(*basis, w, mu);
  return OperatorSection(SectionKind::HToeplitz, std::move(basis), std::move(mat), false);
}

OperatorSection volterra_section(std::shared_ptr<const OrthoBasis> basis, const Polynomial& g) {
  require(basis->n() == g.n(), ErrorCode::InvalidArgument, "dimension mismatch");
  const int dim = static_cast<int>(basis->size());
  std::vector<Complex> mat(static_cast<size_t>(dim) * dim, Complex(0.0, 0.0));
  const Polynomial rg = radial_derivative(g);
  bool truncated = false;
  for (int b = 0; b < dim; ++b) {
    const MultiIndex& mb = basis->index(b);
    // column b: coefficients of T_g(z^mb)/||z^mb|| in the normalized basis
    for (const auto& [l, cl] : rg.terms()) {
      MultiIndex q = mb;
      for (int k = 0; k < basis->n(); ++k) q.m[k] += l.m[k];
      const int row = basis->position(q);
      if (row < 0) {
        truncated = true;
        continue;
      }
      const Complex val =
          cl / double(q.degree()) * basis->norm(row) / basis->norm(b);
      mat[static_cast<size_t>(row) * dim + b] += val;
    }
  }
  return OperatorSection(SectionKind::Volterra, std::move(basis), std::move(mat), truncated);
}

double berezin(const KernelSeries& ks, const DiscreteMeasure& mu, const Point& z, double tol) {
  require(z.norm() <= kAtomRadiusCap, ErrorCode::InvalidArgument, "|z| above the 0.995 cap");
  double num = 0.0;
  for (const auto& atom : mu.atoms) num += atom.mass * std::norm(ks.eval(z, atom.z, tol));
  return num / ks.eval_diag(z, tol);
}

}  // namespace bergman
