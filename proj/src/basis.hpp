#pragma once

#include <map>
#include <string>
#include <vector>

#include "geometry.hpp"

namespace bergman {

struct MultiIndex {
  std::vector<int> m;

  int n() const { return static_cast<int>(m.size()); }
  int degree() const;
  double log_factorial() const;  // log(m!)
  bool operator==(const MultiIndex& o) const { return m == o.m; }
  bool operator<(const MultiIndex& o) const;  // graded lexicographic
};

// Sparse polynomial in z_1..z_n with complex coefficients; zero coefficients
// are never stored.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(int n) : n_(n) {}
  static Polynomial constant(int n, Complex c);
  static Polynomial monomial(const MultiIndex& m, Complex c);

  int n() const { return n_; }
  int degree() const;
  bool is_zero() const { return coef_.empty(); }
  const std::map<MultiIndex, Complex>& terms() const { return coef_; }

  void add_term(const MultiIndex& m, Complex c);
  Complex coefficient(const MultiIndex& m) const;
  Complex eval(const Point& z) const;
  Complex eval(const CVec& z) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(Complex c) const;

  // Literal syntax: "poly: 1 + (0.5+0i)*z1^2*z2" ('z' aliases 'z1'); the
  // prefix "poly:" is optional. force_n = 0 infers n from the variables used.
  static Polynomial parse(const std::string& text, int force_n = 0);
  std::string to_string() const;

private:
  int n_ = 1;
  std::map<MultiIndex, Complex> coef_;
};

// R f = sum_k z_k d f / d z_k: coefficient map m -> |m| f_m.
Polynomial radial_derivative(const Polynomial& f);

// T_g f as an exact polynomial: coefficients c_q of f * Rg divided by |q|.
Polynomial volterra_apply(const Polynomial& f, const Polynomial& g);

// All multi-indices with |m| <= max_degree in graded-lex order.
std::vector<MultiIndex> graded_indices(int n, int max_degree);

// log of the sphere integral: integral_S |eta^m|^2 dsigma = (n-1)! m! / (n-1+|m|)!
double log_sphere_monomial_integral(const MultiIndex& m);

enum class SpaceKind { A2, HW };

// Orthonormal monomial basis of A_omega^2 or H(W_alpha^omega), with exact
// norm constants derived from the weight's moments.
class OrthoBasis {
public:
  static OrthoBasis a2(const WeightTransforms& w, int max_degree);
  static OrthoBasis hw(const WeightTransforms& w, double alpha, int max_degree);

  SpaceKind space() const { return space_; }
  double alpha() const { return alpha_; }
  int n() const { return n_; }
  int max_degree() const { return max_degree_; }
  size_t size() const { return indices_.size(); }
  const std::vector<MultiIndex>& indices() const { return indices_; }
  const MultiIndex& index(size_t i) const { return indices_[i]; }
  double norm(size_t i) const { return norms_[i]; }  // ||z^m||
  int position(const MultiIndex& m) const;           // -1 if absent

  // e_i(z) = z^(m_i) / ||z^(m_i)||
  Complex eval_normalized(size_t i, const Point& z) const;
  // coefficient vector of a polynomial in the normalized basis
  std::vector<Complex> coefficients(const Polynomial& f) const;
  // squared norm of a polynomial in this space (exact coefficient sum)
  double norm_squared(const Polynomial& f) const;

private:
  SpaceKind space_ = SpaceKind::A2;
  double alpha_ = 0.0;
  int n_ = 1;
  int max_degree_ = 0;
  std::vector<MultiIndex> indices_;
  std::vector<double> norms_;
  std::map<MultiIndex, size_t> pos_;
};

}  // namespace bergman
