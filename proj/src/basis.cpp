#include "basis.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace bergman {

int MultiIndex::degree() const {
  int d = 0;
  for (int v : m) d += v;
  return d;
}

double MultiIndex::log_factorial() const {
  double s = 0.0;
  for (int v : m) s += std::lgamma(v + 1.0);
  return s;
}

bool MultiIndex::operator<(const MultiIndex& o) const {
  const int da = degree(), db = o.degree();
  if (da != db) return da < db;
  return m < o.m;
}

Polynomial Polynomial::constant(int n, Complex c) {
  Polynomial p(n);
  p.add_term(MultiIndex{std::vector<int>(n, 0)}, c);
  return p;
}

Polynomial Polynomial::monomial(const MultiIndex& m, Complex c) {
  Polynomial p(m.n());
  p.add_term(m, c);
  return p;
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [m, c] : coef_) d = std::max(d, m.degree());
  return d;
}

void Polynomial::add_term(const MultiIndex& m, Complex c) {
  require(m.n() == n_, ErrorCode::InvalidArgument, "multi-index dimension mismatch");
  auto it = coef_.find(m);
  if (it == coef_.end()) {
    if (c != Complex(0.0, 0.0)) coef_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second == Complex(0.0, 0.0)) coef_.erase(it);
}

Complex Polynomial::coefficient(const MultiIndex& m) const {
  auto it = coef_.find(m);
  return it == coef_.end() ? Complex(0.0, 0.0) : it->second;
}

Complex Polynomial::eval(const CVec& z) const {
  require(static_cast<int>(z.size()) == n_, ErrorCode::InvalidArgument, "dimension mismatch");
  Complex acc(0.0, 0.0);
  for (const auto& [m, c] : coef_) {
    Complex term = c;
    for (int k = 0; k < n_; ++k)
      for (int e = 0; e < m.m[k]; ++e) term *= z[k];
    acc += term;
  }
  return acc;
}

Complex Polynomial::eval(const Point& z) const { return eval(z.coords()); }

Polynomial Polynomial::operator+(const Polynomial& o) const {
  require(n_ == o.n_, ErrorCode::InvalidArgument, "dimension mismatch");
  Polynomial out = *this;
  for (const auto& [m, c] : o.coef_) out.add_term(m, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o.scaled(-1.0); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  require(n_ == o.n_, ErrorCode::InvalidArgument, "dimension mismatch");
  Polynomial out(n_);
  for (const auto& [ma, ca] : coef_) {
    for (const auto& [mb, cb] : o.coef_) {
      MultiIndex m = ma;
      for (int k = 0; k < n_; ++k) m.m[k] += mb.m[k];
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::scaled(Complex c) const {
  Polynomial out(n_);
  if (c == Complex(0.0, 0.0)) return out;
  for (const auto& [m, v] : coef_) out.add_term(m, v * c);
  return out;
}

std::string Polynomial::to_string() const {
  if (coef_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : coef_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real() << (c.imag() >= 0 ? "+" : "") << c.imag() << "i)";
    for (int k = 0; k < n_; ++k) {
      if (m.m[k] == 0) continue;
      os << "*z" << (k + 1);
      if (m.m[k] > 1) os << "^" << m.m[k];
    }
  }
  return os.str();
}

namespace {

struct PolyLexer {
  std::string s;
  size_t i = 0;
  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  char peek() {
    skip();
    return i < s.size() ? s[i] : '\0';
  }
  double number() {
    skip();
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s.substr(i), &used);
    } catch (const std::exception&) {
      fail(ErrorCode::ParseError, "expected a number in polynomial literal");
    }
    i += used;
    return v;
  }
};

struct PolyTerm {
  Complex coef{1.0, 0.0};
  std::map<int, int> powers;  // 1-based variable -> exponent
};

Complex parse_complex(PolyLexer& lx) {
  // inside parens: a+bi | a-bi | a | bi
  const double a = lx.number();
  lx.skip();
  if (lx.peek() == 'i') {
    ++lx.i;
    return Complex(0.0, a);
  }
  if (lx.peek() == '+' || lx.peek() == '-') {
    const double b = lx.number();
    require(lx.eat('i'), ErrorCode::ParseError, "expected 'i' in complex literal");
    return Complex(a, b);
  }
  return Complex(a, 0.0);
}

PolyTerm parse_term(PolyLexer& lx) {
  PolyTerm t;
  bool expect_factor = true;
  while (expect_factor) {
    lx.skip();
    const char c = lx.peek();
    if (c == '(') {
      lx.eat('(');
      t.coef *= parse_complex(lx);
      require(lx.eat(')'), ErrorCode::ParseError, "unclosed complex literal");
    } else if (c == 'z') {
      ++lx.i;
      int var = 1;
      if (std::isdigit(static_cast<unsigned char>(lx.peek()))) var = static_cast<int>(lx.number());
      int exp = 1;
      if (lx.eat('^')) exp = static_cast<int>(lx.number());
      require(var >= 1 && var <= 4 && exp >= 0, ErrorCode::ParseError, "bad variable factor");
      t.powers[var] += exp;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      t.coef *= lx.number();
    } else {
      fail(ErrorCode::ParseError, "unexpected character in polynomial literal");
    }
    expect_factor = lx.eat('*');
  }
  return t;
}

}  // namespace

Polynomial Polynomial::parse(const std::string& text, int force_n) {
  std::string body = text;
  const auto tag = body.find("poly:");
  if (tag != std::string::npos) body = body.substr(tag + 5);
  PolyLexer lx{body};

  std::vector<std::pair<PolyTerm, double>> terms;  // term, sign
  double sign = 1.0;
  if (lx.eat('-')) sign = -1.0;
  while (true) {
    PolyTerm t = parse_term(lx);
    terms.emplace_back(t, sign);
    lx.skip();
    if (lx.eat('+')) {
      sign = 1.0;
    } else if (lx.eat('-')) {
      sign = -1.0;
    } else {
      break;
    }
  }
  require(lx.i >= lx.s.size() || lx.peek() == '\0', ErrorCode::ParseError,
          "trailing characters in polynomial literal");

  int n = force_n;
  if (n == 0) {
    n = 1;
    for (const auto& [t, sg] : terms)
      for (const auto& [var, e] : t.powers) n = std::max(n, var);
  }
  Polynomial p(n);
  for (const auto& [t, sg] : terms) {
    MultiIndex m{std::vector<int>(n, 0)};
    for (const auto& [var, e] : t.powers) {
      require(var <= n, ErrorCode::ParseError, "variable index above the forced dimension");
      m.m[var - 1] += e;
    }
    p.add_term(m, t.coef * sg);
  }
  return p;
}

Polynomial radial_derivative(const Polynomial& f) {
  Polynomial out(f.n());
  for (const auto& [m, c] : f.terms()) {
    const int d = m.degree();
    if (d > 0) out.add_term(m, c * double(d));
  }
  return out;
}

Polynomial volterra_apply(const Polynomial& f, const Polynomial& g) {
  const Polynomial prod = f * radial_derivative(g);
  Polynomial out(prod.n());
  for (const auto& [q, c] : prod.terms()) out.add_term(q, c / double(q.degree()));
  return out;
}

std::vector<MultiIndex> graded_indices(int n, int max_degree) {
  std::vector<MultiIndex> out;
  std::vector<int> m(n, 0);
  // enumerate all exponent vectors with sum <= max_degree, then sort graded-lex
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == n) {
      out.push_back(MultiIndex{m});
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      m[pos] = v;
      rec(pos + 1, remaining - v);
    }
    m[pos] = 0;
  };
  rec(0, max_degree);
  std::sort(out.begin(), out.end());
  return out;
}

double log_sphere_monomial_integral(const MultiIndex& m) {
  const int n = m.n();
  return std::lgamma(double(n)) + m.log_factorial() - std::lgamma(n + double(m.degree()));
}

OrthoBasis OrthoBasis::a2(const WeightTransforms& w, int max_degree) {
  const int n = w.n();
  require((n == 1 && max_degree <= 256) || (n == 2 && max_degree <= 24) ||
              (n > 2 && max_degree <= 12),
          ErrorCode::InvalidArgument, "basis degree above the per-dimension cap");
  OrthoBasis b;
  b.space_ = SpaceKind::A2;
  b.n_ = n;
  b.max_degree_ = max_degree;
  b.indices_ = graded_indices(n, max_degree);
  b.norms_.resize(b.indices_.size());
  for (size_t i = 0; i < b.indices_.size(); ++i) {
    const MultiIndex& m = b.indices_[i];
    const double logmom = std::log(w.moment(2.0 * n + 2.0 * m.degree() - 1.0));
    const double log_n2 = std::log(2.0 * n) + log_sphere_monomial_integral(m) + logmom;
    require(log_n2 > std::log(1e-300), ErrorCode::DegenerateWeight, "norm underflow");
    b.norms_[i] = std::exp(0.5 * log_n2);
    b.pos_.emplace(m, i);
  }
  return b;
}

OrthoBasis OrthoBasis::hw(const WeightTransforms& w, double alpha, int max_degree) {
  require(alpha < 2.0, ErrorCode::InvalidArgument, "H(W_alpha) needs alpha < 2");
  const int n = w.n();
  require((n == 1 && max_degree <= 256) || (n == 2 && max_degree <= 24) ||
              (n > 2 && max_degree <= 12),
          ErrorCode::InvalidArgument, "basis degree above the per-dimension cap");
  OrthoBasis b;
  b.space_ = SpaceKind::HW;
  b.alpha_ = alpha;
  b.n_ = n;
  b.max_degree_ = max_degree;
  b.indices_ = graded_indices(n, max_degree);
  b.norms_.resize(b.indices_.size());
  for (size_t i = 0; i < b.indices_.size(); ++i) {
    const MultiIndex& m = b.indices_[i];
    const int d = m.degree();
    double log_n2;
    if (d == 0) {
      log_n2 = std::log(w.omega_ball());
    } else {
      const double mom = w.w_alpha_moment(alpha, d);
      require(mom > 0.0, ErrorCode::DegenerateWeight, "nonpositive W_alpha moment");
      log_n2 = std::log(8.0 * n) + 2.0 * std::log(double(d)) + log_sphere_monomial_integral(m) +
               std::log(mom);
    }
    require(log_n2 > std::log(1e-300), ErrorCode::DegenerateWeight, "norm underflow");
    b.norms_[i] = std::exp(0.5 * log_n2);
    b.pos_.emplace(m, i);
  }
  return b;
}

int OrthoBasis::position(const MultiIndex& m) const {
  auto it = pos_.find(m);
  return it == pos_.end() ? -1 : static_cast<int>(it->second);
}

Complex OrthoBasis::eval_normalized(size_t i, const Point& z) const {
  const MultiIndex& m = indices_[i];
  Complex v(1.0, 0.0);
  for (int k = 0; k < n_; ++k)
    for (int e = 0; e < m.m[k]; ++e) v *= z.coords()[k];
  return v / norms_[i];
}

std::vector<Complex> OrthoBasis::coefficients(const Polynomial& f) const {
  require(f.n() == n_, ErrorCode::InvalidArgument, "dimension mismatch");
  std::vector<Complex> out(size(), Complex(0.0, 0.0));
  for (const auto& [m, c] : f.terms()) {
    const int p = position(m);
    require(p >= 0, ErrorCode::InvalidArgument, "polynomial degree exceeds the basis");
    out[p] = c * norms_[p];
  }
  return out;
}

double OrthoBasis::norm_squared(const Polynomial& f) const {
  double acc = 0.0;
  for (const Complex& c : coefficients(f)) acc += std::norm(c);
  return acc;
}

}  // namespace bergman
