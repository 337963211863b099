#include "measures.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace bergman {

double DiscreteMeasure::total_mass() const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.mass;
  return s;
}

DiscreteMeasure DiscreteMeasure::scaled(double c) const {
  require(c > 0.0, ErrorCode::InvalidArgument, "scale must be positive");
  DiscreteMeasure out = *this;
  for (auto& a : out.atoms) a.mass *= c;
  return out;
}

DiscreteMeasure DiscreteMeasure::delta(Point z, double mass) {
  DiscreteMeasure mu;
  mu.n = z.n();
  mu.atoms.push_back({std::move(z), mass});
  mu.validate();
  return mu;
}

void DiscreteMeasure::validate() const {
  for (const auto& a : atoms) {
    require(a.mass > 0.0, ErrorCode::InvalidArgument, "atom mass must be positive");
    require(a.z.n() == n, ErrorCode::InvalidArgument, "atom dimension mismatch");
    require(a.z.norm() <= kAtomRadiusCap, ErrorCode::InvalidArgument,
            "atom radius above the 0.995 cap");
  }
  require(total_mass() <= kMassCap, ErrorCode::MassOverflow, "total mass above 1e12");
}

int measure_dim(const Measure& mu) {
  if (const auto* d = std::get_if<DiscreteMeasure>(&mu)) return d->n;
  return std::get<RadialDensityMeasure>(mu).n;
}

namespace {

// radial factor of a density-measure integral over [r0, r1]: boundary mass
// rides along whenever the window reaches the rim (r^s is flat there).
double density_radial(const RadialDensityMeasure& d, double s, double r0, double r1,
                      double rel_tol) {
  const double floor_gap = FixedGrid::instance().gap_floor;
  double acc = r1 >= 1.0 ? d.boundary_mass : 0.0;
  if (r0 < r1)
    acc += integrate_radial([&](double r, double gap) { return std::pow(r, s) * d.phi(r, gap); },
                            r0, r1, rel_tol, floor_gap)
               .value;
  return acc;
}

// integral over the whole ball of phi(r) |P|^2: pairs (u,v) contribute only
// when u == v after the angular integral.
double density_total(const RadialDensityMeasure& d, double rel_tol) {
  double acc = 0.0;
  for (const auto& [u, cu] : d.poly.terms()) {
    for (const auto& [v, cv] : d.poly.terms()) {
      if (!(u == v)) continue;
      const double s = 2.0 * d.n - 1.0 + 2.0 * u.degree();
      acc += std::norm(cu) * std::exp(log_sphere_monomial_integral(u)) * 2.0 * d.n *
             density_radial(d, s, 0.0, 1.0, rel_tol);
    }
  }
  return acc;
}

}  // namespace

double measure_total_mass(const Measure& mu, double rel_tol) {
  if (const auto* d = std::get_if<DiscreteMeasure>(&mu)) return d->total_mass();
  return density_total(std::get<RadialDensityMeasure>(mu), rel_tol);
}

Measure identity_measure(const WeightTransforms& w) {
  RadialDensityMeasure d;
  d.n = w.n();
  const RadialWeight wt = w.weight();
  d.phi = [wt](double, double gap) { return wt.density_gap(gap); };
  d.poly = Polynomial::constant(w.n(), 1.0);
  d.boundary_mass = w.boundary_mass();
  d.description = "omega dV";
  return d;
}

Measure volterra_defect_measure(const WeightTransforms& w, const Polynomial& g) {
  require(g.n() == w.n(), ErrorCode::InvalidArgument, "dimension mismatch");
  RadialDensityMeasure d;
  d.n = w.n();
  const int n = w.n();
  // omega_nstar per radius, memoized on first touch of each node value.
  auto nstar = std::make_shared<std::map<double, double>>();
  const WeightTransforms* wp = &w;
  d.phi = [nstar, wp, n](double r, double) {
    if (r <= 0.0) return 0.0;
    auto it = nstar->find(r);
    const double v = it != nstar->end() ? it->second : (*nstar)[r] = wp->omega_nstar(r);
    return 4.0 * v / std::pow(r, 2.0 * n);
  };
  d.poly = radial_derivative(g);
  d.description = "volterra defect of " + g.to_string();
  return d;
}

DiscreteMeasure parse_measure_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::ParseError, std::string("measure JSON: ") + e.what());
  }
  DiscreteMeasure mu;
  try {
    mu.n = j.at("n").get<int>();
    for (const auto& atom : j.at("atoms")) {
      CVec z;
      for (const auto& coord : atom.at("z"))
        z.emplace_back(coord.at(0).get<double>(), coord.at(1).get<double>());
      mu.atoms.push_back({Point(std::move(z)), atom.at("mass").get<double>()});
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorCode::ParseError, std::string("measure JSON fields: ") + e.what());
  }
  mu.validate();
  return mu;
}

Measure parse_measure_arg(const std::string& arg, const WeightTransforms& w) {
  if (arg == "id") return identity_measure(w);
  if (arg.rfind("delta:", 0) == 0) {
    std::string body = arg.substr(6);
    double mass = 1.0;
    const auto comma = body.find(",mass=");
    if (comma != std::string::npos) {
      mass = std::stod(body.substr(comma + 6));
      body = body.substr(0, comma);
    }
    require(body.rfind("z=", 0) == 0, ErrorCode::ParseError, "expected delta:z=<value>");
    const std::string zlit = body.substr(2);
    double re = 0.0, im = 0.0;
    std::istringstream is(zlit);
    is >> re;
    require(!is.fail(), ErrorCode::ParseError, "bad atom position");
    char sign = 0;
    if (is >> sign && (sign == '+' || sign == '-')) {
      is >> im;
      if (sign == '-') im = -im;
    }
    require(w.n() == 1, ErrorCode::ParseError, "delta literal is 1-d; use a JSON file for n >= 2");
    return DiscreteMeasure::delta(Point::disk(Complex(re, im)), mass);
  }
  std::ifstream in(arg);
  require(in.good(), ErrorCode::IoError, "cannot open measure file " + arg);
  std::stringstream buf;
  buf << in.rdbuf();
  DiscreteMeasure mu = parse_measure_json(buf.str());
  require(mu.n == w.n(), ErrorCode::InvalidArgument, "measure dimension mismatch");
  return mu;
}

namespace {

bool atom_in_block(const Point& zi, const Point& a) {
  if (zi.norm() < a.norm()) return false;  // closed at the inner radius
  if (zi.is_origin()) return false;
  return std::abs(1.0 - inner(zi.direction(), a.direction())) <= 1.0 - a.norm();
}

// arc integral of e^{i k theta} over [t0,t1), divided by 2 pi
Complex arc_pair(int kdiff, double t0, double t1) {
  if (kdiff == 0) return Complex((t1 - t0) / (2.0 * M_PI), 0.0);
  const Complex hi(std::sin(kdiff * t1), -std::cos(kdiff * t1));
  const Complex lo(std::sin(kdiff * t0), -std::cos(kdiff * t0));
  return (hi - lo) / (kdiff * 2.0 * M_PI);
}

}  // namespace

double measure_block(const Measure& mu, const WeightTransforms& w, const Point& a) {
  if (const auto* d = std::get_if<DiscreteMeasure>(&mu)) {
    if (a.is_origin()) return d->total_mass();
    double s = 0.0;
    for (const auto& atom : d->atoms)
      if (atom_in_block(atom.z, a)) s += atom.mass;
    return s;
  }
  const auto& d = std::get<RadialDensityMeasure>(mu);
  if (a.is_origin()) return measure_total_mass(mu, w.rel_tol());
  const double t2 = 1.0 - a.norm();
  const int n = d.n;
  double acc = 0.0;
  for (const auto& [u, cu] : d.poly.terms()) {
    for (const auto& [v, cv] : d.poly.terms()) {
      Complex ang(0.0, 0.0);
      if (n == 1) {
        const double theta_c = std::arg(a.coords()[0]);
        const double half = 2.0 * std::asin(std::min(t2 / 2.0, 1.0));
        ang = arc_pair(u.degree() - v.degree(), theta_c - half, theta_c + half);
      } else {
        // QMC over the cap
        const long m = 1 << 15;
        Complex s(0.0, 0.0);
        long hits = 0;
        const CVec dir = a.direction();
        for (long i = 0; i < m; ++i) {
          const CVec xi = sphere_point(n, i, 0x5eedu);
          if (std::abs(1.0 - inner(xi, dir)) > t2) continue;
          ++hits;
          Complex term(1.0, 0.0);
          for (int kk = 0; kk < n; ++kk) {
            for (int e = 0; e < u.m[kk]; ++e) term *= xi[kk];
            for (int e = 0; e < v.m[kk]; ++e) term *= std::conj(xi[kk]);
          }
          s += term;
        }
        ang = s / double(m);
        (void)hits;
      }
      if (std::abs(ang) == 0.0) continue;
      const double s_exp = 2.0 * n - 1.0 + u.degree() + v.degree();
      const double radial = density_radial(d, s_exp, a.norm(), 1.0, w.rel_tol());
      acc += (cu * std::conj(cv) * ang).real() * 2.0 * n * radial;
    }
  }
  return acc;
}

double measure_bergman_ball(const Measure& mu, const WeightTransforms& w, const Point& z, double r,
                            uint64_t seed) {
  require(r > 0.0, ErrorCode::InvalidArgument, "Bergman radius must be positive");
  if (const auto* d = std::get_if<DiscreteMeasure>(&mu)) {
    double s = 0.0;
    for (const auto& atom : d->atoms)
      if (bergman_metric(z, atom.z) < r) s += atom.mass;
    return s;
  }
  const auto& d = std::get<RadialDensityMeasure>(mu);
  (void)w;
  const PHBall ball = PHBall::bergman(z, r);
  // Monte-Carlo over the ellipsoid with the density as integrand.
  const long samples = 1 << 14;
  Rng rng(seed);
  std::vector<CVec> frame;
  const int n = d.n;
  if (!ball.center.is_origin()) frame.push_back(ball.center.direction());
  for (int k = 0; k < n && static_cast<int>(frame.size()) < n; ++k) {
    CVec v(n, Complex(0.0, 0.0));
    v[k] = 1.0;
    for (const CVec& b : frame) {
      const Complex c = inner(v, b);
      for (int i = 0; i < n; ++i) v[i] -= c * b[i];
    }
    double nv = 0.0;
    for (const Complex& c : v) nv += std::norm(c);
    nv = std::sqrt(nv);
    if (nv < 1e-8) continue;
    for (Complex& c : v) c /= nv;
    frame.push_back(v);
  }
  const double rt = ball.radius * ball.t;
  const double rs = ball.radius * std::sqrt(ball.t);
  double sum = 0.0;
  for (long i = 0; i < samples; ++i) {
    CVec v(n);
    double nv2 = 0.0;
    for (int k = 0; k < n; ++k) {
      v[k] = Complex(rng.gaussian(), rng.gaussian());
      nv2 += std::norm(v[k]);
    }
    const double scale = std::pow(rng.uniform(), 1.0 / (2.0 * n)) / std::sqrt(std::max(nv2, 1e-300));
    for (Complex& c : v) c *= scale;
    CVec pt(n, Complex(0.0, 0.0));
    if (ball.center.is_origin()) {
      for (int k = 0; k < n; ++k) pt[k] = ball.radius * v[k];
    } else {
      for (int i = 0; i < n; ++i) pt[i] = (ball.c_scalar + rt * v[0]) * frame[0][i];
      for (int k = 1; k < n; ++k)
        for (int i = 0; i < n; ++i) pt[i] += rs * v[k] * frame[k][i];
    }
    double r2 = 0.0;
    for (const Complex& c : pt) r2 += std::norm(c);
    const double rr = std::sqrt(r2);
    if (rr >= 1.0) continue;
    Complex pval(1.0, 0.0);
    pval = d.poly.eval(pt);
    sum += d.phi(rr, 1.0 - rr) * std::norm(pval);
  }
  return ball.normalized_volume() * sum / samples;
}

double measure_cell(const Measure& mu, const WeightTransforms& w, const DyadicPartition& part,
                    const DyadicPartition::CellId& id) {
  if (const auto* d = std::get_if<DiscreteMeasure>(&mu)) {
    double s = 0.0;
    for (const auto& atom : d->atoms) {
      if (atom.z.norm() >= part.max_radius()) continue;
      const auto cell = part.locate(atom.z);
      if (cell == id) s += atom.mass;
    }
    return s;
  }
  const auto& d = std::get<RadialDensityMeasure>(mu);
  const auto [r0, r1] = part.shell(id.k);
  const int n = d.n;
  double acc = 0.0;
  for (const auto& [u, cu] : d.poly.terms()) {
    for (const auto& [v, cv] : d.poly.terms()) {
      Complex ang(0.0, 0.0);
      if (n == 1) {
        const auto& arcs = id.k == 0
                               ? std::vector<std::pair<double, double>>{{-M_PI, M_PI}}
                               : part.level(id.k).arcs()[id.j - 1];
        for (const auto& [t0, t1] : arcs) ang += arc_pair(u.degree() - v.degree(), t0, t1);
      } else {
        const MultiIndex& mu_ = u;
        const MultiIndex& mv = v;
        const double sig = part.cell_sigma(id);
        const double re = part.cell_angular_mean(id, [&](const CVec& xi) {
          Complex term(1.0, 0.0);
          for (int kk = 0; kk < n; ++kk) {
            for (int e = 0; e < mu_.m[kk]; ++e) term *= xi[kk];
            for (int e = 0; e < mv.m[kk]; ++e) term *= std::conj(xi[kk]);
          }
          return term.real();
        });
        const double im = part.cell_angular_mean(id, [&](const CVec& xi) {
          Complex term(1.0, 0.0);
          for (int kk = 0; kk < n; ++kk) {
            for (int e = 0; e < mu_.m[kk]; ++e) term *= xi[kk];
            for (int e = 0; e < mv.m[kk]; ++e) term *= std::conj(xi[kk]);
          }
          return term.imag();
        });
        ang = sig * Complex(re, im);
      }
      if (std::abs(ang) == 0.0) continue;
      const double s_exp = 2.0 * n - 1.0 + u.degree() + v.degree();
      const double radial = density_radial(d, s_exp, r0, r1, w.rel_tol());
      acc += (cu * std::conj(cv) * ang).real() * 2.0 * n * radial;
    }
  }
  return acc;
}

}  // namespace bergman
