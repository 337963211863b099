#include "criteria.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <mutex>

#include "json.hpp"

namespace bergman {

std::string report_to_json(const CriterionReport& rep) {
  nlohmann::ordered_json j;
  j["kind"] = rep.kind;
  j["headline"] = rep.headline;
  if (rep.band) j["band"] = {{"min", rep.band->lo}, {"max", rep.band->hi}};
  nlohmann::ordered_json prof = nlohmann::ordered_json::array();
  for (const auto& [x, v] : rep.shell_profile) prof.push_back({x, v});
  j["profile"] = prof;
  if (rep.mc_stderr > 0.0) j["mc_stderr"] = rep.mc_stderr;
  j["level_overflow"] = rep.level_overflow;
  if (rep.level_overflow) j["overflow_term"] = rep.overflow_term;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : rep.config) cfg[k] = v;
  j["config"] = cfg;
  if (!rep.notes.empty()) j["notes"] = rep.notes;
  return j.dump(2);
}

namespace {

double omega_block_radial(const WeightTransforms& w, double rad) {
  if (rad == 0.0) return w.omega_ball();
  return cap_sigma(w.n(), 1.0 - rad) * 2.0 * w.n() * w.tail_moment(rad, 2.0 * w.n() - 1.0);
}

// Scan points a for the block statistics: dyadic center radii crossed with
// cap directions at the matching level, plus the atoms themselves.
std::vector<Point> block_grid(const WeightTransforms& w, const Measure& mu,
                              const DyadicPartition& part) {
  std::vector<Point> out;
  out.push_back(Point(CVec(w.n(), Complex(0.0, 0.0))));
  for (int k = 0; k <= part.kmax(); ++k) {
    const double rad = part.center_radius(k);
    for (int j = 1; j <= part.level_count(k); ++j) {
      CVec dir = part.cap_center({k, j});
      for (Complex& c : dir) c *= rad;
      out.emplace_back(dir);
    }
  }
  if (const auto* d = std::get_if<DiscreteMeasure>(&mu)) {
    for (const auto& atom : d->atoms) {
      if (atom.z.is_origin()) continue;
      out.push_back(atom.z);
      // the same direction at the shallower dyadic radii
      for (int k = 0; k <= part.kmax(); ++k) {
        const double rad = part.center_radius(k);
        if (rad >= atom.z.norm()) break;
        CVec dir = atom.z.direction();
        for (Complex& c : dir) c *= rad;
        out.emplace_back(dir);
      }
    }
  }
  return out;
}

void profile_insert(std::vector<std::pair<double, double>>& prof, double x, double v) {
  for (auto& [px, pv] : prof) {
    if (px == x) {
      pv = std::max(pv, v);
      return;
    }
  }
  prof.emplace_back(x, v);
}

// lazily built constant-weight transforms, one per dimension
const WeightTransforms& flat_transforms(int n) {
  static std::array<std::unique_ptr<const WeightTransforms>, 4> cache;
  static std::mutex guard;
  require(n >= 1 && n <= 4, ErrorCode::InvalidArgument, "dimension must be 1..4");
  std::lock_guard<std::mutex> lock(guard);
  auto& slot = cache[n - 1];
  if (!slot) slot = std::make_unique<const WeightTransforms>(RadialWeight::standard(0.0, n));
  return *slot;
}

}  // namespace

CriterionReport carleson_quotient(const WeightTransforms& w, const Measure& mu, double p, double q,
                                  const DyadicPartition& part) {
  require(1.0 < p && p <= q, ErrorCode::InvalidArgument, "need 1 < p <= q");
  const double expo = 1.0 / p - 1.0 / q + 1.0;
  CriterionReport rep;
  rep.kind = "carleson_quotient";
  rep.config = {{"p", p}, {"q", q}, {"kmax", double(part.kmax())}};

  for (const Point& a : block_grid(w, mu, part)) {
    const double den = std::pow(omega_block_radial(w, a.norm()), expo);
    const double val = measure_block(mu, w, a) / den;
    rep.headline = std::max(rep.headline, val);
    profile_insert(rep.shell_profile, a.norm(), val);
  }
  std::sort(rep.shell_profile.begin(), rep.shell_profile.end());
  return rep;
}

CriterionReport berezin_quotient(const KernelSeries& ks, const WeightTransforms& w,
                                 const DiscreteMeasure& mu, double p, double q,
                                 const DyadicPartition& part) {
  require(1.0 < p && p <= q, ErrorCode::InvalidArgument, "need 1 < p <= q");
  const double expo = 1.0 / p - 1.0 / q;
  CriterionReport rep;
  rep.kind = "berezin_quotient";
  rep.config = {{"p", p}, {"q", q}, {"kmax", double(part.kmax())}};

  for (const Point& z : block_grid(w, Measure(mu), part)) {
    if (z.norm() > kAtomRadiusCap) continue;
    const double val = berezin(ks, mu, z) / std::pow(omega_block_radial(w, z.norm()), expo);
    rep.headline = std::max(rep.headline, val);
    profile_insert(rep.shell_profile, z.norm(), val);
  }
  std::sort(rep.shell_profile.begin(), rep.shell_profile.end());
  return rep;
}

namespace {

// Shell-wise quadrature of an angular-mean integrand against 2n r^(2n-1) dr:
// GL15 per dyadic shell of 1-r down to 1-rmax, angular Monte Carlo per node.
struct ShellIntegral {
  double value = 0.0;
  double stderr_est = 0.0;
};

ShellIntegral shell_integrate(int n, const ShellGrid& grid,
                              const std::function<double(double rad, const CVec& dir)>& f) {
  const GaussRule& g15 = gauss_legendre(15);
  const int kmax = std::max(1, static_cast<int>(std::ceil(-std::log2(1.0 - grid.rmax))));
  ShellIntegral out;
  double var_acc = 0.0;
  long stream_index = 0;
  for (int k = 0; k <= kmax; ++k) {
    const double g_hi = std::exp2(-double(k));  // gap at the inner edge
    const double g_lo = std::max(std::exp2(-double(k + 1)), 1.0 - grid.rmax);
    if (g_lo >= g_hi) continue;
    const double h = 0.5 * (g_hi - g_lo), mid = 0.5 * (g_hi + g_lo);
    for (int i = 0; i < 15; ++i) {
      const double gap = mid + h * g15.x[i];
      const double rad = 1.0 - gap;
      if (rad < 0.0) continue;
      double sum = 0.0, sumsq = 0.0;
      for (int a = 0; a < grid.angular_samples; ++a) {
        const double v = f(rad, sphere_point(n, stream_index++, grid.seed));
        sum += v;
        sumsq += v * v;
      }
      const double mean = sum / grid.angular_samples;
      const double var = std::max(0.0, sumsq / grid.angular_samples - mean * mean);
      const double jac = 2.0 * n * std::pow(rad, 2.0 * n - 1.0) * h * g15.w[i];
      out.value += jac * mean;
      var_acc += jac * jac * var / grid.angular_samples;
    }
  }
  out.stderr_est = std::sqrt(var_acc);
  return out;
}

double measure_ball_at(const Measure& mu, const WeightTransforms& w, const Point& z, double r,
                       uint64_t seed) {
  return measure_bergman_ball(mu, w, z, r, seed);
}

}  // namespace

CriterionReport qlessp_statistic(const WeightTransforms& w, const Measure& mu, double p, double q,
                                 double r, const ShellGrid& grid) {
  require(1.0 < q && q < p, ErrorCode::InvalidArgument, "need 1 < q < p");
  require(r > 0.1 && r < 2.0, ErrorCode::InvalidArgument, "Bergman radius r in (0.1, 2)");
  const double expo = p * q / (p - q);
  CriterionReport rep;
  rep.kind = "qlessp_statistic";
  rep.config = {{"p", p},       {"q", q},       {"r", r},
                {"rmax", grid.rmax}, {"angular_samples", double(grid.angular_samples)},
                {"seed", double(grid.seed)}};

  std::map<double, double> block_memo;
  auto block = [&](double rad) {
    auto it = block_memo.find(rad);
    if (it != block_memo.end()) return it->second;
    return block_memo[rad] = omega_block_radial(w, rad);
  };
  const auto res = shell_integrate(w.n(), grid, [&](double rad, const CVec& dir) {
    CVec zc = dir;
    for (Complex& c : zc) c *= rad;
    const Point z(zc);
    const double m = measure_ball_at(mu, w, z, r, grid.seed ^ 0x77ull);
    if (m == 0.0) return 0.0;
    return std::pow(m / block(rad), expo) * w.w1(rad);
  });
  rep.headline = res.value;
  rep.mc_stderr = res.stderr_est;
  return rep;
}

CriterionReport schatten_dyadic(const WeightTransforms& w, const Measure& mu,
                                const DyadicPartition& part, double p, double alpha) {
  require(p > 0.0, ErrorCode::InvalidArgument, "p must be positive");
  CriterionReport rep;
  rep.kind = "schatten_dyadic";
  rep.config = {{"p", p}, {"alpha", alpha}, {"kmax", double(part.kmax())}};
  if (p >= 1.0 && p * alpha >= 1.0)
    rep.notes.push_back("hypothesis p*alpha < 1 not satisfied; reported anyway");
  if (p < 1.0) rep.notes.push_back("p < 1: monotonicity hypothesis not verified");

  const int n = w.n();
  std::vector<double> level_sum(part.kmax() + 1, 0.0);
  for (const auto& cell : part.all_cells()) {
    const double m = measure_cell(mu, w, part, cell);
    if (m == 0.0) continue;
    const double rad = part.center_radius(cell.k);
    const double den = std::pow(1.0 - rad, n - 1.0 - alpha) * w.omega_star(rad);
    level_sum[cell.k] += std::pow(m / den, p);
  }
  for (int k = 0; k <= part.kmax(); ++k) {
    rep.headline += level_sum[k];
    rep.shell_profile.emplace_back(double(k), level_sum[k]);
  }

  // atoms beyond the deepest shell: accumulate with the radius-only
  // denominator at their true level, flagged rather than fatal
  if (const auto* d = std::get_if<DiscreteMeasure>(&mu)) {
    std::map<std::pair<int, int>, double> over;  // (level, cap cell at kmax) -> mass
    for (const auto& atom : d->atoms) {
      if (atom.z.norm() < part.max_radius()) continue;
      const int k = static_cast<int>(std::floor(-std::log2(1.0 - atom.z.norm())));
      const int j = part.kmax() >= 1 ? part.level(part.kmax()).locate(atom.z.direction()) : 0;
      over[{k, j}] += atom.mass;
    }
    for (const auto& [key, mass] : over) {
      const double rad = part.center_radius(key.first);
      const double den = std::pow(1.0 - rad, n - 1.0 - alpha) * w.omega_star(rad);
      rep.overflow_term += std::pow(mass / den, p);
    }
    if (!over.empty()) {
      rep.level_overflow = true;
      rep.headline += rep.overflow_term;
      rep.notes.push_back("atoms beyond the deepest shell grouped by the kmax-level cap cells");
    }
  }
  return rep;
}

CriterionReport schatten_integral(const WeightTransforms& w, const Measure& mu, double p, double r,
                                  double alpha, const ShellGrid& grid) {
  require(p > 0.0, ErrorCode::InvalidArgument, "p must be positive");
  require(r > 0.0, ErrorCode::InvalidArgument, "Bergman radius must be positive");
  CriterionReport rep;
  rep.kind = "schatten_integral";
  rep.config = {{"p", p},       {"alpha", alpha}, {"r", r},
                {"rmax", grid.rmax}, {"angular_samples", double(grid.angular_samples)},
                {"seed", double(grid.seed)}};

  const int n = w.n();
  std::map<double, double> den_memo;
  auto denom = [&](double rad) {
    auto it = den_memo.find(rad);
    if (it != den_memo.end()) return it->second;
    return den_memo[rad] = std::pow(1.0 - rad, n - 1.0 - alpha) * w.omega_star(rad);
  };
  const auto res = shell_integrate(w.n(), grid, [&](double rad, const CVec& dir) {
    if (rad <= 0.0) return 0.0;
    CVec zc = dir;
    for (Complex& c : zc) c *= rad;
    const Point z(zc);
    const double m = measure_ball_at(mu, w, z, r, grid.seed ^ 0x99ull);
    if (m == 0.0) return 0.0;
    // dlambda = dV / (1-|z|^2)^(n+1)
    return std::pow(m / denom(rad), p) / std::pow(1.0 - rad * rad, n + 1.0);
  });
  rep.headline = res.value;
  rep.mc_stderr = res.stderr_est;
  return rep;
}

CriterionReport besov_statistic(const Polynomial& g, const DyadicPartition& part, double p) {
  require(p > 0.0, ErrorCode::InvalidArgument, "p must be positive");
  const int n = part.n();
  require(g.n() == n, ErrorCode::InvalidArgument, "dimension mismatch");
  CriterionReport rep;
  rep.kind = "besov_statistic";
  rep.config = {{"p", p}, {"kmax", double(part.kmax())}};

  // cell integrals of |Rg|^2 dV/(1-|z|)^(n-1) via the density-measure plumbing
  RadialDensityMeasure d;
  d.n = n;
  d.poly = radial_derivative(g);
  d.phi = [n](double, double gap) { return std::pow(gap, -(n - 1.0)); };

  // measure_cell reads only the quadrature tolerance from the transforms;
  // a constant weight of the right dimension serves
  const WeightTransforms& wdummy = flat_transforms(n);

  std::vector<double> level_sum(part.kmax() + 1, 0.0);
  for (const auto& cell : part.all_cells()) {
    const double m = measure_cell(Measure(d), wdummy, part, cell);
    if (m <= 0.0) continue;
    level_sum[cell.k] += std::pow(m, 0.5 * p);
  }
  for (int k = 0; k <= part.kmax(); ++k) {
    rep.headline += level_sum[k];
    rep.shell_profile.emplace_back(double(k), level_sum[k]);
  }
  return rep;
}

BesovIntegral besov_integral(const Polynomial& g, double p, double rmax) {
  require(p > 0.0, ErrorCode::InvalidArgument, "p must be positive");
  const int n = g.n();
  const double expo = p - (n + 1.0);
  BesovIntegral out;
  out.divergent_exponent = expo <= -1.0;
  const Polynomial rg = radial_derivative(g);
  if (rg.is_zero()) return out;

  // angular p-mean of |Rg| at radius rad
  auto ang_mean = [&](double rad) {
    if (p == 2.0) {
      // exact by monomial orthogonality
      double acc = 0.0;
      for (const auto& [m, c] : rg.terms())
        acc += std::norm(c) * std::exp(log_sphere_monomial_integral(m)) *
               std::pow(rad, 2.0 * m.degree());
      return acc;
    }
    if (n == 1) {
      const int nodes = 256;
      double acc = 0.0;
      for (int i = 0; i < nodes; ++i) {
        const double th = 2.0 * M_PI * i / nodes;
        acc += std::pow(std::abs(rg.eval(CVec{Complex(rad * std::cos(th), rad * std::sin(th))})), p);
      }
      return acc / nodes;
    }
    const long m = 1 << 12;
    double acc = 0.0;
    for (long i = 0; i < m; ++i) {
      CVec xi = sphere_point(n, i, 0xbe50ULL);
      for (Complex& c : xi) c *= rad;
      acc += std::pow(std::abs(rg.eval(xi)), p);
    }
    return acc / m;
  };

  auto integrand = [&](double r, double gap) {
    return 2.0 * n * std::pow(r, 2.0 * n - 1.0) * std::pow(gap * (2.0 - gap), expo) * ang_mean(r);
  };

  if (expo >= 0.0) {
    out.value = integrate_radial(integrand, 0.0, 1.0, 1e-10).value;
    out.cutoff = 1.0;
    out.trend_slope = 0.0;
    return out;
  }

  // cutoff growth: accumulate F(1 - 2^-i) and report the last log-slope
  double acc = 0.0;
  double prev = 0.0;
  double lo = 0.0;
  const int imax = std::max(3, static_cast<int>(std::round(-std::log2(1.0 - rmax))));
  for (int i = 1; i <= imax; ++i) {
    const double hi = 1.0 - std::exp2(-double(i));
    acc += integrate_radial(integrand, lo, hi, 1e-10).value;
    if (i == imax - 1) prev = acc;
    lo = hi;
  }
  out.value = acc;
  out.cutoff = 1.0 - std::exp2(-double(imax));
  out.trend_slope = (acc - prev) / std::log(2.0);
  return out;
}

std::vector<DiscreteMeasure> desk_measure_family(int n) {
  require(n >= 1 && n <= 2, ErrorCode::InvalidArgument, "family defined for n = 1, 2");
  const double radii[3] = {0.3, 0.6, 0.82};
  std::vector<DiscreteMeasure> out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double mass = 0.5 + 0.25 * ((i + 2 * j) % 4);
      const double th = 0.5 * M_PI * j + 0.2;
      CVec dir(n, Complex(0.0, 0.0));
      if (n == 1) {
        dir[0] = Complex(std::cos(th), std::sin(th));
      } else {
        dir[0] = Complex(std::cos(th) * std::sqrt(0.8), std::sin(th) * std::sqrt(0.8));
        dir[1] = Complex(std::sqrt(0.2) * std::cos(2 * th), std::sqrt(0.2) * std::sin(2 * th));
      }
      for (Complex& c : dir) c *= radii[i];
      out.push_back(DiscreteMeasure::delta(Point(dir), mass));
    }
  }
  return out;
}

}  // namespace bergman
