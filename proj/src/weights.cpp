#include "weights.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace bergman {

namespace {

double parse_number(const std::string& s, const std::string& ctx) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) fail(ErrorCode::ParseError, "trailing characters in " + ctx);
    return v;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(ErrorCode::ParseError, "bad number in " + ctx);
  }
}

}  // namespace

double RadialWeight::density_gap(double gap) const {
  switch (family) {
    case Family::Standard:
      return norm_const * std::pow(gap * (2.0 - gap), param);
    case Family::PowerGap:
      return std::pow(gap, param);
    case Family::LogPow:
      return 1.0 / (gap * std::pow(1.0 - std::log(gap), param));
    case Family::ExpDecay:
      return std::exp(-param / gap);
    case Family::Tabulated: {
      const double r = 1.0 - gap;
      if (r <= table.front().first) return table.front().second;
      if (r >= table.back().first) return table.back().second;
      auto it = std::upper_bound(table.begin(), table.end(), r,
                                 [](double v, const auto& row) { return v < row.first; });
      const auto& hi = *it;
      const auto& lo = *(it - 1);
      const double t = (r - lo.first) / (hi.first - lo.first);
      return lo.second + t * (hi.second - lo.second);
    }
  }
  return 0.0;
}

std::string RadialWeight::describe() const {
  std::ostringstream os;
  switch (family) {
    case Family::Standard: os << "std:alpha=" << param; break;
    case Family::PowerGap: os << "pow:alpha=" << param; break;
    case Family::LogPow: os << "logpow:beta=" << param; break;
    case Family::ExpDecay: os << "exp:c=" << param; break;
    case Family::Tabulated: os << "table[" << table.size() << " rows]"; break;
  }
  return os.str();
}

RadialWeight RadialWeight::standard(double alpha, int n) {
  require(alpha > -1.0, ErrorCode::InvalidArgument, "standard weight needs alpha > -1");
  require(n >= 1, ErrorCode::InvalidArgument, "dimension must be >= 1");
  RadialWeight w;
  w.family = Family::Standard;
  w.param = alpha;
  w.n = n;
  w.norm_const = std::exp(std::lgamma(n + alpha + 1.0) - std::lgamma(n + 1.0) - std::lgamma(alpha + 1.0));
  return w;
}

RadialWeight RadialWeight::power_gap(double alpha, int n) {
  require(alpha > -1.0, ErrorCode::InvalidArgument, "power weight needs alpha > -1");
  RadialWeight w;
  w.family = Family::PowerGap;
  w.param = alpha;
  w.n = n;
  return w;
}

RadialWeight RadialWeight::logpow(double beta, int n) {
  require(beta > 1.0, ErrorCode::InvalidArgument, "logpow weight needs beta > 1");
  RadialWeight w;
  w.family = Family::LogPow;
  w.param = beta;
  w.n = n;
  return w;
}

RadialWeight RadialWeight::expdecay(double c, int n) {
  require(c > 0.0, ErrorCode::InvalidArgument, "exp weight needs c > 0");
  RadialWeight w;
  w.family = Family::ExpDecay;
  w.param = c;
  w.n = n;
  return w;
}

RadialWeight RadialWeight::tabulated(std::vector<std::pair<double, double>> rows, int n) {
  require(rows.size() >= 2, ErrorCode::InvalidArgument, "tabulated weight needs >= 2 rows");
  std::sort(rows.begin(), rows.end());
  for (const auto& [r, v] : rows) {
    require(r >= 0.0 && r < 1.0, ErrorCode::InvalidArgument, "table radius outside [0,1)");
    require(v >= 0.0, ErrorCode::InvalidArgument, "negative density in table");
  }
  RadialWeight w;
  w.family = Family::Tabulated;
  w.n = n;
  w.table = std::move(rows);
  return w;
}

RadialWeight RadialWeight::parse(const std::string& spec, int n) {
  const auto colon = spec.find(':');
  require(colon != std::string::npos, ErrorCode::ParseError, "weight spec needs '<family>:<args>'");
  const std::string family = spec.substr(0, colon);
  const std::string args = spec.substr(colon + 1);
  auto keyed = [&](const std::string& key) {
    const std::string prefix = key + "=";
    require(args.rfind(prefix, 0) == 0, ErrorCode::ParseError,
            "expected '" + key + "=<value>' in weight spec");
    return parse_number(args.substr(prefix.size()), "weight spec");
  };
  if (family == "std") return standard(keyed("alpha"), n);
  if (family == "pow") return power_gap(keyed("alpha"), n);
  if (family == "logpow") return logpow(keyed("beta"), n);
  if (family == "exp") return expdecay(keyed("c"), n);
  if (family == "table") {
    std::ifstream in(args);
    require(in.good(), ErrorCode::IoError, "cannot open weight table " + args);
    std::vector<std::pair<double, double>> rows;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream ls(line);
      double r, v;
      if (ls >> r >> v) rows.emplace_back(r, v);
    }
    return tabulated(std::move(rows), n);
  }
  fail(ErrorCode::ParseError, "unknown weight family '" + family + "'");
}

WeightTransforms::WeightTransforms(RadialWeight w, TransformConfig cfg)
    : w_(std::move(w)), cfg_(cfg) {
  const FixedGrid& grid = FixedGrid::instance();
  gap_floor_ = grid.gap_floor;
  const size_t m = grid.r.size();
  fixed_omega_.resize(m);
  for (size_t i = 0; i < m; ++i) {
    fixed_omega_[i] = w_.density_gap(grid.gap[i]);
    require(std::isfinite(fixed_omega_[i]) && fixed_omega_[i] >= 0.0, ErrorCode::DegenerateWeight,
            "weight density not finite/nonnegative");
  }

  // Mass in the unresolvable boundary sliver, integrated in t = -log(gap).
  double invisible_tail = 0.0;
  {
    const GaussRule& g15 = gauss_legendre(15);
    const double t0 = -std::log(grid.gap_floor);
    const double t1 = 690.0;  // gap ~ 1e-300, the smallest sane double scale
    const int segs = 64;
    double acc = 0.0;
    for (int kseg = 0; kseg < segs; ++kseg) {
      const double a = t0 * std::pow(t1 / t0, double(kseg) / segs);
      const double b = t0 * std::pow(t1 / t0, double(kseg + 1) / segs);
      const double h = 0.5 * (b - a), mid = 0.5 * (b + a);
      for (int i = 0; i < 15; ++i) {
        const double t = mid + h * g15.x[i];
        const double gap = std::exp(-t);
        acc += h * g15.w[i] * w_.density_gap(gap) * gap;
      }
    }
    boundary_mass_ = std::max(acc, 0.0);
    // Extrapolate the mass below gap ~ 1e-300, which no double can see:
    // with f(t) = omega(1-e^-t) e^-t and local log-log slope s, the tail is
    // about f(t1) t1/(s-1).
    const double f_end = w_.density_gap(std::exp(-t1)) * std::exp(-t1);
    const double f_mid = w_.density_gap(std::exp(-0.5 * t1)) * std::exp(-0.5 * t1);
    if (f_end > 0.0 && f_mid > 0.0) {
      const double slope = (std::log(f_mid) - std::log(f_end)) / std::log(2.0);
      invisible_tail = slope > 1.02 ? f_end * t1 / (slope - 1.0)
                                    : std::numeric_limits<double>::infinity();
    }
  }

  // Integrability gate: the adaptive rule must converge on the resolvable
  // region, and mass beyond double resolution must be immaterial.
  const auto total = integrate_radial(
      [this](double, double gap) { return w_.density_gap(gap); }, 0.0, 1.0,
      std::max(cfg_.rel_tol, 1e-10), gap_floor_);
  require(total.value > 0.0 && std::isfinite(total.value), ErrorCode::DegenerateWeight,
          "weight has zero or non-finite mass");
  require(invisible_tail <= 0.02 * (total.value + boundary_mass_), ErrorCode::DegenerateWeight,
          "weight mass concentrates below the resolvable boundary scale");

  moment_cache_.resize(cfg_.moment_prefill + 1);
  for (int s = 0; s <= cfg_.moment_prefill; ++s) {
    double acc = 0.0;
    for (size_t i = 0; i < m; ++i)
      acc += grid.w[i] * fixed_omega_[i] * std::exp(s * grid.log_r[i]);
    moment_cache_[s] = acc + boundary_mass_;
  }
  omega_ball_ = 2.0 * w_.n * moment(2.0 * w_.n - 1.0);

  // omega_nstar at every fixed node: tail integrals of f1 = s^(2n-1) omega and
  // f2 = f1 log(s), assembled from whole-panel suffix sums (panels are ordered
  // by increasing r) plus a GL15 partial piece inside the node's own panel.
  const GaussRule& g15 = gauss_legendre(15);
  const size_t npanels = grid.panel_rhi.size();
  std::vector<double> panel_f1(npanels, 0.0), panel_f2(npanels, 0.0);
  const double e1 = 2.0 * w_.n - 1.0;
  for (size_t p = 0; p < npanels; ++p) {
    for (size_t i = 15 * p; i < 15 * (p + 1); ++i) {
      const double v = grid.w[i] * std::exp(e1 * grid.log_r[i]) * fixed_omega_[i];
      panel_f1[p] += v;
      panel_f2[p] += v * grid.log_r[i];
    }
  }
  std::vector<double> suffix_f1(npanels + 1, 0.0), suffix_f2(npanels + 1, 0.0);
  suffix_f1[npanels] = boundary_mass_;  // the sliver acts as mass at r = 1, log r = 0
  for (size_t p = npanels; p-- > 0;) {
    suffix_f1[p] = suffix_f1[p + 1] + panel_f1[p];
    suffix_f2[p] = suffix_f2[p + 1] + panel_f2[p];
  }
  fixed_nstar_.resize(m);
  for (size_t p = 0; p < npanels; ++p) {
    const bool gap_side = grid.panel_in_gap(p);
    for (size_t i = 15 * p; i < 15 * (p + 1); ++i) {
      // within-panel piece over s in [r_i, panel top]
      double part1 = 0.0, part2 = 0.0;
      for (int q = 0; q < 15; ++q) {
        double s_val, logs, dens;
        if (gap_side) {
          const double glo = 1.0 - grid.panel_rhi[p];
          const double ghi = grid.gap[i];
          const double h = 0.5 * (ghi - glo), mid = 0.5 * (ghi + glo);
          const double gq = mid + h * g15.x[q];
          s_val = 1.0 - gq;
          logs = std::log1p(-gq);
          dens = w_.density_gap(gq) * h * g15.w[q];
        } else {
          const double rlo = grid.r[i];
          const double rhi = grid.panel_rhi[p];
          const double h = 0.5 * (rhi - rlo), mid = 0.5 * (rhi + rlo);
          s_val = mid + h * g15.x[q];
          logs = std::log(s_val);
          dens = w_.density_gap(1.0 - s_val) * h * g15.w[q];
        }
        const double v = std::exp(e1 * logs) * dens;
        part1 += v;
        part2 += v * logs;
      }
      const double tail1 = part1 + suffix_f1[p + 1];
      const double tail2 = part2 + suffix_f2[p + 1];
      fixed_nstar_[i] = tail2 - grid.log_r[i] * tail1;
    }
  }

  // Geometric cache grid r_j = 1 - 2^(-j/4).
  grid_r_.resize(cfg_.grid_points);
  grid_hat_.resize(cfg_.grid_points);
  grid_star_.assign(cfg_.grid_points, std::numeric_limits<double>::quiet_NaN());
  grid_nstar_.assign(cfg_.grid_points, std::numeric_limits<double>::quiet_NaN());
  for (int j = 0; j < cfg_.grid_points; ++j) {
    grid_r_[j] = 1.0 - std::exp2(-0.25 * j);
    grid_hat_[j] = omega_hat_compute(grid_r_[j]);
    require(grid_hat_[j] >= 0.0, ErrorCode::DegenerateWeight, "negative omega_hat");
    if (j > 0) {
      require(grid_hat_[j] <= grid_hat_[j - 1] * (1.0 + 1e-11), ErrorCode::DegenerateWeight,
              "omega_hat failed to be nonincreasing");
      grid_hat_[j] = std::min(grid_hat_[j], grid_hat_[j - 1]);
      grid_star_[j] = omega_star(grid_r_[j]);
      grid_nstar_[j] = omega_nstar(grid_r_[j]);
    }
    hat_memo_.emplace(grid_r_[j], grid_hat_[j]);
  }
  require(grid_hat_.back() < grid_hat_.front(), ErrorCode::DegenerateWeight,
          "omega_hat does not decay toward the boundary");
  for (int j = 2; j < cfg_.grid_points; ++j) {
    if (grid_r_[j - 1] >= 0.5)
      require(grid_star_[j] <= grid_star_[j - 1] * (1.0 + 1e-11), ErrorCode::DegenerateWeight,
              "omega_star failed to be nonincreasing");
  }

  // Monotone cubic (Fritsch-Carlson) on log omega_hat.
  const int np = cfg_.grid_points;
  pchip_val_.resize(np);
  pchip_slope_.assign(np, 0.0);
  for (int j = 0; j < np; ++j) pchip_val_[j] = std::log(std::max(grid_hat_[j], 1e-300));
  std::vector<double> h(np - 1), d(np - 1);
  for (int j = 0; j + 1 < np; ++j) {
    h[j] = grid_r_[j + 1] - grid_r_[j];
    d[j] = (pchip_val_[j + 1] - pchip_val_[j]) / h[j];
  }
  pchip_slope_[0] = d[0];
  pchip_slope_[np - 1] = d[np - 2];
  for (int j = 1; j + 1 < np; ++j) {
    if (d[j - 1] * d[j] <= 0.0) {
      pchip_slope_[j] = 0.0;
    } else {
      const double w1 = 2.0 * h[j] + h[j - 1];
      const double w2 = h[j] + 2.0 * h[j - 1];
      pchip_slope_[j] = (w1 + w2) / (w1 / d[j - 1] + w2 / d[j]);
    }
  }
}

double WeightTransforms::omega_hat_compute(double r) const {
  if (r >= 1.0) return boundary_mass_;
  return integrate_radial([this](double, double gap) { return w_.density_gap(gap); }, r, 1.0,
                          cfg_.rel_tol, gap_floor_)
             .value +
         boundary_mass_;
}

double WeightTransforms::lookup(const std::map<double, double>& memo, double key) const {
  auto it = memo.find(key);
  return it == memo.end() ? std::numeric_limits<double>::quiet_NaN() : it->second;
}

double WeightTransforms::omega_hat(double r) const {
  require(r >= 0.0 && r < 1.0, ErrorCode::InvalidArgument, "omega_hat needs r in [0,1)");
  const double hit = lookup(hat_memo_, r);
  if (!std::isnan(hit)) return hit;
  return omega_hat_compute(r);
}

double WeightTransforms::moment(double s) const {
  require(s >= 0.0, ErrorCode::InvalidArgument, "moment needs s >= 0");
  const double rounded = std::nearbyint(s);
  if (rounded == s && rounded >= 0.0 && rounded <= cfg_.moment_prefill)
    return moment_cache_[static_cast<size_t>(rounded)];
  const FixedGrid& grid = FixedGrid::instance();
  double acc = 0.0;
  for (size_t i = 0; i < grid.r.size(); ++i)
    acc += grid.w[i] * fixed_omega_[i] * std::exp(s * grid.log_r[i]);
  return acc;
}

double WeightTransforms::tail_moment(double r, double s) const {
  require(r >= 0.0 && r < 1.0 && s >= 0.0, ErrorCode::InvalidArgument, "bad tail_moment args");
  if (r == 0.0) return moment(s);
  return integrate_radial(
             [this, s](double, double gap) {
               return std::exp(s * std::log1p(-gap)) * w_.density_gap(gap);
             },
             r, 1.0, cfg_.rel_tol, gap_floor_)
             .value +
         boundary_mass_;
}

double WeightTransforms::omega_star(double r) const {
  require(r > 0.0, ErrorCode::DomainError, "omega_star undefined at r = 0");
  require(r < 1.0, ErrorCode::InvalidArgument, "omega_star needs r < 1");
  const double log_r = std::log(r);
  return integrate_radial(
             [this, log_r](double s, double gap) {
               return s * (std::log1p(-gap) - log_r) * w_.density_gap(gap);
             },
             r, 1.0, cfg_.rel_tol, gap_floor_)
             .value -
         log_r * boundary_mass_;
}

double WeightTransforms::omega_nstar(double r) const {
  require(r > 0.0, ErrorCode::DomainError, "omega_nstar undefined at r = 0");
  require(r < 1.0, ErrorCode::InvalidArgument, "omega_nstar needs r < 1");
  if (w_.n == 1) return omega_star(r);
  const double log_r = std::log(r);
  const double e1 = 2.0 * w_.n - 1.0;
  return integrate_radial(
             [this, log_r, e1](double, double gap) {
               const double logs = std::log1p(-gap);
               return std::exp(e1 * logs) * (logs - log_r) * w_.density_gap(gap);
             },
             r, 1.0, cfg_.rel_tol, gap_floor_)
             .value -
         log_r * boundary_mass_;
}

double WeightTransforms::w_alpha(double alpha, double r) const {
  require(alpha < 2.0, ErrorCode::InvalidArgument, "W_alpha needs alpha < 2");
  require(r > 0.0, ErrorCode::DomainError, "W_alpha undefined at r = 0");
  return std::pow(1.0 - r, -alpha) * omega_nstar(r) / std::pow(r, 2.0 * w_.n);
}

double WeightTransforms::w1(double r) const {
  require(r >= 0.0 && r < 1.0, ErrorCode::InvalidArgument, "W_1 needs r in [0,1)");
  return omega_hat(r) / (1.0 - r);
}

double WeightTransforms::star_family(StarKind kind, double alpha, double r) const {
  switch (kind) {
    case StarKind::Star: return omega_star(r);
    case StarKind::NStar: return omega_nstar(r);
    case StarKind::WAlpha: return w_alpha(alpha, r);
    case StarKind::W1: return w1(r);
  }
  fail(ErrorCode::InvalidArgument, "unknown transform kind");
}

double WeightTransforms::w_alpha_moment(double alpha, long k) const {
  require(alpha < 2.0, ErrorCode::InvalidArgument, "W_alpha moment needs alpha < 2");
  require(k >= 1, ErrorCode::InvalidArgument, "W_alpha moment needs k >= 1");
  const FixedGrid& grid = FixedGrid::instance();
  const double e = 2.0 * k - 1.0;
  double acc = 0.0;
  for (size_t i = 0; i < grid.r.size(); ++i)
    acc += grid.w[i] * std::exp(e * grid.log_r[i]) * std::pow(grid.gap[i], -alpha) * fixed_nstar_[i];
  return acc;
}

double WeightTransforms::omega_hat_approx(double r) const {
  require(r >= 0.0 && r < 1.0, ErrorCode::InvalidArgument, "omega_hat needs r in [0,1)");
  if (r >= grid_r_.back()) return omega_hat(r);
  auto it = std::upper_bound(grid_r_.begin(), grid_r_.end(), r);
  const int j = static_cast<int>(it - grid_r_.begin()) - 1;
  const double h = grid_r_[j + 1] - grid_r_[j];
  const double t = (r - grid_r_[j]) / h;
  const double y0 = pchip_val_[j], y1 = pchip_val_[j + 1];
  const double m0 = pchip_slope_[j] * h, m1 = pchip_slope_[j + 1] * h;
  const double t2 = t * t, t3 = t2 * t;
  const double y = (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * m0 +
                   (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * m1;
  return std::exp(y);
}

double doubling_ratio(const WeightTransforms& w, double r) {
  const double num = w.omega_hat(r);
  const double den = w.omega_hat(0.5 * (1.0 + r));
  if (den <= 1e-280) return std::numeric_limits<double>::infinity();
  return num / den;
}

namespace {

std::vector<double> classify_grid(double r_max, int size) {
  std::vector<double> rs;
  rs.reserve(size + 2);
  const double gmin = 1.0 - r_max;
  for (int i = 0; i < size; ++i) rs.push_back(1.0 - std::pow(gmin, double(i) / (size - 1)));
  rs.push_back(0.99);
  std::sort(rs.begin(), rs.end());
  rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
  return rs;
}

std::pair<double, bool> doubling_scan(const WeightTransforms& w, const std::vector<double>& rs) {
  double dc = 1.0;
  bool overflow = false;
  for (double r : rs) {
    const double ratio = doubling_ratio(w, r);
    if (std::isinf(ratio)) {
      overflow = true;
      break;
    }
    dc = std::max(dc, ratio);
  }
  return {dc, overflow};
}

}  // namespace

ClassReport classify(const WeightTransforms& w, ClassifyConfig cfg) {
  require(cfg.grid_size >= 64, ErrorCode::InvalidArgument, "classify grid_size >= 64");
  ClassReport rep;
  rep.config = cfg;

  const auto rs = classify_grid(cfg.r_max, cfg.grid_size);
  auto [dc, overflow] = doubling_scan(w, rs);
  rep.doubling_constant = dc;
  rep.doubling_overflow = overflow;
  if (!overflow) {
    const auto rs2 = classify_grid(cfg.r_max, 2 * cfg.grid_size);
    auto [dc2, overflow2] = doubling_scan(w, rs2);
    rep.doubling_stable =
        !overflow2 && std::abs(dc2 - dc) <= cfg.dhat_stability * dc;
    rep.doubling_constant = std::max(dc, dc2);
  }
  rep.in_dhat = !overflow && rep.doubling_constant <= cfg.dhat_threshold && rep.doubling_stable;

  const double k_candidates[] = {1.25, 1.5, 2.0, 4.0, 8.0, 16.0};
  double best_c = 0.0, best_k = 0.0;
  for (double K : k_candidates) {
    double c = std::numeric_limits<double>::infinity();
    for (double r : rs) {
      const double den = w.omega_hat(1.0 - (1.0 - r) / K);
      const double num = w.omega_hat(r);
      if (den <= 0.0) continue;
      c = std::min(c, num / den);
    }
    if (!rep.k_omega_upper_estimate && c >= cfg.dcheck_threshold)
      rep.k_omega_upper_estimate = K;
    const bool reported = K >= 2.0;
    if (reported && c > best_c && std::isfinite(c)) {
      best_c = c;
      best_k = K;
    }
  }
  if (best_k > 0.0) rep.reverse_doubling = std::make_pair(best_k, best_c);
  rep.in_dcheck = best_c > cfg.dcheck_threshold;
  rep.in_d = rep.in_dhat && rep.in_dcheck;

  std::vector<double> ratios;
  std::vector<double> ratio_r;
  for (double r : rs) {
    if (r < 0.5 || r > cfg.r_max) continue;
    const double num = w.omega_hat(r);
    const double den = (1.0 - r) * w.density(r);
    if (num <= 1e-280 && den <= 1e-280) continue;  // underflowed region of the scan
    const double ratio = den > 0.0 ? num / den : std::numeric_limits<double>::infinity();
    if (!std::isfinite(ratio)) continue;
    rep.regular_band.add(ratio);
    ratios.push_back(ratio);
    ratio_r.push_back(r);
  }
  if (ratios.size() >= 2) {
    size_t i90 = 0;
    for (size_t i = 0; i < ratio_r.size(); ++i)
      if (ratio_r[i] <= 0.9) i90 = i;
    rep.regular_trend = ratios.back() / ratios[i90];
    rep.in_i = rep.regular_trend >= cfg.trend_flat;
    rep.rapidly_increasing = rep.in_i;
    rep.in_r = !rep.in_i && rep.regular_trend >= 1.0 / cfg.trend_flat &&
               rep.regular_band.hi / rep.regular_band.lo <= cfg.regular_band_ratio;
  }
  return rep;
}

Band moment_tail_band(const WeightTransforms& w, int max_pow) {
  Band b;
  for (int p = 1; p <= max_pow; ++p) {
    const double x = std::exp2(p);
    b.add(w.moment(x) / w.omega_hat(1.0 - 1.0 / x));
  }
  return b;
}

Band star_tail_band(const WeightTransforms& w, double r_lo, double r_hi, int points) {
  Band b;
  for (int i = 0; i < points; ++i) {
    const double gap = (1.0 - r_lo) * std::pow((1.0 - r_hi) / (1.0 - r_lo), double(i) / (points - 1));
    const double r = 1.0 - gap;
    b.add(w.omega_star(r) / (gap * w.omega_hat(r)));
  }
  return b;
}

}  // namespace bergman
