#include "quadrature.hpp"

#include <cmath>
#include <queue>
#include <vector>

namespace bergman {

const GaussRule& gauss_legendre(int npoints) {
  static const auto make = [](int m) {
    GaussRule g;
    g.x.resize(m);
    g.w.resize(m);
    const int half = (m + 1) / 2;
    for (int i = 0; i < half; ++i) {
      double z = std::cos(M_PI * (i + 0.75) / (m + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < m; ++j) {
          double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
        }
        pp = m * (z * p0 - p1) / (z * z - 1.0);
        double dz = p0 / pp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      g.x[i] = -z;
      g.x[m - 1 - i] = z;
      g.w[i] = g.w[m - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
    return g;
  };
  static const GaussRule g7 = make(7);
  static const GaussRule g15 = make(15);
  static const GaussRule g31 = make(31);
  switch (npoints) {
    case 7: return g7;
    case 15: return g15;
    case 31: return g31;
    default: fail(ErrorCode::InvalidArgument, "unsupported Gauss rule size");
  }
}

namespace {

// Panels live in the gap variable u = b - r, so refinement accumulates at the
// right endpoint and 1-r stays exact there.
struct Panel {
  double u0, u1;
  double value;
  double err;
  long id;
  int depth;
};

// A panel that still dominates the error after this many bisections marks an
// endpoint too singular to be integrable within the budget.
constexpr int kMaxDepth = 800;

struct PanelWorse {
  bool operator()(const Panel& a, const Panel& b) const {
    if (a.err != b.err) return a.err < b.err;
    return a.id > b.id;  // deterministic tie-break
  }
};

Panel eval_panel(const RadialIntegrand& f, double b, double tail, double u0, double u1, long id,
                 int depth) {
  const GaussRule& g15 = gauss_legendre(15);
  const GaussRule& g7 = gauss_legendre(7);
  const double h = 0.5 * (u1 - u0);
  const double mid = 0.5 * (u1 + u0);
  double i15 = 0.0, i7 = 0.0;
  for (int i = 0; i < 15; ++i) {
    const double u = mid + h * g15.x[i];
    i15 += g15.w[i] * f(b - u, tail + u);
  }
  for (int i = 0; i < 7; ++i) {
    const double u = mid + h * g7.x[i];
    i7 += g7.w[i] * f(b - u, tail + u);
  }
  i15 *= h;
  i7 *= h;
  double err = std::abs(i15 - i7);
  if (!std::isfinite(i15) || !std::isfinite(i7)) {
    i15 = 0.0;
    err = std::numeric_limits<double>::infinity();
  }
  return Panel{u0, u1, i15, err, id, depth};
}

}  // namespace

QuadratureResult integrate_radial(const RadialIntegrand& f, double a, double b, double rel_tol,
                                  double gap_floor) {
  require(a >= 0.0 && a < b && b <= 1.0, ErrorCode::InvalidInterval,
          "need 0 <= a < b <= 1");
  require(rel_tol > 1e-14 && rel_tol < 1e-2, ErrorCode::InvalidArgument,
          "rel_tol outside (1e-14, 1e-2)");
  require(gap_floor >= 0.0, ErrorCode::InvalidArgument, "gap_floor must be >= 0");

  const double tail = 1.0 - b;              // one_minus_r = tail + u
  const double u_lo = std::max(0.0, gap_floor - tail);
  const double length = b - a;
  if (u_lo >= length) return QuadratureResult{0.0, 0.0, 1};
  std::priority_queue<Panel, std::vector<Panel>, PanelWorse> heap;
  long next_id = 0;
  int panels = 0;
  double total = 0.0, total_err = 0.0;

  auto push = [&](double u0, double u1, int depth) {
    Panel p = eval_panel(f, b, tail, u0, u1, next_id++, depth);
    ++panels;
    total += p.value;
    total_err += p.err;
    heap.push(p);
  };

  // Dyadic pre-split toward u = u_lo (the r = b endpoint or the gap floor).
  double hi = length;
  for (int j = 0; j < 40; ++j) {
    const double lo = u_lo + (length - u_lo) * std::ldexp(1.0, -(j + 1));
    if (lo >= hi) break;
    push(lo, hi, 0);
    hi = lo;
  }
  push(u_lo, hi, 0);

  const double floor_scale = 1e-300;
  while (total_err > rel_tol * std::max(std::abs(total), floor_scale)) {
    if (panels + 2 > kPanelBudget)
      fail(ErrorCode::NonConvergent, "panel budget exhausted");
    Panel worst = heap.top();
    heap.pop();
    if (worst.depth >= kMaxDepth)
      fail(ErrorCode::NonConvergent, "endpoint refinement depth exhausted");
    total -= worst.value;
    total_err -= worst.err;
    const double um = 0.5 * (worst.u0 + worst.u1);
    if (um <= worst.u0 || um >= worst.u1) {
      // Panel no longer splittable; accept its estimate as-is.
      total += worst.value;
      continue;
    }
    push(worst.u0, um, worst.depth + 1);
    push(um, worst.u1, worst.depth + 1);
  }

  return QuadratureResult{total, total_err, panels};
}

const FixedGrid& FixedGrid::instance() {
  static const FixedGrid grid = [] {
    FixedGrid g;
    g.gap_floor = std::ldexp(1.0, -kFixedGridDepth);
    const GaussRule& g15 = gauss_legendre(15);
    auto add_r_panel = [&](double r0, double r1) {
      const double h = 0.5 * (r1 - r0);
      const double mid = 0.5 * (r1 + r0);
      g.panel_rhi.push_back(r1);
      for (int i = 0; i < 15; ++i) {
        const double r = mid + h * g15.x[i];
        g.r.push_back(r);
        g.gap.push_back(1.0 - r);
        g.w.push_back(h * g15.w[i]);
        g.log_r.push_back(std::log(r));
      }
    };
    auto add_gap_panel = [&](double u0, double u1) {
      const double h = 0.5 * (u1 - u0);
      const double mid = 0.5 * (u1 + u0);
      g.panel_rhi.push_back(1.0 - u0);
      for (int i = 0; i < 15; ++i) {
        const double u = mid - h * g15.x[i];  // descending gap = ascending r
        g.gap.push_back(u);
        g.r.push_back(1.0 - u);
        g.w.push_back(h * g15.w[i]);
        g.log_r.push_back(std::log1p(-u));
      }
    };
    // r-octaves [2^-j-1, 2^-j] up to r = 1/2, then split; refines r log r
    for (int j = kFixedGridLeftDepth; j-- > 1;) {
      const double lo = std::ldexp(1.0, -(j + 1));
      const double hi = std::ldexp(1.0, -j);
      const double mid = 0.5 * (lo + hi);
      add_r_panel(lo, mid);
      add_r_panel(mid, hi);
    }
    g.gap_side_start = g.panel_rhi.size();
    // gap-octaves from 1/2 down to the floor
    for (int j = 1; j < kFixedGridDepth; ++j) {
      const double hi = std::ldexp(1.0, -j);
      const double lo = std::ldexp(1.0, -(j + 1));
      const double mid = 0.5 * (lo + hi);
      add_gap_panel(mid, hi);
      add_gap_panel(lo, mid);
    }
    return g;
  }();
  return grid;
}

}  // namespace bergman
