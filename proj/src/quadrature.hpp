#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "errors.hpp"

namespace bergman {

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  int panels_used = 0;
};

// Integrand on a subinterval of [0,1). The second argument is 1-r computed
// exactly from the panel coordinates, so densities that blow up or vanish at
// the boundary can be evaluated without cancellation.
using RadialIntegrand = std::function<double(double r, double one_minus_r)>;

// Globally adaptive 15-point Gauss-Legendre over [a,b) with panels refined in
// the gap variable u = b - r; the initial split is dyadic toward r = b.
// Returns when the summed panel error is below rel_tol * |integral|.
// A positive gap_floor restricts the domain to 1 - r >= gap_floor (the floor
// is far below double resolution of r itself, so it must be carried in the
// gap variable).
QuadratureResult integrate_radial(const RadialIntegrand& f, double a, double b, double rel_tol,
                                  double gap_floor = 0.0);

// Fixed composite rule with two GL15 panels per dyadic octave toward both
// endpoints: r-octaves down to r = 2^-kFixedGridLeftDepth and gap-octaves
// down to 1-r = 2^-kFixedGridDepth. Integrands with r log r or boundary
// concentration stay accurate; the sliver below the gap floor is handled by
// the weight caches as a point mass at r = 1.
inline constexpr int kFixedGridDepth = 60;
inline constexpr int kFixedGridLeftDepth = 48;

struct FixedGrid {
  std::vector<double> r;          // nodes, 15 per panel, increasing
  std::vector<double> gap;        // 1 - r, exact on the gap side
  std::vector<double> w;          // panel weights
  std::vector<double> log_r;      // log(r), for fast power evaluation
  std::vector<double> panel_rhi;  // upper r bound per panel (increasing)
  bool panel_in_gap(size_t p) const { return gap_side_start <= p; }
  size_t gap_side_start = 0;  // first panel integrated in the gap variable
  double gap_floor = 0.0;     // 2^-kFixedGridDepth
  static const FixedGrid& instance();
};

inline constexpr int kPanelBudget = 20000;

// Nodes/weights of the two embedded rules, on [-1,1].
struct GaussRule {
  std::vector<double> x, w;
};
const GaussRule& gauss_legendre(int npoints);

}  // namespace bergman
