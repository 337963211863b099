#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "rng.hpp"
#include "weights.hpp"

namespace bergman {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

// A point of the open unit ball; the norm is cached at construction.
class Point {
public:
  Point() : z_(1, Complex(0.0, 0.0)), norm_(0.0) {}
  explicit Point(CVec coords);
  static Point disk(Complex z) { return Point(CVec{z}); }
  static Point disk(double x) { return Point(CVec{Complex(x, 0.0)}); }

  int n() const { return static_cast<int>(z_.size()); }
  double norm() const { return norm_; }
  const CVec& coords() const { return z_; }
  bool is_origin() const { return norm_ == 0.0; }
  CVec direction() const;  // z/|z|

private:
  CVec z_;
  double norm_;
};

Complex inner(const CVec& a, const CVec& b);  // <a,b> = sum a_k conj(b_k)
inline Complex inner(const Point& a, const Point& b) { return inner(a.coords(), b.coords()); }

// Nonisotropic metric d(xi,tau) = |1 - <xi,tau>|^(1/2) on the closed ball;
// arguments must be unit vectors to 1e-12.
double niso_distance(const CVec& xi, const CVec& tau);

// sigma(Q(xi,t)) for the cap Q = {|1 - <xi,eta>| <= t2}; takes the squared
// radius. Exact arc length for n = 1, pushforward-density quadrature for n >= 2.
double cap_sigma(int n, double t2);

double pseudo_hyperbolic(const Point& z, const Point& w);
double bergman_metric(const Point& z, const Point& w);

// Ellipsoid realization of Delta(z,r); Bergman ball D(z,beta) = Delta(z,tanh beta).
struct PHBall {
  Point center;
  double radius = 0.0;    // pseudo-hyperbolic radius in (0,1)
  double c_scalar = 0.0;  // ellipsoid center = c_scalar * direction(center)
  double t = 1.0;

  PHBall(Point z, double r);
  static PHBall bergman(Point z, double beta_radius);
  bool contains(const Point& w) const;
  double normalized_volume() const;  // V(Delta)/V(B) = r^(2n) t^(n+1)
};

// Monte-Carlo integral of omega over the ball; returns (estimate, stderr).
std::pair<double, double> ph_ball_weight_measure(const WeightTransforms& w, const PHBall& ball,
                                                 long samples, uint64_t seed);

// omega(S_a) = sigma(Q_a) * 2n * tail_moment(|a|, 2n-1); a = 0 gives omega(B).
double carleson_block_measure(const WeightTransforms& w, const Point& a);

// Deterministic low-discrepancy stream on S^(2n-1); seed shifts the stream.
CVec sphere_point(int n, long index, uint64_t seed);

// Greedy maximal 2r-separated set in d over a low-discrepancy candidate
// stream, with the first-match cap-cell locator.
class CapCover {
public:
  static CapCover build(int n, double r, long candidate_budget, uint64_t seed);

  int n() const { return n_; }
  double r() const { return r_; }
  int size() const { return static_cast<int>(centers_.size()); }
  const std::vector<CVec>& centers() const { return centers_; }

  // 0-based cap-cell index: the unique center with d <= r if one exists,
  // otherwise the smallest index with d <= 2r, otherwise the nearest center.
  int locate(const CVec& eta) const;

  // n = 1 only: exact arc decomposition [theta0, theta1) per cell.
  const std::vector<std::vector<std::pair<double, double>>>& arcs() const { return arcs_; }
  double arc_sigma(int j) const;  // n = 1 only

private:
  CapCover() = default;
  void build_arcs();
  // Visits center indices in the 3^2n neighboring buckets (own bucket first);
  // stops early when the visitor returns true.
  bool scan_neighbors(const CVec& eta, const std::function<bool(int)>& visit) const;
  static int64_t bucket_key(const int* cell, int dims);

  int n_ = 1;
  double r_ = 0.0;
  std::vector<CVec> centers_;
  double bucket_h_ = 1.0;
  std::unordered_map<int64_t, std::vector<int>> buckets_;
  std::vector<std::vector<std::pair<double, double>>> arcs_;
};

// The family Upsilon: level k >= 1 pairs the shell 1-2^-k <= |z| < 1-2^-(k+1)
// with the cap cells of a cover at r = 2^(-k/2); level 0 is the cell B/2.
class DyadicPartition {
public:
  struct CellId {
    int k = 0;
    int j = 1;  // 1-based
    bool operator==(const CellId& o) const { return k == o.k && j == o.j; }
  };

  DyadicPartition(int n, int kmax, uint64_t seed = 1);

  int n() const { return n_; }
  int kmax() const { return kmax_; }
  uint64_t seed() const { return seed_; }
  int level_count(int k) const;  // N_k
  const CapCover& level(int k) const;
  double center_radius(int k) const { return 1.0 - 3.0 * std::exp2(-(k + 2)); }
  std::pair<double, double> shell(int k) const;
  double max_radius() const { return 1.0 - std::exp2(-(kmax_ + 1)); }

  CellId locate(const Point& z) const;
  Point cell_center(const CellId& id) const;
  CVec cap_center(const CellId& id) const;
  double cell_sigma(const CellId& id) const;
  // Mean of f over the cell's cap (exact arcs for n = 1, QMC tags otherwise).
  double cell_angular_mean(const CellId& id, const std::function<double(const CVec&)>& f) const;

  std::vector<CellId> all_cells() const;

private:
  int n_, kmax_;
  uint64_t seed_;
  std::vector<CapCover> levels_;              // index k-1
  std::vector<std::vector<double>> sigma_;    // per level (n >= 2), QMC estimates
  std::vector<std::vector<CVec>> samples_;    // per level QMC sample (n >= 2)
  std::vector<std::vector<int>> sample_tag_;  // cell of each sample
};

// Greedy maximal delta/5-separated (Bergman metric) subset of a stratified
// candidate cloud; checks 5*delta covering of |z| <= rmax afterwards.
std::vector<Point> bergman_lattice(int n, double delta, double rmax, uint64_t seed);

// Uniform sample of the ball of radius rmax (volume measure), deterministic.
Point sample_ball_point(int n, double rmax, Rng& rng);

}  // namespace bergman
