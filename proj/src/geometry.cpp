#include "geometry.hpp"

#include <algorithm>
#include <cmath>

namespace bergman {

Point::Point(CVec coords) : z_(std::move(coords)) {
  require(!z_.empty() && z_.size() <= 4, ErrorCode::InvalidArgument, "dimension must be 1..4");
  double s = 0.0;
  for (const Complex& c : z_) s += std::norm(c);
  norm_ = std::sqrt(s);
  require(norm_ < 1.0, ErrorCode::InvalidArgument, "point outside the open unit ball");
}

CVec Point::direction() const {
  require(norm_ > 0.0, ErrorCode::InvalidArgument, "origin has no direction");
  CVec d = z_;
  for (Complex& c : d) c /= norm_;
  return d;
}

Complex inner(const CVec& a, const CVec& b) {
  require(a.size() == b.size(), ErrorCode::InvalidArgument, "dimension mismatch");
  Complex s(0.0, 0.0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
  return s;
}

namespace {

double vec_norm(const CVec& v) {
  double s = 0.0;
  for (const Complex& c : v) s += std::norm(c);
  return std::sqrt(s);
}

}  // namespace

double niso_distance(const CVec& xi, const CVec& tau) {
  require(std::abs(vec_norm(xi) - 1.0) <= 1e-12 && std::abs(vec_norm(tau) - 1.0) <= 1e-12,
          ErrorCode::NotUnit, "nonisotropic metric needs unit vectors");
  return std::sqrt(std::abs(1.0 - inner(xi, tau)));
}

double cap_sigma(int n, double t2) {
  require(n >= 1 && t2 >= 0.0, ErrorCode::InvalidArgument, "bad cap parameters");
  if (t2 >= 2.0) return 1.0;
  if (t2 == 0.0) return 0.0;
  if (n == 1) return (2.0 / M_PI) * std::asin(0.5 * t2);
  // Pushforward of sigma under eta -> <eta,xi> has density
  // (n-1)/pi (1-|w|^2)^(n-2) on the disk; integrate over |1 - w| <= t2 in
  // polar coordinates around w = 1 (s <= 2 cos(phi) keeps |w| < 1).
  const GaussRule& g = gauss_legendre(31);
  const double phi0 = t2 / 2.0 < 1.0 ? std::acos(t2 / 2.0) : 0.0;
  auto s_integral = [&](double phi) {
    const double smax = std::min(t2, 2.0 * std::cos(phi));
    double acc = 0.0;
    for (size_t i = 0; i < g.x.size(); ++i) {
      const double s = 0.5 * smax * (1.0 + g.x[i]);
      acc += 0.5 * smax * g.w[i] * std::pow(2.0 * s * std::cos(phi) - s * s, n - 2.0) * s;
    }
    return acc;
  };
  double total = 0.0;
  // |phi| < phi0: radial limit is t2; beyond it, 2 cos(phi).
  for (const auto& seg : {std::pair{0.0, phi0}, std::pair{phi0, M_PI / 2.0}}) {
    if (seg.second <= seg.first) continue;
    const double h = 0.5 * (seg.second - seg.first), mid = 0.5 * (seg.second + seg.first);
    for (size_t i = 0; i < g.x.size(); ++i) total += h * g.w[i] * s_integral(mid + h * g.x[i]);
  }
  return 2.0 * (n - 1.0) / M_PI * total;  // both signs of phi
}

double pseudo_hyperbolic(const Point& z, const Point& w) {
  require(z.n() == w.n(), ErrorCode::InvalidArgument, "dimension mismatch");
  if (z.is_origin()) return w.norm();
  const Complex wz = inner(w, z);
  const double nz2 = z.norm() * z.norm();
  // numerator: z - P_z(w) - sqrt(1-|z|^2) Pperp_z(w)
  const Complex proj = wz / nz2;
  const double root = std::sqrt(1.0 - nz2);
  double num2 = 0.0;
  for (int i = 0; i < z.n(); ++i) {
    const Complex pz = proj * z.coords()[i];
    const Complex perp = w.coords()[i] - pz;
    num2 += std::norm(z.coords()[i] - pz - root * perp);
  }
  return std::sqrt(num2) / std::abs(1.0 - wz);
}

double bergman_metric(const Point& z, const Point& w) {
  const double rho = pseudo_hyperbolic(z, w);
  return 0.5 * std::log((1.0 + rho) / (1.0 - rho));
}

PHBall::PHBall(Point z, double r) : center(std::move(z)), radius(r) {
  require(r > 0.0 && r < 1.0, ErrorCode::InvalidArgument, "pseudo-hyperbolic radius in (0,1)");
  const double nz = center.norm();
  const double den = 1.0 - r * r * nz * nz;
  c_scalar = (1.0 - r * r) * nz / den;
  t = (1.0 - nz * nz) / den;
}

PHBall PHBall::bergman(Point z, double beta_radius) {
  require(beta_radius > 0.0, ErrorCode::InvalidArgument, "Bergman radius must be positive");
  return PHBall(std::move(z), std::tanh(beta_radius));
}

bool PHBall::contains(const Point& w) const {
  require(w.n() == center.n(), ErrorCode::InvalidArgument, "dimension mismatch");
  if (center.is_origin()) return w.norm() < radius;
  const CVec dir = center.direction();
  const Complex zeta = inner(w.coords(), dir);
  double perp2 = 0.0;
  for (int i = 0; i < w.n(); ++i) perp2 += std::norm(w.coords()[i] - zeta * dir[i]);
  const double rt = radius * t;
  return std::norm(zeta - c_scalar) / (rt * rt) + perp2 / (radius * radius * t) < 1.0;
}

double PHBall::normalized_volume() const {
  const int n = center.n();
  return std::pow(radius, 2.0 * n) * std::pow(t, n + 1.0);
}

std::pair<double, double> ph_ball_weight_measure(const WeightTransforms& w, const PHBall& ball,
                                                 long samples, uint64_t seed) {
  require(samples >= 10000, ErrorCode::InvalidArgument, "need at least 1e4 samples");
  const int n = ball.center.n();
  require(n == w.n(), ErrorCode::InvalidArgument, "dimension mismatch");

  // Orthonormal frame with b_0 = direction(center).
  std::vector<CVec> frame;
  if (!ball.center.is_origin()) frame.push_back(ball.center.direction());
  for (int k = 0; k < n && static_cast<int>(frame.size()) < n; ++k) {
    CVec v(n, Complex(0.0, 0.0));
    v[k] = 1.0;
    for (const CVec& b : frame) {
      const Complex c = inner(v, b);
      for (int i = 0; i < n; ++i) v[i] -= c * b[i];
    }
    const double nv = vec_norm(v);
    if (nv < 1e-8) continue;
    for (Complex& c : v) c /= nv;
    frame.push_back(v);
  }
  require(static_cast<int>(frame.size()) == n, ErrorCode::InvalidArgument, "frame construction failed");

  Rng rng(seed);
  const double rt = ball.radius * ball.t;
  const double rs = ball.radius * std::sqrt(ball.t);
  double sum = 0.0, sumsq = 0.0;
  for (long i = 0; i < samples; ++i) {
    // uniform point of the unit ball of C^n
    CVec v(n);
    double nv2 = 0.0;
    for (int k = 0; k < n; ++k) {
      v[k] = Complex(rng.gaussian(), rng.gaussian());
      nv2 += std::norm(v[k]);
    }
    const double scale = std::pow(rng.uniform(), 1.0 / (2.0 * n)) / std::sqrt(std::max(nv2, 1e-300));
    for (Complex& c : v) c *= scale;

    double r2 = 0.0;
    if (ball.center.is_origin()) {
      for (const Complex& c : v) r2 += std::norm(c * ball.radius);
    } else {
      CVec pt(n, Complex(0.0, 0.0));
      for (int i = 0; i < n; ++i) pt[i] = (ball.c_scalar + rt * v[0]) * frame[0][i];
      for (int k = 1; k < n; ++k)
        for (int i = 0; i < n; ++i) pt[i] += rs * v[k] * frame[k][i];
      for (const Complex& c : pt) r2 += std::norm(c);
    }
    const double r = std::sqrt(r2);
    const double val = r < 1.0 ? w.density(r) : 0.0;
    sum += val;
    sumsq += val * val;
  }
  const double mean = sum / samples;
  const double var = std::max(0.0, sumsq / samples - mean * mean);
  const double scale = ball.normalized_volume();
  return {scale * mean, scale * std::sqrt(var / samples)};
}

double carleson_block_measure(const WeightTransforms& w, const Point& a) {
  require(a.n() == w.n(), ErrorCode::InvalidArgument, "dimension mismatch");
  if (a.is_origin()) return w.omega_ball();
  const double t2 = 1.0 - a.norm();
  return cap_sigma(w.n(), t2) * 2.0 * w.n() * w.tail_moment(a.norm(), 2.0 * w.n() - 1.0);
}

CVec sphere_point(int n, long index, uint64_t seed) {
  auto frac = [](double x) { return x - std::floor(x); };
  uint64_t s = seed;
  const double off0 = splitmix64(s) * 0x1.0p-64;
  if (n == 1) {
    const double theta = 2.0 * M_PI * frac(off0 + index * 0.61803398874989485);
    return {Complex(std::cos(theta), std::sin(theta))};
  }
  // n >= 2: a seeded pseudorandom stream. Kronecker/Hopf lattices look
  // uniform for sigma but leave fiber-direction holes at the nonisotropic
  // cap scale r^2, which breaks 2r-coverage at the minimum candidate budget;
  // independent points have no such anisotropy. Deterministic given the seed.
  uint64_t st = seed * 0x9e3779b97f4a7c15ull + static_cast<uint64_t>(index) * 0xbf58476d1ce4e5b9ull;
  Rng rng(st);
  CVec v(n);
  double nv = 0.0;
  do {
    nv = 0.0;
    for (int k = 0; k < n; ++k) {
      v[k] = Complex(rng.gaussian(), rng.gaussian());
      nv += std::norm(v[k]);
    }
    nv = std::sqrt(nv);
  } while (nv < 1e-12);
  for (Complex& c : v) c /= nv;
  return v;
}

int64_t CapCover::bucket_key(const int* cell, int dims) {
  uint64_t h = 0x2545f4914f6cdd1dull;
  for (int i = 0; i < dims; ++i) {
    h ^= static_cast<uint64_t>(static_cast<int64_t>(cell[i])) + 0x9e3779b97f4a7c15ull + (h << 6) +
         (h >> 2);
    h *= 0xff51afd7ed558ccdull;
  }
  return static_cast<int64_t>(h);
}

bool CapCover::scan_neighbors(const CVec& eta, const std::function<bool(int)>& visit) const {
  const int dims = 2 * n_;
  int cell[8], probe[8], offset[8];
  for (int i = 0; i < n_; ++i) {
    cell[2 * i] = static_cast<int>(std::floor(eta[i].real() / bucket_h_));
    cell[2 * i + 1] = static_cast<int>(std::floor(eta[i].imag() / bucket_h_));
  }
  // own bucket first: rejections usually resolve there
  auto try_bucket = [&](const int* key) {
    auto it = buckets_.find(bucket_key(key, dims));
    if (it == buckets_.end()) return false;
    for (int j : it->second)
      if (visit(j)) return true;
    return false;
  };
  if (try_bucket(cell)) return true;
  for (int i = 0; i < dims; ++i) offset[i] = -1;
  while (true) {
    bool all_zero = true;
    for (int i = 0; i < dims; ++i) all_zero = all_zero && offset[i] == 0;
    if (!all_zero) {
      for (int i = 0; i < dims; ++i) probe[i] = cell[i] + offset[i];
      if (try_bucket(probe)) return true;
    }
    int d = 0;
    while (d < dims && ++offset[d] > 1) offset[d++] = -1;
    if (d == dims) break;
  }
  return false;
}

CapCover CapCover::build(int n, double r, long candidate_budget, uint64_t seed) {
  require(n >= 1 && n <= 4, ErrorCode::InvalidArgument, "dimension must be 1..4");
  require(r > 0.0, ErrorCode::InvalidArgument, "cap radius must be positive");
  const double min_budget = 100.0 * std::pow(r, -2.0 * n);
  require(candidate_budget >= static_cast<long>(std::min(min_budget, 1e9)),
          ErrorCode::InvalidArgument, "candidate budget below 100 r^(-2n)");

  CapCover cover;
  cover.n_ = n;
  cover.r_ = r;
  cover.bucket_h_ = 3.0 * r;  // search radius sqrt(2)*2r < 3r fits in +-1 buckets

  const double sep2 = std::min(4.0 * r * r, 2.0);  // d <= 2r  <=>  |1-<.,.>| <= 4r^2
  auto is_separated = [&](const CVec& cand) {
    return !cover.scan_neighbors(cand, [&](int j) {
      return std::abs(1.0 - inner(cand, cover.centers_[j])) <= sep2;
    });
  };
  auto accept = [&](const CVec& cand) {
    const int idx = static_cast<int>(cover.centers_.size());
    cover.centers_.push_back(cand);
    int cell[8];
    for (int k = 0; k < n; ++k) {
      cell[2 * k] = static_cast<int>(std::floor(cand[k].real() / cover.bucket_h_));
      cell[2 * k + 1] = static_cast<int>(std::floor(cand[k].imag() / cover.bucket_h_));
    }
    cover.buckets_[bucket_key(cell, 2 * n)].push_back(idx);
  };

  for (long i = 0; i < candidate_budget; ++i) {
    const CVec cand = sphere_point(n, i, seed);
    if (is_separated(cand)) accept(cand);
  }

  // The set is maximal only relative to the finite stream, so marginal holes
  // can remain. Patch rounds: an uncovered probe is > 2r from every center,
  // hence itself admissible; add it, saturate its neighborhood (uncovered
  // regions are thin wedges), and rescan fresh probe streams until one passes
  // untouched. The clean final round is the post-hoc coverage check.
  auto saturate_around = [&](const CVec& eta, uint64_t pseed) {
    Rng prng(pseed);
    for (double scale : {0.2 * r, 0.5 * r, r, 2.0 * r}) {
      for (int t = 0; t < 8; ++t) {
        CVec cand(n);
        double norm2 = 0.0;
        for (int k = 0; k < n; ++k) {
          cand[k] = eta[k] + scale * Complex(prng.gaussian(), prng.gaussian());
          norm2 += std::norm(cand[k]);
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (Complex& c : cand) c *= inv;
        if (is_separated(cand)) accept(cand);
      }
    }
    // fiber direction: a global phase of size phi moves d by ~sqrt(phi)
    for (double phi : {0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 4.0, -4.0}) {
      const Complex rot = std::polar(1.0, phi * r * r);
      CVec cand(n);
      for (int k = 0; k < n; ++k) cand[k] = rot * eta[k];
      if (is_separated(cand)) accept(cand);
    }
  };

  const long probe_count = 200000;
  bool clean = false;
  for (int round = 0; round < 200 && !clean; ++round) {
    clean = true;
    const uint64_t probe_seed = seed ^ (0xc0ffee123456789aull + 0x9e3779b9ull * round);
    for (long i = 0; i < probe_count; ++i) {
      const CVec eta = sphere_point(n, i, probe_seed);
      if (is_separated(eta)) {  // uncovered: no center within 2r
        accept(eta);
        saturate_around(eta, probe_seed ^ (0x1234567ull * i));
        clean = false;
      }
    }
  }
  if (!clean) fail(ErrorCode::CoverageFailure, "2r coverage did not stabilize within 200 rounds");

  if (n == 1) cover.build_arcs();
  return cover;
}

int CapCover::locate(const CVec& eta) const {
  const double r2 = std::min(r_ * r_, 2.0);
  const double R2 = std::min(4.0 * r_ * r_, 2.0);
  int inner_hit = -1;
  int best2r = -1;
  scan_neighbors(eta, [&](int j) {
    const double d2 = std::abs(1.0 - inner(eta, centers_[j]));
    if (d2 <= r2) {
      inner_hit = j;  // disjoint r-caps: unique if it exists
      return true;
    }
    if (d2 <= R2 && (best2r < 0 || j < best2r)) best2r = j;
    return false;
  });
  if (inner_hit >= 0) return inner_hit;
  if (best2r >= 0) return best2r;
  // No center within 2r (possible only off the checked sample); fall back to
  // the nearest center for totality.
  int best = 0;
  double bestd = std::numeric_limits<double>::infinity();
  for (size_t j = 0; j < centers_.size(); ++j) {
    const double d2 = std::abs(1.0 - inner(eta, centers_[j]));
    if (d2 < bestd) {
      bestd = d2;
      best = static_cast<int>(j);
    }
  }
  return best;
}

void CapCover::build_arcs() {
  const int m = size();
  arcs_.assign(m, {});
  std::vector<double> theta(m);
  for (int j = 0; j < m; ++j) theta[j] = std::arg(centers_[j][0]);
  const double half_r = 2.0 * std::asin(std::min(r_ * r_ / 2.0, 1.0));
  const double half_2r = 2.0 * std::asin(std::min(2.0 * r_ * r_, 1.0));
  std::vector<double> breaks;
  for (int j = 0; j < m; ++j) {
    for (double w : {half_r, std::min(half_2r, M_PI)}) {
      breaks.push_back(std::remainder(theta[j] - w, 2.0 * M_PI));
      breaks.push_back(std::remainder(theta[j] + w, 2.0 * M_PI));
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  if (breaks.empty()) breaks.push_back(-M_PI);
  const size_t nb = breaks.size();
  for (size_t i = 0; i < nb; ++i) {
    const double a = breaks[i];
    const double b = i + 1 < nb ? breaks[i + 1] : breaks[0] + 2.0 * M_PI;
    if (b <= a) continue;
    const double mid = 0.5 * (a + b);
    const int cell = locate({Complex(std::cos(mid), std::sin(mid))});
    arcs_[cell].emplace_back(a, b);
  }
}

double CapCover::arc_sigma(int j) const {
  require(n_ == 1, ErrorCode::InvalidArgument, "exact arcs exist only for n = 1");
  double len = 0.0;
  for (const auto& [a, b] : arcs_[j]) len += b - a;
  return len / (2.0 * M_PI);
}

DyadicPartition::DyadicPartition(int n, int kmax, uint64_t seed) : n_(n), kmax_(kmax), seed_(seed) {
  require(n >= 1 && n <= 4, ErrorCode::InvalidArgument, "dimension must be 1..4");
  require(kmax >= 0, ErrorCode::InvalidArgument, "kmax must be >= 0");
  require((n == 1 && kmax <= 20) || (n == 2 && kmax <= 12) || (n > 2 && kmax <= 8),
          ErrorCode::InvalidArgument, "kmax above the per-dimension cap");
  levels_.reserve(kmax);
  sigma_.resize(kmax + 1);
  samples_.resize(kmax + 1);
  sample_tag_.resize(kmax + 1);
  for (int k = 1; k <= kmax; ++k) {
    const double r = std::exp2(-0.5 * k);
    const long budget = static_cast<long>(std::ceil(100.0 * std::pow(r, -2.0 * n))) + 1000;
    levels_.push_back(CapCover::build(n, r, budget, seed ^ (0x517cc1b727220a95ull * k)));
    if (n >= 2) {
      const CapCover& cover = levels_.back();
      const long m = std::max<long>(1 << 14, 32L * cover.size());
      auto& pts = samples_[k];
      auto& tags = sample_tag_[k];
      auto& sig = sigma_[k];
      pts.reserve(m);
      tags.reserve(m);
      sig.assign(cover.size(), 0.0);
      for (long i = 0; i < m; ++i) {
        pts.push_back(sphere_point(n, i, seed ^ (0x9e3779b97f4a7c15ull * (k + 17))));
        tags.push_back(cover.locate(pts.back()));
        sig[tags.back()] += 1.0;
      }
      for (double& s : sig) s /= m;
    }
  }
}

int DyadicPartition::level_count(int k) const {
  require(k >= 0 && k <= kmax_, ErrorCode::InvalidArgument, "level out of range");
  return k == 0 ? 1 : levels_[k - 1].size();
}

const CapCover& DyadicPartition::level(int k) const {
  require(k >= 1 && k <= kmax_, ErrorCode::InvalidArgument, "level out of range");
  return levels_[k - 1];
}

std::pair<double, double> DyadicPartition::shell(int k) const {
  if (k == 0) return {0.0, 0.5};
  return {1.0 - std::exp2(-k), 1.0 - std::exp2(-(k + 1))};
}

DyadicPartition::CellId DyadicPartition::locate(const Point& z) const {
  require(z.n() == n_, ErrorCode::InvalidArgument, "dimension mismatch");
  if (z.norm() < 0.5) return {0, 1};
  const double gap = 1.0 - z.norm();
  int k = static_cast<int>(std::floor(-std::log2(gap)));
  while (k > 0 && z.norm() < 1.0 - std::exp2(-k)) --k;
  while (z.norm() >= 1.0 - std::exp2(-(k + 1))) ++k;
  require(k <= kmax_, ErrorCode::LevelOverflow, "point beyond the deepest shell");
  const int j = levels_[k - 1].locate(z.direction());
  return {k, j + 1};
}

Point DyadicPartition::cell_center(const CellId& id) const {
  CVec dir = cap_center(id);
  const double rad = center_radius(id.k);
  for (Complex& c : dir) c *= rad;
  return Point(dir);
}

CVec DyadicPartition::cap_center(const CellId& id) const {
  if (id.k == 0) {
    CVec e1(n_, Complex(0.0, 0.0));
    e1[0] = 1.0;
    return e1;
  }
  require(id.j >= 1 && id.j <= level_count(id.k), ErrorCode::InvalidArgument, "cell out of range");
  return level(id.k).centers()[id.j - 1];
}

double DyadicPartition::cell_sigma(const CellId& id) const {
  if (id.k == 0) return 1.0;
  if (n_ == 1) return level(id.k).arc_sigma(id.j - 1);
  return sigma_[id.k][id.j - 1];
}

double DyadicPartition::cell_angular_mean(const CellId& id,
                                          const std::function<double(const CVec&)>& f) const {
  if (id.k == 0) {
    // whole sphere: QMC for n >= 2, trapezoid for n = 1
    if (n_ == 1) {
      const int m = 512;
      double acc = 0.0;
      for (int i = 0; i < m; ++i) {
        const double th = 2.0 * M_PI * i / m;
        acc += f({Complex(std::cos(th), std::sin(th))});
      }
      return acc / m;
    }
    const long m = 1 << 14;
    double acc = 0.0;
    for (long i = 0; i < m; ++i) acc += f(sphere_point(n_, i, seed_ ^ 0xabcdef12345ull));
    return acc / m;
  }
  if (n_ == 1) {
    const auto& cell_arcs = level(id.k).arcs()[id.j - 1];
    const GaussRule& g = gauss_legendre(15);
    double acc = 0.0, len = 0.0;
    for (const auto& [a, b] : cell_arcs) {
      const double h = 0.5 * (b - a), mid = 0.5 * (a + b);
      len += b - a;
      for (size_t i = 0; i < g.x.size(); ++i) {
        const double th = mid + h * g.x[i];
        acc += h * g.w[i] * f({Complex(std::cos(th), std::sin(th))});
      }
    }
    return len > 0.0 ? acc / len : 0.0;
  }
  const auto& pts = samples_[id.k];
  const auto& tags = sample_tag_[id.k];
  double acc = 0.0;
  long count = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    if (tags[i] == id.j - 1) {
      acc += f(pts[i]);
      ++count;
    }
  }
  return count > 0 ? acc / count : 0.0;
}

std::vector<DyadicPartition::CellId> DyadicPartition::all_cells() const {
  std::vector<CellId> out;
  out.push_back({0, 1});
  for (int k = 1; k <= kmax_; ++k)
    for (int j = 1; j <= level_count(k); ++j) out.push_back({k, j});
  return out;
}

Point sample_ball_point(int n, double rmax, Rng& rng) {
  CVec v(n);
  double nv2 = 0.0;
  for (int k = 0; k < n; ++k) {
    v[k] = Complex(rng.gaussian(), rng.gaussian());
    nv2 += std::norm(v[k]);
  }
  const double r = rmax * std::pow(rng.uniform(), 1.0 / (2.0 * n));
  const double scale = r / std::sqrt(std::max(nv2, 1e-300));
  for (Complex& c : v) c *= scale;
  return Point(v);
}

std::vector<Point> bergman_lattice(int n, double delta, double rmax, uint64_t seed) {
  require(delta > 0.05 && delta < 1.0, ErrorCode::InvalidArgument, "delta outside (0.05, 1)");
  require(rmax > 0.0 && rmax <= 0.999, ErrorCode::InvalidArgument, "rmax outside (0, 0.999]");

  const int k_rmax = std::max(0, static_cast<int>(std::floor(-std::log2(1.0 - rmax))));
  const int kdir = std::min(k_rmax + 2, n == 1 ? 16 : 8);
  DyadicPartition part(n, kdir, seed);

  // Stratified candidates: shell-k radii with level-(k+2) directions, which
  // refines the raw cell centers 4x both radially and angularly.
  std::vector<Point> candidates;
  candidates.push_back(Point(CVec(n, Complex(0.0, 0.0))));
  for (int k = 0; k <= k_rmax; ++k) {
    const int lev = std::min(k + 2, kdir);
    const int count = part.level_count(lev);
    for (int i = 1; i <= 7; i += 2) {
      const double gap = std::exp2(-k) * i / 8.0;
      const double rad = 1.0 - gap;
      if (rad < 0.0 || rad > rmax) continue;
      for (int j = 1; j <= count; ++j) {
        CVec dir = part.cap_center({lev, j});
        for (Complex& c : dir) c *= rad;
        candidates.emplace_back(dir);
      }
    }
  }

  std::vector<Point> lattice;
  const double sep = delta / 5.0;
  for (const Point& cand : candidates) {
    bool ok = true;
    for (const Point& p : lattice) {
      if (bergman_metric(cand, p) <= sep) {
        ok = false;
        break;
      }
    }
    if (ok) lattice.push_back(cand);
  }

  // 5*delta covering check over the requested region.
  Rng rng(seed ^ 0xfeedfacecafebeefull);
  const long probes = 10000;
  for (long i = 0; i < probes; ++i) {
    const Point z = sample_ball_point(n, rmax, rng);
    bool covered = false;
    for (const Point& p : lattice) {
      if (bergman_metric(z, p) < 5.0 * delta) {
        covered = true;
        break;
      }
    }
    if (!covered) fail(ErrorCode::CoverageFailure, "5*delta covering check failed");
  }
  return lattice;
}

}  // namespace bergman
