#include "doctest.h"
#include "geometry.hpp"

#include <cmath>
#include <set>

using namespace bergman;

namespace {

CVec unit1(double theta) { return {Complex(std::cos(theta), std::sin(theta))}; }

}  // namespace

TEST_CASE("nonisotropic distance") {
  CHECK(niso_distance(unit1(0.3), unit1(0.3)) == doctest::Approx(0.0));
  CHECK(niso_distance(unit1(0.0), unit1(M_PI)) == doctest::Approx(std::sqrt(2.0)));
  // xi = 1, tau = i: <xi,tau> = -i, |1+i|^(1/2) = 2^(1/4)
  CHECK(niso_distance(unit1(0.0), unit1(M_PI / 2)) ==
        doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-12));
  CVec bad = {Complex(0.5, 0.0)};
  CHECK_THROWS_AS(niso_distance(bad, unit1(0.0)), Error);
}

TEST_CASE("triangle inequality for d on random unit triples") {
  for (int n : {1, 2, 3}) {
    for (int i = 0; i < 2000; ++i) {
      const CVec a = sphere_point(n, i, 11);
      const CVec b = sphere_point(n, i + 7919, 12);
      const CVec c = sphere_point(n, i + 15838, 13);
      const double dab = niso_distance(a, b);
      const double dbc = niso_distance(b, c);
      const double dac = niso_distance(a, c);
      CHECK(dac <= dab + dbc + 1e-12);
    }
  }
}

TEST_CASE("pseudo-hyperbolic distance") {
  const Point z = Point::disk(0.5);
  CHECK(pseudo_hyperbolic(z, z) == doctest::Approx(0.0));
  CHECK(pseudo_hyperbolic(Point::disk(0.0), z) == doctest::Approx(0.5));
  CHECK(pseudo_hyperbolic(z, Point::disk(0.0)) == doctest::Approx(0.5));
  // disk formula |z-w| / |1 - conj(z) w|
  CHECK(pseudo_hyperbolic(z, Point::disk(0.25)) == doctest::Approx(0.25 / 0.875).epsilon(1e-14));
}

TEST_CASE("disk formula agreement on random pairs") {
  Rng rng(17);
  for (int i = 0; i < 2000; ++i) {
    const Point z = sample_ball_point(1, 0.99, rng);
    const Point w = sample_ball_point(1, 0.99, rng);
    const Complex a = z.coords()[0], b = w.coords()[0];
    const double expected = std::abs(a - b) / std::abs(1.0 - std::conj(a) * b);
    CHECK(pseudo_hyperbolic(z, w) == doctest::Approx(expected).epsilon(1e-13));
    CHECK(pseudo_hyperbolic(z, w) == doctest::Approx(pseudo_hyperbolic(w, z)).epsilon(1e-13));
  }
}

TEST_CASE("pseudo-hyperbolic symmetry in C^2") {
  Rng rng(23);
  for (int i = 0; i < 500; ++i) {
    const Point z = sample_ball_point(2, 0.95, rng);
    const Point w = sample_ball_point(2, 0.95, rng);
    CHECK(pseudo_hyperbolic(z, w) == doctest::Approx(pseudo_hyperbolic(w, z)).epsilon(1e-12));
  }
}

TEST_CASE("PHBall parameters and membership") {
  const Point z = Point::disk(0.5);
  const PHBall ball(z, 0.3);
  CHECK(ball.c_scalar == doctest::Approx((1.0 - 0.09) * 0.5 / (1.0 - 0.09 * 0.25)).epsilon(1e-14));
  CHECK(ball.t == doctest::Approx((1.0 - 0.25) / (1.0 - 0.09 * 0.25)).epsilon(1e-14));
  Rng rng(31);
  for (int i = 0; i < 2000; ++i) {
    const Point w = sample_ball_point(1, 0.999, rng);
    const double rho = pseudo_hyperbolic(z, w);
    if (std::abs(rho - 0.3) < 1e-9) continue;
    CHECK(ball.contains(w) == (rho < 0.3));
  }
  const PHBall bb = PHBall::bergman(z, 0.7);
  CHECK(bb.radius == doctest::Approx(std::tanh(0.7)));
}

TEST_CASE("Bergman metric wraps rho") {
  const Point z = Point::disk(0.3), w = Point::disk(-0.2);
  const double rho = pseudo_hyperbolic(z, w);
  CHECK(bergman_metric(z, w) == doctest::Approx(0.5 * std::log((1 + rho) / (1 - rho))));
}

TEST_CASE("cap measure") {
  CHECK(cap_sigma(1, 2.0) == doctest::Approx(1.0));
  CHECK(cap_sigma(1, 0.5) == doctest::Approx((2.0 / M_PI) * std::asin(0.25)).epsilon(1e-14));
  // n=2: sigma(Q(xi,t)) ~ t^4/2 for small t (pushforward density is 1/pi)
  CHECK(cap_sigma(2, 0.01) == doctest::Approx(0.01 * 0.01 / 2.0).epsilon(1e-2));
  CHECK(cap_sigma(2, 2.0) == doctest::Approx(1.0));
  double prev = 0.0;
  for (double t2 : {0.1, 0.3, 0.7, 1.2, 1.8}) {
    const double s = cap_sigma(2, t2);
    CHECK(s >= prev);
    CHECK(s <= 1.0);
    prev = s;
  }
}

TEST_CASE("carleson block measure oracles") {
  WeightTransforms flat(RadialWeight::standard(0.0, 1));
  CHECK(carleson_block_measure(flat, Point::disk(0.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(carleson_block_measure(flat, Point::disk(0.5)) ==
        doctest::Approx((2.0 / M_PI) * std::asin(0.25) * 0.75).epsilon(1e-11));
  CHECK(carleson_block_measure(flat, Point::disk(0.5)) == doctest::Approx(0.120645).epsilon(1e-5));
  CHECK(carleson_block_measure(flat, Point::disk(0.9)) ==
        doctest::Approx((2.0 / M_PI) * std::asin(0.05) * 0.19).epsilon(1e-11));
}

TEST_CASE("ph ball weight measure: centered balls") {
  WeightTransforms flat(RadialWeight::standard(0.0, 1));
  const PHBall ball(Point::disk(0.0), 0.5);
  const auto [val, err] = ph_ball_weight_measure(flat, ball, 20000, 4);
  CHECK(val == doctest::Approx(0.25).epsilon(1e-12));  // flat weight: exact volume
  CHECK(err >= 0.0);
}

TEST_CASE("ph ball weight measure: off-center disk") {
  WeightTransforms flat(RadialWeight::standard(0.0, 1));
  const PHBall ball(Point::disk(0.5), 0.3);
  const auto [val, err] = ph_ball_weight_measure(flat, ball, 50000, 4);
  const double rt = 0.3 * (1.0 - 0.25) / (1.0 - 0.09 * 0.25);
  CHECK(val == doctest::Approx(rt * rt).epsilon(1e-10));
  CHECK(val == doctest::Approx(0.05296).epsilon(1e-3));
  double prev = 1e9;
  for (double r : {0.4, 0.2, 0.1}) {
    const auto [v, e] = ph_ball_weight_measure(flat, PHBall(Point::disk(0.5), r), 20000, 4);
    CHECK(v < prev);
    prev = v;
  }
  // nonconstant weight: a real stderr, and the estimate matches quadrature
  WeightTransforms std1(RadialWeight::standard(1.0, 1));
  const auto [v1, e1] = ph_ball_weight_measure(std1, PHBall(Point::disk(0.0), 0.5), 100000, 9);
  const double exact = 2.0 * (std1.moment(1.0) - std1.tail_moment(0.5, 1.0));
  CHECK(e1 > 0.0);
  CHECK(std::abs(v1 - exact) <= 5.0 * e1);
}

TEST_CASE("cap cover basics") {
  // r >= sqrt(2): a single cap covers the sphere
  const CapCover one = CapCover::build(1, 1.5, 1000, 3);
  CHECK(one.size() == 1);

  const CapCover cov = CapCover::build(1, 0.5, 10000, 3);
  CHECK(cov.size() >= 2);
  CHECK(cov.size() <= 13);
  for (int i = 0; i < cov.size(); ++i)
    for (int j = i + 1; j < cov.size(); ++j)
      CHECK(niso_distance(cov.centers()[i], cov.centers()[j]) > 2.0 * 0.5);
  for (int i = 0; i < 2000; ++i) {
    const CVec eta = sphere_point(1, i, 77);
    const int j = cov.locate(eta);
    CHECK(j >= 0);
    CHECK(j < cov.size());
    for (int c = 0; c < cov.size(); ++c) {
      if (niso_distance(eta, cov.centers()[c]) <= 0.5) CHECK(j == c);
    }
  }
  // arcs partition the circle: cell measures add to 1
  double total = 0.0;
  for (int j = 0; j < cov.size(); ++j) total += cov.arc_sigma(j);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("greedy packing count scales like r^-2n") {
  Band band;
  for (int k = 1; k <= 10; ++k) {
    const double r = std::exp2(-0.5 * k);
    const long budget = static_cast<long>(100.0 / (r * r)) + 1000;
    const CapCover cov = CapCover::build(1, r, budget, 3);
    band.add(cov.size() * r * r);
  }
  CHECK(band.lo >= 0.5);
  CHECK(band.hi <= 20.0);
}

TEST_CASE("dyadic partition structure") {
  DyadicPartition part(1, 6, 1);
  CHECK(part.level_count(0) == 1);
  CHECK(part.locate(Point::disk(0.0)).k == 0);
  CHECK(part.locate(Point::disk(0.0)).j == 1);
  // z = 0.9 lives in shell k = 3, center radius 1 - 3/32
  const auto cell = part.locate(Point::disk(0.9));
  CHECK(cell.k == 3);
  CHECK(part.center_radius(3) == doctest::Approx(0.90625));
  // locate(c_kj) = (k,j) for every cell center
  for (const auto& id : part.all_cells()) {
    const auto back = part.locate(part.cell_center(id));
    CHECK(back.k == id.k);
    CHECK(back.j == id.j);
  }
  Rng rng(71);
  for (int i = 0; i < 20000; ++i) {
    const Point z = sample_ball_point(1, part.max_radius() * 0.999999, rng);
    const auto c = part.locate(z);
    const auto [lo, hi] = part.shell(c.k);
    CHECK(z.norm() >= lo);
    CHECK(z.norm() < hi);
    if (c.k >= 1) {
      const double d = niso_distance(z.direction(), part.cap_center(c));
      CHECK(d <= 2.0 * std::exp2(-0.5 * c.k) + 1e-9);
    }
  }
  CHECK_THROWS_AS(part.locate(Point::disk(0.9999)), Error);
}

TEST_CASE("partition cell sigmas sum to one per level") {
  DyadicPartition part(1, 5, 1);
  for (int k = 1; k <= 5; ++k) {
    double tot = 0.0;
    for (int j = 1; j <= part.level_count(k); ++j) tot += part.cell_sigma({k, j});
    CHECK(tot == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("partition in C^2") {
  DyadicPartition part(2, 4, 1);
  Band band;
  for (int k = 2; k <= 4; ++k) band.add(part.level_count(k) * std::exp2(-2.0 * k));
  CHECK(band.hi / band.lo <= 10.0);
  Rng rng(13);
  for (int i = 0; i < 5000; ++i) {
    const Point z = sample_ball_point(2, part.max_radius() * 0.999999, rng);
    const auto c = part.locate(z);
    const auto [lo, hi] = part.shell(c.k);
    CHECK(z.norm() >= lo);
    CHECK(z.norm() < hi);
  }
  for (int k = 1; k <= 4; ++k) {
    double tot = 0.0;
    for (int j = 1; j <= part.level_count(k); ++j) tot += part.cell_sigma({k, j});
    CHECK(tot == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("bergman lattice") {
  const auto big = bergman_lattice(1, 0.9, 0.5, 5);
  CHECK(!big.empty());
  const auto lat = bergman_lattice(1, 0.2, 0.9, 5);
  for (size_t i = 0; i < lat.size(); ++i)
    for (size_t j = i + 1; j < lat.size(); ++j)
      CHECK(bergman_metric(lat[i], lat[j]) > 0.2 / 5.0);
  // size grows roughly like the hyperbolic area ~ 1/(1-rmax)
  const auto lat97 = bergman_lattice(1, 0.2, 0.97, 5);
  const auto lat99 = bergman_lattice(1, 0.2, 0.99, 5);
  const double growth = double(lat99.size()) / double(lat97.size());
  CHECK(growth > 1.5);
  CHECK(growth < 8.0);
}

TEST_CASE("bounded overlap: a ball of fixed radius meets few cells") {
  // count the partition cells touched by Delta(z, 0.5) via interior samples;
  // the count stays bounded and stable across z and across sample batches
  DyadicPartition part(1, 9, 1);
  Rng rng(123);
  int overall_max = 0;
  for (double rad : {0.2, 0.55, 0.8, 0.93}) {
    const Point z = Point::disk(rad);
    const PHBall ball(z, 0.5);
    int batch_counts[2] = {0, 0};
    for (int batch = 0; batch < 2; ++batch) {
      std::set<std::pair<int, int>> cells;
      const CVec dir = ball.center.is_origin() ? CVec{Complex(1, 0)} : ball.center.direction();
      for (int i = 0; i < 4000; ++i) {
        // rejection-sample the ellipsoid via its bounding parametrization
        const double a1 = 2.0 * rng.uniform() - 1.0, a2 = 2.0 * rng.uniform() - 1.0;
        const double b1 = 2.0 * rng.uniform() - 1.0, b2 = 2.0 * rng.uniform() - 1.0;
        (void)b1;
        (void)b2;
        if (a1 * a1 + a2 * a2 >= 1.0) continue;
        const Complex u(a1, a2);
        CVec pt(1);
        pt[0] = (ball.c_scalar + ball.radius * ball.t * u) * dir[0];
        Point p(pt);
        if (p.norm() >= part.max_radius()) continue;
        const auto id = part.locate(p);
        cells.insert({id.k, id.j});
      }
      batch_counts[batch] = static_cast<int>(cells.size());
    }
    CHECK(std::abs(batch_counts[0] - batch_counts[1]) <= 3 + batch_counts[0] / 4);
    overall_max = std::max({overall_max, batch_counts[0], batch_counts[1]});
  }
  CHECK(overall_max <= 40);  // N(r = 0.5) stays modest at every depth
}

TEST_CASE("proposition band: ball vs block measures for a regular weight") {
  WeightTransforms w(RadialWeight::standard(0.0, 1));
  Band band;
  for (double rad : {0.0, 0.3, 0.6, 0.9, 0.99}) {
    const Point z = Point::disk(rad);
    const auto [val, err] = ph_ball_weight_measure(w, PHBall(z, 0.5), 50000, 21);
    band.add(val / carleson_block_measure(w, z));
  }
  CHECK(band.two_sided() <= 20.0);
}
