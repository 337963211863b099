#include "doctest.h"
#include "criteria.hpp"
#include "rng.hpp"

#include <cmath>

using namespace bergman;

namespace {

double star_flat(double r) { return (r * r - 1.0) / 4.0 - std::log(r) / 2.0; }

}  // namespace

TEST_CASE("carleson quotient: identity measure is flat at one") {
  WeightTransforms w(RadialWeight::standard(1.0, 1));
  DyadicPartition part(1, 4, 1);
  const auto rep = carleson_quotient(w, identity_measure(w), 2.0, 2.0, part);
  CHECK(rep.headline == doctest::Approx(1.0).epsilon(1e-8));
  for (const auto& [rad, val] : rep.shell_profile)
    CHECK(val == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("carleson quotient: point masses") {
  WeightTransforms flat(RadialWeight::standard(0.0, 1));
  DyadicPartition part(1, 6, 1);
  // delta at the origin: only S_0 = B sees it
  const auto rep0 =
      carleson_quotient(flat, Measure(DiscreteMeasure::delta(Point(CVec{Complex(0, 0)}), 1.0)),
                        2.0, 3.0, part);
  CHECK(rep0.headline == doctest::Approx(1.0).epsilon(1e-10));  // 1/omega(B)^(1/2-1/3+1), omega(B)=1
  // delta at 0.5: headline = 1/omega(S_0.5)
  const auto rep = carleson_quotient(
      flat, Measure(DiscreteMeasure::delta(Point::disk(0.5), 1.0)), 2.0, 2.0, part);
  CHECK(rep.headline == doctest::Approx(8.2888).epsilon(1e-4));
  CHECK(rep.headline ==
        doctest::Approx(1.0 / carleson_block_measure(flat, Point::disk(0.5))).epsilon(1e-10));
}

TEST_CASE("berezin quotient oracles") {
  WeightTransforms flat(RadialWeight::standard(0.0, 1));
  const KernelSeries ks = KernelSeries::bergman(flat);
  DyadicPartition part(1, 5, 1);
  // empty measure
  DiscreteMeasure empty;
  empty.n = 1;
  CHECK(berezin_quotient(ks, flat, empty, 2.0, 2.0, part).headline == doctest::Approx(0.0));
  // delta at 0: statistic is (1-|z|^2)^2, sup at z = 0
  const auto rep =
      berezin_quotient(ks, flat, DiscreteMeasure::delta(Point(CVec{Complex(0, 0)}), 1.0), 2.0,
                       2.0, part);
  CHECK(rep.headline == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("qlessp statistic: zero, monotone in r, and a brute-force point") {
  WeightTransforms flat(RadialWeight::standard(0.0, 1));
  DiscreteMeasure empty;
  empty.n = 1;
  CHECK(qlessp_statistic(flat, Measure(empty), 4.0, 2.0, 0.5).headline == doctest::Approx(0.0));

  const DiscreteMeasure d0 = DiscreteMeasure::delta(Point(CVec{Complex(0, 0)}), 1.0);
  double prev = 0.0;
  for (double r : {0.2, 0.5, 1.0}) {
    const double v = qlessp_statistic(flat, Measure(d0), 4.0, 2.0, r).headline;
    CHECK(v >= prev);
    prev = v;
  }

  // brute-force 2-d quadrature oracle for mu = delta_{0.5}, p=4, q=2, r=0.5:
  // integrand (1/omega(S_z))^4 W_1(|z|) over the Bergman ball D(0.5, 0.5)
  const DiscreteMeasure mu = DiscreteMeasure::delta(Point::disk(0.5), 1.0);
  ShellGrid grid;
  grid.angular_samples = 512;
  const auto rep = qlessp_statistic(flat, Measure(mu), 4.0, 2.0, 0.5, grid);
  const double rho = std::tanh(0.5);
  const int nr = 1200, nt = 1024;
  std::map<double, double> blocks;
  double oracle = 0.0;
  for (int i = 0; i < nr; ++i) {
    const double rad = (i + 0.5) / nr;
    double block;
    {
      const double t2 = 1.0 - rad;
      block = (2.0 / M_PI) * std::asin(std::min(t2, 2.0) / 2.0) * (1.0 - rad * rad);
    }
    double ang = 0.0;
    for (int j = 0; j < nt; ++j) {
      const double th = 2.0 * M_PI * j / nt;
      const Complex z = std::polar(rad, th);
      const double dist = std::abs(z - 0.5) / std::abs(1.0 - std::conj(z) * 0.5);
      if (dist < rho) ang += 1.0;
    }
    ang /= nt;
    oracle += 2.0 * rad * ang * std::pow(1.0 / block, 4.0) / nr;
  }
  CHECK(rep.headline == doctest::Approx(oracle).epsilon(0.05));
  CHECK(rep.mc_stderr < 0.05 * rep.headline);
}

TEST_CASE("schatten dyadic statistic") {
  WeightTransforms flat(RadialWeight::standard(0.0, 1));
  DyadicPartition part(1, 6, 1);
  DiscreteMeasure empty;
  empty.n = 1;
  CHECK(schatten_dyadic(flat, Measure(empty), part, 1.0).headline == doctest::Approx(0.0));

  // single atom at 0.5: one cell at level 1 with center radius 0.625
  const DiscreteMeasure mu = DiscreteMeasure::delta(Point::disk(0.5), 1.0);
  const auto rep = schatten_dyadic(flat, Measure(mu), part, 1.0);
  CHECK(rep.headline == doctest::Approx(1.0 / star_flat(0.625)).epsilon(1e-10));
  // homogeneity: 2 mu -> 2^p M
  for (double p : {1.0, 1.5, 2.0}) {
    const double m1 = schatten_dyadic(flat, Measure(mu), part, p).headline;
    const double m2 = schatten_dyadic(flat, Measure(mu.scaled(2.0)), part, p).headline;
    CHECK(m2 == doctest::Approx(std::pow(2.0, p) * m1).epsilon(1e-12));
  }
}

TEST_CASE("schatten dyadic flags atoms beyond the deepest shell") {
  WeightTransforms flat(RadialWeight::standard(0.0, 1));
  DyadicPartition part(1, 3, 1);  // max radius 1 - 2^-4 = 0.9375
  const DiscreteMeasure mu = DiscreteMeasure::delta(Point::disk(0.95), 1.0);
  const auto rep = schatten_dyadic(flat, Measure(mu), part, 1.0);
  CHECK(rep.level_overflow);
  CHECK(rep.overflow_term > 0.0);
  CHECK(rep.headline == doctest::Approx(rep.overflow_term));
}

TEST_CASE("schatten integral statistic") {
  WeightTransforms flat(RadialWeight::standard(0.0, 1));
  DiscreteMeasure empty;
  empty.n = 1;
  CHECK(schatten_integral(flat, Measure(empty), 1.0, 0.5).headline == doctest::Approx(0.0));

  const DiscreteMeasure mu = DiscreteMeasure::delta(Point::disk(0.5), 1.0);
  ShellGrid grid;
  grid.angular_samples = 512;
  const auto rep = schatten_integral(flat, Measure(mu), 1.0, 0.5, 0.0, grid);
  // brute-force oracle: integral over D(0.5, 0.5) of dlambda / omega_star
  const double rho = std::tanh(0.5);
  const int nr = 1200, nt = 1024;
  double oracle = 0.0;
  for (int i = 0; i < nr; ++i) {
    const double rad = (i + 0.5) / nr;
    double ang = 0.0;
    for (int j = 0; j < nt; ++j) {
      const double th = 2.0 * M_PI * j / nt;
      const Complex z = std::polar(rad, th);
      const double dist = std::abs(z - 0.5) / std::abs(1.0 - std::conj(z) * 0.5);
      if (dist < rho) ang += 1.0;
    }
    ang /= nt;
    oracle += 2.0 * rad * ang / star_flat(rad) / std::pow(1.0 - rad * rad, 2.0) / nr;
  }
  CHECK(rep.headline == doctest::Approx(oracle).epsilon(0.05));
  // homogeneity
  const double v1 = schatten_integral(flat, Measure(mu), 2.0, 0.5, 0.0, grid).headline;
  const double v2 =
      schatten_integral(flat, Measure(mu.scaled(3.0)), 2.0, 0.5, 0.0, grid).headline;
  CHECK(v2 == doctest::Approx(9.0 * v1).epsilon(1e-12));
}

TEST_CASE("besov statistic") {
  DyadicPartition part(1, 8, 1);
  // constant symbol: zero
  const auto zero = besov_statistic(Polynomial::constant(1, 5.0), part, 2.0);
  CHECK(zero.headline == doctest::Approx(0.0));
  // g = z, p = 2, n = 1: cell sums of |z|^2 dV add to the full integral 1/2
  const auto rep = besov_statistic(Polynomial::parse("z", 1), part, 2.0);
  CHECK(rep.headline == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("besov integral") {
  const Polynomial gz = Polynomial::parse("z", 1);
  // p = 2, n = 1: integral of |z|^2 dV = 1/2, convergent exponent
  const BesovIntegral b2 = besov_integral(gz, 2.0);
  CHECK_FALSE(b2.divergent_exponent);
  CHECK(b2.value == doctest::Approx(0.5).epsilon(1e-9));
  // p = 1 <= n: log-divergent, slope toward 1
  const BesovIntegral b1 = besov_integral(gz, 1.0, 0.999);
  CHECK(b1.divergent_exponent);
  CHECK(b1.trend_slope >= 0.8);
  CHECK(b1.trend_slope <= 1.2);
  // p = 3 > n: convergent for polynomial symbols
  const BesovIntegral b3 = besov_integral(gz, 3.0);
  CHECK(b3.value > 0.0);
  CHECK(b3.trend_slope == doctest::Approx(0.0));
}

TEST_CASE("desk measure family shape") {
  const auto family = desk_measure_family(1);
  CHECK(family.size() == 12);
  for (const auto& mu : family) {
    CHECK(mu.atoms.size() == 1);
    CHECK(mu.atoms[0].mass >= 0.5);
    CHECK(mu.atoms[0].z.norm() <= 0.85 + 1e-12);
  }
}

TEST_CASE("measure JSON parsing") {
  const std::string text =
      R"({"n":2, "atoms":[{"z":[[0.3,0.1],[0.2,-0.4]], "mass":1.5},)"
      R"({"z":[[0.0,0.0],[0.5,0.0]], "mass":0.25}]})";
  const DiscreteMeasure mu = parse_measure_json(text);
  CHECK(mu.n == 2);
  REQUIRE(mu.atoms.size() == 2);
  CHECK(mu.atoms[0].mass == doctest::Approx(1.5));
  CHECK(mu.atoms[0].z.coords()[1] == Complex(0.2, -0.4));
  CHECK(mu.total_mass() == doctest::Approx(1.75));
  CHECK_THROWS_AS(parse_measure_json("{"), Error);
  CHECK_THROWS_AS(parse_measure_json(R"({"n":1,"atoms":[{"z":[[0.5,0]],"mass":-1}]})"), Error);
}

TEST_CASE("report JSON is well-formed and deterministic") {
  WeightTransforms flat(RadialWeight::standard(0.0, 1));
  DyadicPartition part(1, 4, 1);
  const DiscreteMeasure mu = DiscreteMeasure::delta(Point::disk(0.5), 1.0);
  const auto rep = carleson_quotient(flat, Measure(mu), 2.0, 2.0, part);
  const std::string a = report_to_json(rep);
  const std::string b = report_to_json(carleson_quotient(flat, Measure(mu), 2.0, 2.0, part));
  CHECK(a == b);
  CHECK(a.find("\"kind\": \"carleson_quotient\"") != std::string::npos);
  CHECK(a.find("\"headline\"") != std::string::npos);
}
