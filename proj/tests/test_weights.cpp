#include "doctest.h"
#include "rng.hpp"
#include "weights.hpp"

#include <cmath>

using namespace bergman;

namespace {

double expint_e1_one() {
  const double gamma = 0.57721566490153286;
  double sum = 0.0, term = 1.0;
  for (int k = 1; k < 40; ++k) {
    term *= -1.0 / k;
    sum += -term / k;
  }
  return -gamma + sum;
}

// closed-form omega_star for omega == 1: (r^2-1)/4 - log(r)/2
double star_const_weight(double r) { return (r * r - 1.0) / 4.0 - std::log(r) / 2.0; }

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

}  // namespace

TEST_CASE("omega_hat oracles") {
  WeightTransforms flat(RadialWeight::standard(0.0, 1));
  CHECK(flat.omega_hat(0.75) == doctest::Approx(0.25).epsilon(1e-12));

  WeightTransforms pow2(RadialWeight::power_gap(2.0, 1));
  CHECK(pow2.omega_hat(0.5) == doctest::Approx(std::pow(0.5, 3) / 3.0).epsilon(1e-11));

  WeightTransforms expw(RadialWeight::expdecay(1.0, 1));
  CHECK(expw.omega_hat(0.0) ==
        doctest::Approx(std::exp(-1.0) - expint_e1_one()).epsilon(1e-9));

  // logpow closed form: omega_hat(r) = (1 - log(1-r))^(1-beta) / (beta-1).
  // The weight keeps ~0.14% of its mass at gaps below every positive double,
  // which no pointwise rule can see; that sliver is a fixed offset, so
  // differences of omega_hat match the closed form to full precision.
  WeightTransforms lp(RadialWeight::logpow(2.0, 1));
  auto closed = [](double r) { return 1.0 / (1.0 - std::log(1.0 - r)); };
  const double unresolvable = 1.0 / (1.0 - std::log(1e-300));
  for (double r : {0.0, 0.5, 0.9, 0.99}) {
    CHECK(lp.omega_hat(r) == doctest::Approx(closed(r)).epsilon(7e-3));
    CHECK(lp.omega_hat(r) - lp.omega_hat(0.995) ==
          doctest::Approx(closed(r) - closed(0.995)).epsilon(1e-10));
    CHECK(std::abs(lp.omega_hat(r) - closed(r)) <= 1.05 * unresolvable);
  }
}

TEST_CASE("moments") {
  WeightTransforms flat(RadialWeight::standard(0.0, 1));
  CHECK(flat.moment(1.0) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(flat.moment(3.0) == doctest::Approx(0.25).epsilon(1e-13));

  WeightTransforms std1(RadialWeight::standard(1.0, 1));
  CHECK(std1.moment(3.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("beta-moment identity for standard weights") {
  for (double alpha : {0.0, 1.0, 2.5}) {
    WeightTransforms w(RadialWeight::standard(alpha, 1));
    const double c_alpha = std::exp(std::lgamma(2.0 + alpha) - std::lgamma(2.0) -
                                    std::lgamma(alpha + 1.0));
    for (int k = 0; k <= 64; k += 8) {
      const double expected = c_alpha * std::exp(log_beta(k + 1.0, alpha + 1.0)) / 2.0;
      CHECK(w.moment(2.0 * k + 1.0) == doctest::Approx(expected).epsilon(1e-10));
    }
  }
}

TEST_CASE("omega_star family") {
  WeightTransforms flat(RadialWeight::standard(0.0, 1));
  CHECK(flat.omega_star(0.5) == doctest::Approx(0.1590735).epsilon(1e-6));
  CHECK(flat.omega_star(0.5) == doctest::Approx(star_const_weight(0.5)).epsilon(1e-11));
  CHECK(flat.w1(0.75) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(flat.w_alpha(0.0, 0.5) ==
        doctest::Approx(star_const_weight(0.5) / 0.25).epsilon(1e-10));
  CHECK_THROWS_AS(flat.omega_star(0.0), Error);
  CHECK_THROWS_AS(flat.w_alpha(0.0, 0.0), Error);
  // n = 1: omega_nstar coincides with omega_star
  CHECK(flat.omega_nstar(0.3) == doctest::Approx(flat.omega_star(0.3)).epsilon(1e-12));
}

TEST_CASE("omega_hat is monotone") {
  WeightTransforms lp(RadialWeight::logpow(2.0, 1));
  Rng rng(99);
  for (int i = 0; i < 200; ++i) {
    double a = 0.999 * rng.uniform();
    double b = 0.999 * rng.uniform();
    if (a > b) std::swap(a, b);
    CHECK(lp.omega_hat(a) >= lp.omega_hat(b));
  }
  const auto& grid = lp.grid_omega_hat();
  for (size_t j = 1; j < grid.size(); ++j) CHECK(grid[j] <= grid[j - 1]);
  CHECK(grid.back() < grid.front());
}

TEST_CASE("moment identity for omega_nstar (exact space identity backbone)") {
  // integral of t^(2k-1) omega_nstar(t) dt = omega_{2n+2k-1} / (4 k^2)
  for (int n : {1, 2}) {
    for (const char* spec : {"std:alpha=0", "std:alpha=1", "logpow:beta=2"}) {
      WeightTransforms w(RadialWeight::parse(spec, n));
      for (long k : {1L, 2L, 7L, 33L, 128L}) {
        const double lhs = w.w_alpha_moment(0.0, k);
        const double rhs = w.moment(2.0 * n + 2.0 * k - 1.0) / (4.0 * k * k);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("classification of the exact power family") {
  WeightTransforms w(RadialWeight::power_gap(2.0, 1));
  ClassifyConfig cc;
  cc.grid_size = 128;
  const ClassReport rep = classify(w, cc);
  CHECK(rep.doubling_constant == doctest::Approx(8.0).epsilon(1e-9));
  CHECK(rep.in_dhat);
  CHECK(rep.in_dcheck);
  CHECK(rep.in_r);
  CHECK_FALSE(rep.in_i);
}

TEST_CASE("flat weight is regular with unit band") {
  WeightTransforms w(RadialWeight::standard(0.0, 1));
  ClassifyConfig cc;
  cc.grid_size = 64;
  const ClassReport rep = classify(w, cc);
  CHECK(rep.regular_band.lo == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rep.regular_band.hi == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rep.in_r);
}

TEST_CASE("exponential weight is not doubling") {
  WeightTransforms w(RadialWeight::expdecay(1.0, 1));
  CHECK(doubling_ratio(w, 0.99) > 1e4);
  ClassifyConfig cc;
  cc.grid_size = 64;
  const ClassReport rep = classify(w, cc);
  CHECK_FALSE(rep.in_dhat);
  CHECK_FALSE(rep.in_i);
  CHECK_FALSE(rep.in_r);
}

TEST_CASE("logpow is rapidly increasing, not regular") {
  WeightTransforms w(RadialWeight::logpow(2.0, 1));
  ClassifyConfig cc;
  cc.grid_size = 64;
  const ClassReport rep = classify(w, cc);
  CHECK(rep.in_i);
  CHECK_FALSE(rep.in_r);
  CHECK(rep.in_dhat);
}

TEST_CASE("lemma bands are finite and modest for the registered families") {
  for (const char* spec : {"std:alpha=0", "std:alpha=1", "logpow:beta=2"}) {
    WeightTransforms w(RadialWeight::parse(spec, 1));
    const Band mb = moment_tail_band(w);
    const Band sb = star_tail_band(w);
    CHECK(mb.two_sided() < 20.0);
    CHECK(sb.two_sided() < 20.0);
  }
}

TEST_CASE("interpolated omega_hat tracks the exact values") {
  // profile-quality path: percent-level on the coarse inner grid is fine
  WeightTransforms w(RadialWeight::standard(1.0, 1));
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    const double r = 0.995 * rng.uniform();
    const double exact = w.omega_hat(r);
    CHECK(w.omega_hat_approx(r) == doctest::Approx(exact).epsilon(1e-2));
  }
}

TEST_CASE("weight spec parsing") {
  CHECK(RadialWeight::parse("std:alpha=2", 1).family == RadialWeight::Family::Standard);
  CHECK(RadialWeight::parse("pow:alpha=1.5", 1).param == doctest::Approx(1.5));
  CHECK(RadialWeight::parse("logpow:beta=2", 1).family == RadialWeight::Family::LogPow);
  CHECK(RadialWeight::parse("exp:c=0.5", 2).n == 2);
  CHECK_THROWS_AS(RadialWeight::parse("bogus:alpha=1", 1), Error);
  CHECK_THROWS_AS(RadialWeight::parse("std:beta=1", 1), Error);
  CHECK_THROWS_AS(RadialWeight::parse("std", 1), Error);
  CHECK_THROWS_AS(RadialWeight::logpow(1.0, 1), Error);     // beta > 1 required
  CHECK_THROWS_AS(RadialWeight::standard(-1.0, 1), Error);  // alpha > -1 required
}

TEST_CASE("tabulated weights") {
  std::vector<std::pair<double, double>> rows = {{0.0, 1.0}, {0.5, 0.5}, {0.9, 0.1}};
  const RadialWeight w = RadialWeight::tabulated(rows, 1);
  CHECK(w.density(0.25) == doctest::Approx(0.75));
  CHECK(w.density(0.95) == doctest::Approx(0.1));  // clamped beyond the last row
  WeightTransforms wt(w);
  CHECK(wt.omega_hat(0.0) > 0.0);
  rows.push_back({0.95, -0.2});
  CHECK_THROWS_AS(RadialWeight::tabulated(rows, 1), Error);
}

TEST_CASE("standard weight normalization") {
  // c_alpha (1-r^2)^alpha has unit mass against the ball volume measure
  for (int n : {1, 2}) {
    for (double alpha : {0.0, 1.0, 2.5}) {
      WeightTransforms w(RadialWeight::standard(alpha, n));
      CHECK(w.omega_ball() == doctest::Approx(1.0).epsilon(1e-11));
    }
  }
}
