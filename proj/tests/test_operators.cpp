#include "doctest.h"
#include "operators.hpp"
#include "rng.hpp"

#include <cmath>

using namespace bergman;

namespace {

std::shared_ptr<OrthoBasis> a2_basis(const WeightTransforms& w, int deg) {
  return std::make_shared<OrthoBasis>(OrthoBasis::a2(w, deg));
}

}  // namespace

TEST_CASE("identity measure gives the identity section") {
  for (const char* spec : {"std:alpha=0", "std:alpha=1", "logpow:beta=2"}) {
    WeightTransforms w(RadialWeight::parse(spec, 1));
    const OperatorSection sec = toeplitz_section(a2_basis(w, 32), w, identity_measure(w));
    double worst = 0.0;
    for (int i = 0; i < sec.dim(); ++i)
      for (int j = 0; j < sec.dim(); ++j)
        worst = std::max(worst, std::abs(sec.entry(i, j) - (i == j ? 1.0 : 0.0)));
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("density section with a polynomial factor stays Hermitian PSD") {
  WeightTransforms w(RadialWeight::standard(0.0, 2));
  RadialDensityMeasure d;
  d.n = 2;
  const RadialWeight wt = w.weight();
  d.phi = [wt](double, double gap) { return wt.density_gap(gap); };
  d.poly = Polynomial::parse("z1*z2 + 1", 2);
  const OperatorSection sec = toeplitz_section(a2_basis(w, 4), w, Measure(d));
  const Spectrum s = sec.spectrum();
  CHECK(s.eigenvalues.back() >= -1e-10 * std::abs(s.eigenvalues.front()));
}

TEST_CASE("atom at the origin") {
  WeightTransforms flat(RadialWeight::standard(0.0, 1));
  const DiscreteMeasure mu = DiscreteMeasure::delta(Point::disk(0.0), 1.0);
  const OperatorSection sec = toeplitz_section(a2_basis(flat, 16), flat, Measure(mu));
  double offdiag = 0.0;
  for (int i = 0; i < sec.dim(); ++i)
    for (int j = 0; j < sec.dim(); ++j)
      if (i || j) offdiag = std::max(offdiag, std::abs(sec.entry(i, j)));
  CHECK(sec.entry(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(offdiag == 0.0);
}

TEST_CASE("rank-one section: top eigenvalue is the truncated diagonal kernel") {
  WeightTransforms flat(RadialWeight::standard(0.0, 1));
  auto basis = a2_basis(flat, 64);
  const DiscreteMeasure mu = DiscreteMeasure::delta(Point::disk(0.5), 1.0);
  const Spectrum s = toeplitz_section(basis, flat, Measure(mu)).spectrum();
  double expect = 0.0;  // sum over k <= 64 of |e_k(0.5)|^2 = (k+1) 0.25^k
  for (int k = 0; k <= 64; ++k) expect += (k + 1.0) * std::pow(0.25, k);
  CHECK(s.eigenvalues.front() == doctest::Approx(expect).epsilon(1e-12));
  CHECK(s.eigenvalues.front() == doctest::Approx(16.0 / 9.0).epsilon(1e-9));
  for (size_t i = 1; i < s.eigenvalues.size(); ++i)
    CHECK(std::abs(s.eigenvalues[i]) <= 1e-10);
}

TEST_CASE("Gram exactness for discrete measures") {
  WeightTransforms w(RadialWeight::standard(1.0, 1));
  auto basis = a2_basis(w, 12);
  DiscreteMeasure mu;
  mu.n = 1;
  Rng rng(3);
  for (int i = 0; i < 5; ++i)
    mu.atoms.push_back({sample_ball_point(1, 0.9, rng), 0.25 + rng.uniform()});
  const OperatorSection sec = toeplitz_section(basis, w, Measure(mu));
  for (int a = 0; a < sec.dim(); ++a) {
    for (int b = 0; b < sec.dim(); ++b) {
      Complex direct(0.0, 0.0);
      for (const auto& atom : mu.atoms)
        direct += atom.mass * std::conj(basis->eval_normalized(a, atom.z)) *
                  basis->eval_normalized(b, atom.z);
      CHECK(std::abs(sec.entry(a, b) - direct) == 0.0);  // identical arithmetic path
    }
  }
  const Spectrum s = sec.spectrum();
  CHECK(s.eigenvalues.back() >= -1e-10 * s.eigenvalues.front());
  // homogeneity: scaling the measure scales the section
  const OperatorSection sec2 = toeplitz_section(basis, w, Measure(mu.scaled(2.0)));
  CHECK(std::abs(sec2.entry(3, 5) - 2.0 * sec.entry(3, 5)) < 1e-15);
}

TEST_CASE("empty measure gives the zero section") {
  WeightTransforms flat(RadialWeight::standard(0.0, 1));
  DiscreteMeasure mu;
  mu.n = 1;
  const OperatorSection sec = toeplitz_section(a2_basis(flat, 8), flat, Measure(mu));
  for (int i = 0; i < sec.dim(); ++i)
    for (int j = 0; j < sec.dim(); ++j) CHECK(std::abs(sec.entry(i, j)) == 0.0);
}

TEST_CASE("H-Toeplitz section at alpha = 0 matches the A2 section") {
  for (const char* spec : {"std:alpha=0", "logpow:beta=2"}) {
    WeightTransforms w(RadialWeight::parse(spec, 1));
    DiscreteMeasure mu;
    mu.n = 1;
    Rng rng(9);
    for (int i = 0; i < 3; ++i)
      mu.atoms.push_back({sample_ball_point(1, 0.8, rng), 1.0 + rng.uniform()});
    const OperatorSection ta = toeplitz_section(a2_basis(w, 24), w, Measure(mu));
    auto hb = std::make_shared<OrthoBasis>(OrthoBasis::hw(w, 0.0, 24));
    const OperatorSection th = htoeplitz_section(hb, w, Measure(mu));
    double worst = 0.0;
    for (int i = 0; i < ta.dim(); ++i)
      for (int j = 0; j < ta.dim(); ++j)
        worst = std::max(worst, std::abs(ta.entry(i, j) - th.entry(i, j)));
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("volterra section entries") {
  WeightTransforms flat(RadialWeight::standard(0.0, 1));
  auto basis = a2_basis(flat, 16);
  const OperatorSection sec = volterra_section(basis, Polynomial::parse("z", 1));
  // <T_g e_0, e_1> = ||z||/||1|| = sqrt(1/2)
  CHECK(sec.entry(1, 0).real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-13));
  CHECK(sec.truncated_tail());  // top-degree column spills over
  const OperatorSection zero = volterra_section(basis, Polynomial::constant(1, 3.0));
  for (int i = 0; i < zero.dim(); ++i)
    for (int j = 0; j < zero.dim(); ++j) CHECK(std::abs(zero.entry(i, j)) == 0.0);
}

TEST_CASE("volterra singular values decay like 1/k for g = z") {
  WeightTransforms flat(RadialWeight::standard(0.0, 1));
  auto basis = a2_basis(flat, 200);
  const Spectrum s = volterra_section(basis, Polynomial::parse("z", 1)).spectrum();
  // exact bidiagonal oracle: sigma_k = (1/(k+1)) ||z^(k+1)||/||z^k||
  for (int k : {10, 50, 100}) {
    const double oracle = std::sqrt((k + 1.0) / (k + 2.0)) / (k + 1.0);
    CHECK(s.eigenvalues[k] == doctest::Approx(oracle).epsilon(1e-9));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (int k = 10; k <= 100; ++k) {
    const double lx = std::log(double(k)), ly = std::log(s.eigenvalues[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++cnt;
  }
  const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  CHECK(slope == doctest::Approx(-1.0).epsilon(0.1));
}

TEST_CASE("volterra factorization against the defect measure") {
  WeightTransforms w(RadialWeight::standard(0.0, 1));
  auto basis = a2_basis(w, 32);
  const Polynomial g = Polynomial::parse("z^2", 1);
  const OperatorSection tg = volterra_section(basis, g);
  const OperatorSection tmu = toeplitz_section(basis, w, volterra_defect_measure(w, g));
  const int cap = 32 - g.degree();
  double worst = 0.0;
  for (int a = 0; a < tg.dim(); ++a) {
    for (int b = 0; b < tg.dim(); ++b) {
      if (basis->index(a).degree() + basis->index(b).degree() > cap) continue;
      Complex prod(0.0, 0.0);
      for (int k = 0; k < tg.dim(); ++k) prod += std::conj(tg.entry(k, a)) * tg.entry(k, b);
      worst = std::max(worst, std::abs(prod - tmu.entry(a, b)));
    }
  }
  CHECK(worst <= 1e-7);
}

TEST_CASE("berezin transform of a point mass") {
  WeightTransforms flat(RadialWeight::standard(0.0, 1));
  const KernelSeries ks = KernelSeries::bergman(flat);
  const DiscreteMeasure mu = DiscreteMeasure::delta(Point::disk(0.0), 1.0);
  CHECK(berezin(ks, mu, Point::disk(0.0)) == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(berezin(ks, mu, Point::disk(0.5)) == doctest::Approx(0.5625).epsilon(1e-11));
  for (double rad : {0.2, 0.7, 0.9}) {
    CHECK(berezin(ks, mu, Point::disk(rad)) ==
          doctest::Approx(std::pow(1.0 - rad * rad, 2.0)).epsilon(1e-10));
  }
}

TEST_CASE("berezin series form agrees with the matrix form") {
  WeightTransforms w(RadialWeight::standard(1.0, 1));
  const KernelSeries ks = KernelSeries::bergman(w);
  auto basis = a2_basis(w, 96);
  DiscreteMeasure mu;
  mu.n = 1;
  Rng rng(41);
  for (int i = 0; i < 4; ++i)
    mu.atoms.push_back({sample_ball_point(1, 0.85, rng), 0.5 + rng.uniform()});
  // identity operator first: the quadratic form of M = I is exactly 1
  {
    const OperatorSection id_sec = toeplitz_section(basis, w, identity_measure(w));
    const Point z = Point::disk(0.6);
    std::vector<Complex> bz(basis->size());
    double nrm2 = 0.0;
    for (size_t i = 0; i < basis->size(); ++i) {
      bz[i] = std::conj(basis->eval_normalized(i, z));
      nrm2 += std::norm(bz[i]);
    }
    Complex quad(0.0, 0.0);
    for (size_t a = 0; a < basis->size(); ++a)
      for (size_t b = 0; b < basis->size(); ++b)
        quad += std::conj(bz[a]) * id_sec.entry(int(a), int(b)) * bz[b];
    CHECK(quad.real() / nrm2 == doctest::Approx(1.0).epsilon(1e-8));
  }
  const OperatorSection sec = toeplitz_section(basis, w, Measure(mu));
  for (double rad : {0.0, 0.3, 0.6, 0.9}) {
    const Point z = Point::disk(rad);
    std::vector<Complex> bz(basis->size());
    double nrm2 = 0.0;
    for (size_t i = 0; i < basis->size(); ++i) {
      bz[i] = std::conj(basis->eval_normalized(i, z));
      nrm2 += std::norm(bz[i]);
    }
    Complex quad(0.0, 0.0);
    for (size_t a = 0; a < basis->size(); ++a)
      for (size_t b = 0; b < basis->size(); ++b)
        quad += std::conj(bz[a]) * sec.entry(int(a), int(b)) * bz[b];
    const double matrix_form = quad.real() / nrm2;
    CHECK(berezin(ks, mu, z) == doctest::Approx(matrix_form).epsilon(1e-6));
  }
}

TEST_CASE("section eigenvalues interlace under degree growth") {
  WeightTransforms w(RadialWeight::standard(0.0, 1));
  DiscreteMeasure mu;
  mu.n = 1;
  Rng rng(55);
  for (int i = 0; i < 6; ++i)
    mu.atoms.push_back({sample_ball_point(1, 0.9, rng), 0.5 + rng.uniform()});
  const Spectrum s16 = toeplitz_section(a2_basis(w, 16), w, Measure(mu)).spectrum();
  const Spectrum s32 = toeplitz_section(a2_basis(w, 32), w, Measure(mu)).spectrum();
  for (size_t k = 0; k < s16.eigenvalues.size(); ++k)
    CHECK(s16.eigenvalues[k] <= s32.eigenvalues[k] + 1e-10);
}

TEST_CASE("schatten sums of sections") {
  WeightTransforms flat(RadialWeight::standard(0.0, 1));
  // identity section of dimension 10: |T|_1 = 10
  const OperatorSection sec = toeplitz_section(a2_basis(flat, 9), flat, identity_measure(flat));
  CHECK(sec.schatten_pow(1.0) == doctest::Approx(10.0).epsilon(1e-9));
  // rank-one: |T|_p = lambda_max for every p
  const DiscreteMeasure mu = DiscreteMeasure::delta(Point::disk(0.5), 1.0);
  const OperatorSection rank1 = toeplitz_section(a2_basis(flat, 24), flat, Measure(mu));
  const double lmax = rank1.spectrum().eigenvalues.front();
  // p < 1 amplifies eigenvalue noise (1e-16 -> 1e-8 per mode), hence the
  // looser tolerance there
  CHECK(rank1.schatten_pow(0.5) == doctest::Approx(std::sqrt(lmax)).epsilon(1e-6));
  for (double p : {1.0, 2.0})
    CHECK(rank1.schatten_pow(p) == doctest::Approx(std::pow(lmax, p)).epsilon(1e-9));
}

TEST_CASE("dimension and mass guards") {
  WeightTransforms flat(RadialWeight::standard(0.0, 1));
  DiscreteMeasure mu = DiscreteMeasure::delta(Point::disk(0.5), 1.0);
  mu.atoms[0].mass = 2e12;
  CHECK_THROWS_AS(toeplitz_section(a2_basis(flat, 4), flat, Measure(mu)), Error);
  CHECK_THROWS_AS(DiscreteMeasure::delta(Point::disk(0.999), 1.0), Error);  // atom cap
}
