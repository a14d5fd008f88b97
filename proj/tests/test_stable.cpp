#include <cmath>
#include <complex>
#include <vector>

#include "catch_amalgamated.hpp"
#include "sinai/error.hpp"
#include "sinai/stable.hpp"
#include "sinai/stats.hpp"

using namespace sinai;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("cf_stable closed values") {
  CHECK_THAT(std::real(cf_stable(StableLaw::gaussian(), 1.0)), WithinAbs(std::exp(-1.0), 1e-15));
  CHECK_THAT(std::real(cf_stable(StableLaw::symmetric(1.0), 2.0)), WithinAbs(std::exp(-2.0), 1e-15));
  CHECK(std::abs(cf_stable(StableLaw::make(1.5, 0.4), 0.0) - 1.0) < 1e-15);
}

TEST_CASE("cf_stable modulus, conjugate symmetry") {
  for (const auto& law : {StableLaw::make(1.5, 0.4), StableLaw::make(0.7, 0.3),
                          StableLaw::one_sided(1.3, Spectral::NoPositiveJumps),
                          StableLaw::symmetric(1.0, 2.0)}) {
    for (double l : {0.1, 0.5, 1.0, 3.0}) {
      const auto a = cf_stable(law, l), b = cf_stable(law, -l);
      CHECK(std::abs(a) <= 1.0 + 1e-15);
      CHECK(std::abs(a - std::conj(b)) < 1e-14);
    }
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(StableLaw::make(1.0, 0.3), UnsupportedParameterization);
  CHECK_THROWS_AS(StableLaw::make(2.5, 0.5), DomainError);
  CHECK_THROWS_AS(StableLaw::make(1.5, 0.8), DomainError);  // alpha p > 1
  CHECK_THROWS_AS(StableLaw::make(2.0, 0.4), DomainError);
  CHECK(StableLaw::make(1.5, 1.0 / 1.5).spectral() == Spectral::NoPositiveJumps);
  CHECK(StableLaw::make(1.5, 1.0 - 1.0 / 1.5).spectral() == Spectral::NoNegativeJumps);
  CHECK(StableLaw::make(2.0, 0.5).spectral() == Spectral::Gaussian);
  CHECK(spectral_from_string("npj") == Spectral::NoPositiveJumps);
  CHECK(spectral_from_string("no_negative_jumps") == Spectral::NoNegativeJumps);
  CHECK_THROWS_AS(spectral_from_string("sideways"), DomainError);
}

TEST_CASE("Gaussian variates have variance 2 gamma") {
  RandomStream r(1);
  const int n = 1000000;
  double s = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    const double x = sample_stable(StableLaw::gaussian(), r);
    s += x;
    s2 += x * x;
  }
  const double mean = s / n, var = s2 / n - mean * mean;
  CHECK(std::abs(mean) < 3.0 * std::sqrt(2.0 / n));
  // var of the sample variance of N(0, 2) is 2 * 2^2 / n
  CHECK(std::abs(var - 2.0) < 3.0 * std::sqrt(8.0 / n));
}

TEST_CASE("one-sided exponential moments") {
  RandomStream r(2);
  const int n = 1000000;
  SECTION("no negative jumps: E exp(-S) = e") {
    const auto law = StableLaw::one_sided(1.5, Spectral::NoNegativeJumps);
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
      const double y = std::exp(-sample_stable(law, r));
      s += y;
      s2 += y * y;
    }
    const double m = s / n, se = std::sqrt((s2 / n - m * m) / n);
    CHECK(std::abs(m - std::exp(1.0)) < 3.0 * se);
  }
  SECTION("no positive jumps: E exp(S / 2) = exp(2^-alpha)") {
    const double a = 1.7;
    const auto law = StableLaw::one_sided(a, Spectral::NoPositiveJumps);
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
      const double y = std::exp(0.5 * sample_stable(law, r));
      s += y;
      s2 += y * y;
    }
    const double m = s / n, se = std::sqrt((s2 / n - m * m) / n);
    CHECK(std::abs(m - std::exp(std::pow(0.5, a))) < 3.0 * se);
  }
}

TEST_CASE("empirical characteristic function and positivity") {
  RandomStream r(3);
  const int n = 100000;
  for (const auto& law : {StableLaw::make(1.5, 0.4), StableLaw::make(0.7, 0.3),
                          StableLaw::make(1.2, 0.55), StableLaw::symmetric(1.0),
                          StableLaw::one_sided(1.5, Spectral::NoNegativeJumps),
                          StableLaw::one_sided(1.5, Spectral::NoPositiveJumps)}) {
    std::vector<double> x(n);
    for (auto& v : x) v = sample_stable(law, r);
    for (double l : {0.5, 1.0, 2.0}) {
      std::complex<double> e = 0.0;
      for (double v : x) e += std::exp(std::complex<double>(0.0, l * v));
      e /= static_cast<double>(n);
      INFO(law.describe() << " lambda=" << l);
      CHECK(std::abs(e - cf_stable(law, l)) < 4.0 / std::sqrt(n));
    }
    double pos = 0;
    for (double v : x) pos += v > 0.0;
    INFO(law.describe());
    CHECK(std::abs(pos / n - law.p()) < 4.0 * std::sqrt(law.p() * law.q() / n));
  }
}

TEST_CASE("path scaling: S_t / t^(1/alpha) has the law of S_1") {
  RandomStream r(4);
  const auto law = StableLaw::make(1.5, 0.45);
  const int n = 10000;
  const double t = 8.0;
  std::vector<double> scaled(n), unit(n);
  for (int i = 0; i < n; ++i) {
    const CadlagGrid g = sample_stable_path(law, t, 16, r);
    scaled[i] = g.value_at(t) / std::pow(t, 1.0 / law.alpha());
    unit[i] = sample_stable(law, r);
  }
  const double d = ks_two_sample(scaled, unit);
  CHECK(ks_pvalue(d, n / 2.0) > 0.01);
}

TEST_CASE("grid path basics") {
  RandomStream r(5);
  const CadlagGrid one = sample_stable_path(StableLaw::gaussian(), 1.0, 1, r);
  CHECK(one.size() == 2);
  CHECK(one.value_at(0.0) == 0.0);

  const int steps = 10000;
  const CadlagGrid g = sample_stable_path(StableLaw::gaussian(), 3.0, steps, r);
  double qv = 0.0;
  const auto v = g.values();
  for (std::size_t i = 1; i < v.size(); ++i) qv += (v[i] - v[i - 1]) * (v[i] - v[i - 1]);
  // quadratic variation 2 * horizon, relative sd sqrt(2 / steps)
  CHECK_THAT(qv, WithinRel(6.0, 4.0 * std::sqrt(2.0 / steps)));
}

TEST_CASE("norming functions") {
  const auto nf = NormingFunctions::power(2.0, 0.5);
  CHECK_THAT(nf.a_inv(3.0), WithinRel(9.0, 1e-15));
  CHECK_THAT(nf.b_inv(16.0), WithinRel(4.0, 1e-15));
  CHECK_THAT(nf.a(nf.a_inv(7.0)), WithinRel(7.0, 1e-14));
  CHECK_THROWS_AS(nf.a(0.5), DomainError);
  CHECK_THROWS_AS(norming_eval(nf, Norming::BInv, 0.0), DomainError);
  for (double a : {1.1, 1.5, 1.9})
    for (double x = 1.0; x <= 1e12; x *= 17.0) {
      const auto f = NormingFunctions::power(a, 1.0 / a);
      CHECK_THAT(f.a_inv(f.a(x)), WithinRel(x, 1e-12));
      CHECK_THAT(f.b_inv(f.b(x)), WithinRel(x, 1e-12));
    }
  CHECK_THROWS_AS(NormingFunctions([](double x) { return 2 * x; }, [](double x) { return x / 2; },
                                   [](double x) { return x; }, [](double x) { return x; }),
                  DomainError);
}
