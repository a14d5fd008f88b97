#include <cmath>
#include <vector>

#include "catch_amalgamated.hpp"
#include "sinai/error.hpp"
#include "sinai/laplace_inversion.hpp"
#include "sinai/mittag_leffler.hpp"

using namespace sinai;
using Catch::Matchers::WithinAbs;

TEST_CASE("unit exponential") {
  const std::vector<double> t{0.25, 1.0, 3.0};
  const auto f = invert_laplace_cdf([](double q) { return 1.0 / (1.0 + q); }, t);
  REQUIRE(f.size() == t.size());
  for (std::size_t i = 0; i < t.size(); ++i) CHECK_THAT(f[i], WithinAbs(1.0 - std::exp(-t[i]), t[i] <= 1.0 ? 1e-6 : 1e-5));
}

TEST_CASE("gamma(2) and a point mass at 2") {
  const std::vector<double> t{0.5, 1.0, 2.5};
  const auto f = invert_laplace_cdf([](double q) { return 1.0 / ((1.0 + q) * (1.0 + q)); }, t);
  for (std::size_t i = 0; i < t.size(); ++i)
    CHECK_THAT(f[i], WithinAbs(1.0 - std::exp(-t[i]) * (1.0 + t[i]), 1e-5));
  const auto one = invert_laplace_cdf([](double) { return 1.0; }, {0.1, 1.0, 10.0});
  for (double v : one) CHECK_THAT(v, WithinAbs(1.0, 1e-9));
}

TEST_CASE("Stehfest weights sum to zero") {
  for (int n : {8, 12, 16}) {
    const auto w = stehfest_weights(n);
    REQUIRE(w.size() == static_cast<std::size_t>(n + 1));
    long double s = 0;
    for (int k = 1; k <= n; ++k) s += w[k];
    CHECK(std::abs(static_cast<double>(s)) < 1e-6);
  }
  CHECK_THROWS_AS(stehfest_weights(7), DomainError);
  CHECK_THROWS_AS(stehfest_weights(20), DomainError);
}

TEST_CASE("Xi distribution function is a CDF") {
  std::vector<double> t;
  for (double s = 0.05; s < 6.0; s += 0.05) t.push_back(s);
  for (const LimitLawSpec spec : {LimitLawSpec{2.0, Spectral::NoPositiveJumps},
                                  LimitLawSpec{1.5, Spectral::NoNegativeJumps}}) {
    const auto r = invert_laplace_cdf_checked([&](double q) { return laplace_xi(spec, q); }, t);
    CHECK(r.max_divergence <= 1e-3);
    for (std::size_t i = 0; i < t.size(); ++i) {
      CHECK(r.cdf[i] >= 0.0);
      CHECK(r.cdf[i] <= 1.0);
      if (i > 0) CHECK(r.cdf[i] >= r.cdf[i - 1] - 1e-9);
    }
    CHECK(r.cdf.back() > 0.95);
  }
}

TEST_CASE("unstable inversions are reported") {
  // a point mass at 1 is the classic failure case for Gaver-Stehfest
  try {
    (void)invert_laplace_cdf_checked([](double q) { return std::exp(-q); }, {0.9, 1.1});
    FAIL("expected InversionUnstable");
  } catch (const InversionUnstable& e) {
    CHECK(e.divergence() > 1e-3);
  }
}
