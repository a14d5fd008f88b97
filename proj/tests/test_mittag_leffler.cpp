#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <vector>

#include "catch_amalgamated.hpp"
#include "sinai/error.hpp"
#include "sinai/mittag_leffler.hpp"
#include "sinai/stats.hpp"

using namespace sinai;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

// Plain series in 50 digits; fine for |x| up to a few dozen.
double ml_series(double alpha, double x, int deriv = 0) {
  Big sum = 0, bx = x;
  for (int n = deriv; n < 400; ++n) {
    Big falling = 1;
    for (int k = 0; k < deriv; ++k) falling *= n - k;
    sum += falling * boost::multiprecision::pow(bx, n - deriv) /
           boost::multiprecision::tgamma(Big(alpha) * n + 1);
  }
  return static_cast<double>(sum);
}

const double kPi2over4 = M_PI * M_PI / 4.0;

}  // namespace

TEST_CASE("closed forms of E_alpha") {
  CHECK_THAT(mlf(1.0, 1.0), WithinAbs(std::exp(1.0), 1e-14));
  CHECK_THAT(mlf(1.0, -3.0), WithinAbs(std::exp(-3.0), 1e-14));
  CHECK_THAT(mlf(2.0, -50.0), WithinAbs(std::cos(std::sqrt(50.0)), 1e-12));
  CHECK_THAT(mlf(2.0, 3.0), WithinRel(std::cosh(std::sqrt(3.0)), 1e-14));
  CHECK(std::abs(mlf(2.0, -kPi2over4)) < 1e-12);
  // E_{1/2}(-x) = exp(x^2) erfc(x)
  for (double x : {0.5, 2.0, 6.0})
    CHECK_THAT(mlf(0.5, -x), WithinAbs(std::exp(x * x) * std::erfc(x), 1e-13));
  for (double a : {0.7, 1.3, 1.9}) CHECK(mlf(MlfQuery{a, 0.0, 0, 1e-14}) == 1.0);
}

TEST_CASE("derivatives") {
  for (double x : {0.3, 1.0, 4.0}) {
    const double s = std::sqrt(x);
    CHECK_THAT(mlf(2.0, x, 1), WithinRel(std::sinh(s) / (2 * s), 1e-13));
    CHECK_THAT(mlf(1.0, -x, 2), WithinRel(std::exp(-x), 1e-13));
  }
  CHECK_THAT(mlf(1.5, 0.0, 1), WithinRel(1.0 / std::tgamma(2.5), 1e-15));
  CHECK_THAT(mlf(1.5, 0.0, 2), WithinRel(2.0 / std::tgamma(4.0), 1e-15));
}

TEST_CASE("agreement with a 50-digit series") {
  for (double a : {1.1, 1.25, 1.5, 1.75})
    for (double x : {-20.0, -8.0, -1.5, 0.5, 6.0})
      for (int d : {0, 1, 2}) {
        const double ref = ml_series(a, x, d);
        INFO("alpha " << a << " x " << x << " d " << d);
        CHECK(std::abs(mlf(a, x, d) - ref) < 1e-12 * std::max(1.0, std::abs(ref)));
      }
}

TEST_CASE("overflow is reported") {
  CHECK_THROWS_AS(mlf(1.0, 1000.0), RangeError);
}

TEST_CASE("roots") {
  CHECK_THAT(rho1(2.0), WithinAbs(kPi2over4, 1e-10));
  CHECK_THAT(rho2(2.0), WithinAbs(kPi2over4, 1e-8));
  CHECK_THAT(rho2(1.5), WithinAbs(0.69707766694689636, 1e-9));
  for (double a : {1.25, 1.5, 1.75}) {
    const double r = rho1(a);
    CHECK(std::abs(mlf(a, -r)) < 1e-10);
    // first zero: no sign change before it
    for (double y = 0.0; y < r; y += r / 200) CHECK(mlf(a, -y) > 0.0);
    const double r2 = rho2(a);
    auto h = [a](double y) { return -a * y * mlf(a, -y, 2) + (a - 1) * mlf(a, -y, 1); };
    CHECK(h(0.999 * r2) * h(1.001 * r2) < 0.0);
    CHECK(r2 < r);
  }
}

TEST_CASE("ksharp for the two sides") {
  CHECK_THAT(ksharp_asymmetric({2.0, Spectral::NoPositiveJumps}), WithinAbs(kPi2over4, 1e-10));
  CHECK_THAT(ksharp_asymmetric({2.0, Spectral::NoNegativeJumps}), WithinAbs(kPi2over4, 1e-8));
  CHECK(ksharp_asymmetric({1.5, Spectral::NoPositiveJumps}) == rho1(1.5));
  CHECK(ksharp_asymmetric({1.5, Spectral::NoNegativeJumps}) == rho2(1.5));
  CHECK_THROWS_AS(ksharp_asymmetric({1.5, Spectral::TwoSidedJumps}), DomainError);
}

TEST_CASE("transforms of tau#") {
  const LimitLawSpec npj{2.0, Spectral::NoPositiveJumps}, nnj{2.0, Spectral::NoNegativeJumps};
  CHECK_THAT(laplace_tau_sharp(npj, 1.0), WithinAbs(1.0 / std::cosh(1.0), 1e-12));
  for (double a : {1.3, 2.0})
    for (auto side : {Spectral::NoPositiveJumps, Spectral::NoNegativeJumps})
      CHECK_THAT(laplace_tau_sharp({a, side}, 0.0), WithinAbs(1.0, 1e-14));
  for (double q : {0.5, 1.0, 2.0})
    CHECK_THAT(laplace_tau_sharp(npj, q), WithinAbs(laplace_tau_sharp(nnj, q), 1e-8));
  // transform is finite down to the pole and blows up there
  const LimitLawSpec s{1.5, Spectral::NoPositiveJumps};
  CHECK(laplace_tau_sharp(s, -0.9 * rho1(1.5)) > 1.0);
  CHECK_THROWS_AS(laplace_tau_sharp(s, -rho1(1.5)), DomainError);
  // decreasing in q
  double prev = 2.0;
  for (double q = 0.0; q < 10.0; q += 0.5) {
    const double v = laplace_tau_sharp({1.5, Spectral::NoNegativeJumps}, q);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("transforms of tau# ^ tau_b") {
  const LimitLawSpec npj{2.0, Spectral::NoPositiveJumps};
  for (double a : {1.2, 1.5, 2.0})
    for (auto side : {Spectral::NoPositiveJumps, Spectral::NoNegativeJumps})
      for (double q : {0.3, 1.0, 4.0})
        CHECK_THAT(laplace_tau_sharp_and_tau_b({a, side}, q, 1.0),
                   WithinAbs(laplace_tau_sharp({a, side}, q), 1e-10));
  CHECK_THAT(laplace_tau_sharp_and_tau_b(npj, 1.0, 0.5),
             WithinAbs(std::cosh(0.5) / std::cosh(1.0), 1e-12));
  CHECK_THAT(laplace_tau_sharp_and_tau_b({1.5, Spectral::NoPositiveJumps}, 1.0, 1e-12),
             WithinAbs(1.0, 1e-8));
}

TEST_CASE("transform of Xi") {
  const LimitLawSpec npj{2.0, Spectral::NoPositiveJumps}, nnj{2.0, Spectral::NoNegativeJumps};
  CHECK_THAT(laplace_xi(npj, 1.0), WithinAbs(std::tanh(1.0), 1e-12));
  for (double q : {0.5, 1.0, 2.0}) {
    CHECK_THAT(laplace_xi(npj, q), WithinAbs(laplace_xi(nnj, q), 1e-8));
    CHECK_THAT(laplace_xi(npj, q), WithinAbs(std::tanh(std::sqrt(q)) / std::sqrt(q), 1e-12));
  }
  for (auto side : {Spectral::NoPositiveJumps, Spectral::NoNegativeJumps}) {
    CHECK_THAT(laplace_xi({1.5, side}, 0.0), WithinAbs(1.0, 1e-14));
    CHECK_THAT(laplace_xi({1.5, side}, 1e-9), WithinAbs(1.0, 1e-6));
  }
}

TEST_CASE("two-sided exit") {
  SECTION("Brownian value") {
    const auto e = exit_two_sided(2.0, 1.0, 0.5);
    // (1/2) E2'(1/4) / E2'(1) with E2'(x) = sinh(sqrt x) / (2 sqrt x)
    CHECK_THAT(e.p_exit_low, WithinAbs(0.5 * std::sinh(0.5) / (std::sinh(1.0) / 2.0), 1e-12));
    CHECK_THAT(e.p_exit_low, WithinAbs(0.443409, 1e-6));
  }
  SECTION("b -> 1") {
    for (double a : {1.3, 1.7, 2.0}) {
      const auto e = exit_two_sided(a, 1.0, 1.0 - 1e-8);
      CHECK(std::abs(e.p_survive) < 1e-6);
      CHECK(std::abs(e.p_exit_low - 1.0) < 1e-6);
    }
  }
  SECTION("q -> 0") {
    for (double b : {0.2, 0.6}) {
      const auto e = exit_two_sided(1.5, 1e-10, b);
      CHECK(std::abs(e.p_survive) < 1e-6);
      CHECK_THAT(e.p_exit_low, WithinAbs(std::pow(b, 0.5), 1e-6));
    }
  }
  SECTION("probabilities") {
    for (double q : {0.1, 1.0, 10.0})
      for (double b : {0.1, 0.5, 0.9}) {
        const auto e = exit_two_sided(1.6, q, b);
        CHECK(e.p_survive >= 0.0);
        CHECK(e.p_exit_low >= 0.0);
        CHECK(e.p_survive + e.p_exit_low <= 1.0 + 1e-12);
      }
  }
  SECTION("the printed survival form differs away from q = 1") {
    const auto c = exit_two_sided(1.5, 2.0, 0.9), p = exit_two_sided(1.5, 2.0, 0.9, ExitForm::Printed);
    CHECK(std::abs(c.p_survive - p.p_survive) > 1e-3);
    CHECK(c.p_exit_low == p.p_exit_low);
  }
}

TEST_CASE("scale function and r1") {
  CHECK(scale_W(2.0, 3.5) == 3.5);
  CHECK_THAT(scale_W(1.5, 4.0), WithinRel(2.0 / std::tgamma(1.5), 1e-15));
  RandomStream r(12);
  const int n = 10000;
  std::vector<double> u(n);
  for (auto& v : u) v = sample_r1({2.0, Spectral::NoPositiveJumps}, r);
  CHECK(ks_pvalue(ks_statistic(u, [](double x) { return std::clamp(x, 0.0, 1.0); }), n) > 0.01);

  const int m = 200000;
  double s = 0, s2 = 0, t = 0;
  for (int i = 0; i < m; ++i) {
    const double x = sample_r1({1.5, Spectral::NoPositiveJumps}, r);
    s += x;
    s2 += x * x;
    t += sample_r1({1.5, Spectral::NoNegativeJumps}, r);
  }
  const double mean = s / m, se = std::sqrt((s2 / m - mean * mean) / m);
  CHECK(std::abs(mean - 1.0 / 3.0) < 3.0 * se);
  CHECK(std::abs(t / m - 2.0 / 3.0) < 3.0 * se);
}
