#include <algorithm>
#include <cmath>
#include <vector>

#include "catch_amalgamated.hpp"
#include "sinai/environment.hpp"
#include "sinai/error.hpp"
#include "sinai/stats.hpp"

using namespace sinai;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("two-point model with omega 1/2 is flat") {
  const Environment env = build_environment(StepModel::two_point(0.5, 0.5, 0.3), 50, 9);
  for (double s : env.steps_pos()) CHECK(s == 0.0);
  for (double s : env.steps_neg()) CHECK(s == 0.0);
}

TEST_CASE("half_length fixes both sides") {
  const Environment env = build_environment(StepModel::gaussian(), 3, 1);
  CHECK(env.steps_pos().size() == 3);
  CHECK(env.steps_neg().size() == 3);
  CHECK(env.potential_pos().size() == 4);
  CHECK(env.potential_neg().size() == 4);
  CHECK(env.site(0) == 0.0);
  CHECK_THROWS_AS(env.site(4), RangeError);
  CHECK_THROWS_AS(env.site(-4), RangeError);
}

TEST_CASE("same seed, same environment; longer builds extend the prefix") {
  const auto m = StepModel::pareto(1.5, 0.3);
  const Environment a = build_environment(m, 100, 77), b = build_environment(m, 100, 77);
  const Environment c = build_environment(m, 400, 77);
  CHECK(std::ranges::equal(a.steps_pos(), b.steps_pos()));
  CHECK(std::ranges::equal(a.steps_pos(), c.steps_pos().first(100)));
  CHECK(std::ranges::equal(a.steps_neg(), c.steps_neg().first(100)));
  const Environment d = build_environment(m, 100, 78);
  CHECK_FALSE(std::ranges::equal(a.steps_pos(), d.steps_pos()));
}

TEST_CASE("Gaussian potential: V_n / sqrt(2n) is standard normal") {
  const std::size_t n = 10000;
  std::vector<double> right, left;
  for (std::uint64_t seed = 0; seed < 800; ++seed) {
    const Environment env = build_environment(StepModel::gaussian(), n, seed);
    right.push_back(env.site(static_cast<std::int64_t>(n)) / std::sqrt(2.0 * n));
    left.push_back(env.site(-static_cast<std::int64_t>(n)) / std::sqrt(2.0 * n));
  }
  CHECK(ks_pvalue(ks_statistic(right, normal_cdf), right.size()) > 0.01);
  CHECK(ks_pvalue(ks_statistic(left, normal_cdf), left.size()) > 0.01);
}

TEST_CASE("negative side is reflected: -V_{-x} has the law of V_x") {
  // Pareto steps with all weight up are bounded below by scale - centre = -2.
  const Environment env = build_environment(StepModel::pareto(1.5, 1.0), 5000, 3);
  CHECK(*std::ranges::min_element(env.steps_pos()) >= -2.0);
  CHECK(*std::ranges::max_element(env.steps_neg()) <= 2.0);
  CHECK(*std::ranges::max_element(env.steps_pos()) > 20.0);
}

TEST_CASE("potential_at step-function conventions") {
  const Environment env({2.0, -1.0}, {0.5, 4.0});
  CHECK(potential_at(env, 0.0) == 0.0);
  CHECK(potential_at(env, 0.99) == 0.0);
  CHECK(potential_at(env, -0.99) == 0.0);
  CHECK(potential_at(env, 1.5) == 2.0);
  CHECK(potential_at(env, 2.0) == 1.0);
  CHECK(potential_at(env, 1.0) == 2.0);
  CHECK(potential_at(env, -1.0) == 0.5);
  CHECK(potential_at(env, -1.5) == 0.5);
  CHECK(potential_at(env, -2.0) == 4.5);
  CHECK_THROWS_AS(potential_at(env, 2.5), RangeError);
  CHECK_THROWS_AS(potential_at(env, -2.01), RangeError);
  const CadlagGrid g = env.to_grid();
  for (double x : {-2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0})
    CHECK(g.value_at(x) == potential_at(env, x));
}

TEST_CASE("omega and potential steps") {
  const Environment e0({0.0, std::log(3.0)}, {});
  const OmegaField w = env_to_omega(e0);
  REQUIRE(w.pos.size() == 2);
  CHECK(w.pos[0] == 0.5);
  CHECK_THAT(w.pos[1], WithinAbs(0.25, 1e-15));

  RandomStream r(11);
  OmegaField f;
  for (int i = 0; i < 100; ++i) f.pos.push_back(0.01 + 0.98 * r.uniform());
  for (int i = 0; i < 100; ++i) f.neg.push_back(0.01 + 0.98 * r.uniform());
  const OmegaField back = env_to_omega(omega_to_env(f));
  double err = 0.0;
  for (int i = 0; i < 100; ++i) {
    err = std::max(err, std::abs(back.pos[i] - f.pos[i]));
    err = std::max(err, std::abs(back.neg[i] - f.neg[i]));
  }
  CHECK(err < 1e-14);
}

TEST_CASE("two-point and log-odds models") {
  const auto m = StepModel::two_point(0.25, 0.75, 0.5);
  const auto& k = std::get<SinaiTwoPoint>(m.kind());
  CHECK_THAT(k.step_a, WithinAbs(std::log(3.0), 1e-15));
  CHECK_THAT(k.omega_a(), WithinAbs(0.25, 1e-15));
  CHECK_THAT(k.omega_b(), WithinAbs(0.75, 1e-15));
  CHECK(m.alpha() == 2.0);

  const auto lo = StepModel::log_odds(std::sqrt(2.0));
  RandomStream r(5);
  double s = 0, s2 = 0, off = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = lo.draw(r);
    off = std::max(off, std::abs(std::abs(x) - std::sqrt(2.0)));
    s += x;
    s2 += x * x;
  }
  CHECK(off < 1e-15);
  CHECK(std::abs(s / n) < 3.0 * std::sqrt(2.0 / n));
  CHECK_THAT(s2 / n, WithinRel(2.0, 1e-12));
  CHECK_THROWS_AS(StepModel::two_point(0.0, 0.5, 0.5), DomainError);
}

TEST_CASE("Pareto tails and centring") {
  const auto m = StepModel::pareto(1.5, 0.7, 2.0);
  CHECK(m.alpha() == 1.5);
  RandomStream r(6);
  const int n = 400000;
  double s = 0;
  int above = 0;
  const double x = 200.0;
  for (int i = 0; i < n; ++i) {
    const double d = m.draw(r);
    s += d;
    above += d > x;
  }
  // infinite variance: only a loose check on the mean
  CHECK(std::abs(s / n) < 0.3);
  const double c = 0.7 * 2.0 * 1.5 / 0.5 - 0.3 * 2.0 * 1.5 / 0.5;  // centring shift
  const double tail = 0.7 * std::pow(2.0 / (x + c), 1.5);
  CHECK(std::abs(above - n * tail) < 4.0 * std::sqrt(n * tail));
  CHECK_THROWS_AS(StepModel::pareto(1.0, 0.3), UnsupportedParameterization);
}

TEST_CASE("JSON round trips") {
  for (const auto& m : {StepModel::gaussian(), StepModel::pareto(1.3, 0.2, 0.5),
                        StepModel::two_point(0.3, 0.6, 0.4),
                        StepModel::exact(StableLaw::one_sided(1.5, Spectral::NoNegativeJumps))}) {
    const auto back = StepModel::from_json(m.to_json());
    CHECK(back.to_json() == m.to_json());
    CHECK(back.alpha() == m.alpha());
    CHECK(back.q() == m.q());
  }
  const Environment env = build_environment(StepModel::pareto(1.5, 0.4), 64, 1234);
  const Environment back = environment_from_json(to_json(env));
  CHECK(std::ranges::equal(env.steps_pos(), back.steps_pos()));
  CHECK(std::ranges::equal(env.steps_neg(), back.steps_neg()));
  REQUIRE(back.seed().has_value());
  CHECK(*back.seed() == 1234);
  REQUIRE(back.model().has_value());
  CHECK(back.model()->to_json() == env.model()->to_json());
}

TEST_CASE("flat environment") {
  const Environment env = Environment::flat(10);
  CHECK(env.half_length() == 10);
  for (std::int64_t x = -10; x <= 10; ++x) CHECK(env.site(x) == 0.0);
}
