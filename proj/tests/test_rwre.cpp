#include <algorithm>
#include <cmath>
#include <vector>

#include "catch_amalgamated.hpp"
#include "sinai/error.hpp"
#include "sinai/mc.hpp"
#include "sinai/rwre.hpp"

using namespace sinai;

namespace {

// E max_{k <= n} S_k for the simple walk: sum over m >= 1 of P(S_n >= m) + P(S_n >= m + 1).
double srw_expected_max(int n) {
  std::vector<double> tail(n + 2, 0.0);  // tail[m] = P(S_n >= m)
  for (int k = n; k >= 0; --k) {
    const int s = 2 * k - n;
    const double pk = std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                               std::lgamma(n - k + 1.0) - n * std::log(2.0));
    if (s >= 0) tail[s] = pk;
  }
  for (int m = n - 1; m >= 0; --m) tail[m] += tail[m + 1];
  double e = 0.0;
  for (int m = 1; m <= n; ++m) e += tail[m] + tail[m + 1];
  return e;
}

Environment constant_env(double omega, std::size_t half_length) {
  return omega_to_env({std::vector<double>(half_length, omega), std::vector<double>(half_length, omega)});
}

}  // namespace

TEST_CASE("empty walk") {
  RandomStream r(1);
  const WalkStats w = rwre_trajectory(Environment::flat(4), 0, r);
  CHECK((w.final == 0 && w.max == 0 && w.min == 0 && w.max_abs == 0));
}

TEST_CASE("flat environment reproduces the constant walk draw for draw") {
  const Environment env = Environment::flat(5000);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RandomStream a(seed), b(seed);
    const WalkStats x = rwre_trajectory(env, 4000, a);
    const WalkStats y = constant_walk(0.5, 4000, b);
    CHECK(x.final == y.final);
    CHECK(x.max == y.max);
    CHECK(x.min == y.min);
    CHECK(a() == b());
  }
}

TEST_CASE("walk statistics are consistent") {
  RandomStream r(2);
  const Environment env = build_environment(StepModel::gaussian(), 3000, 2);
  for (std::uint64_t n : {1ULL, 2ULL, 17ULL, 1000ULL, 9999ULL}) {
    const WalkStats w = rwre_trajectory(env, n, r);
    CHECK(w.n == n);
    CHECK(((w.final % 2 + 2) % 2) == static_cast<std::int64_t>(n % 2));
    CHECK(w.min <= w.final);
    CHECK(w.final <= w.max);
    CHECK(w.min <= 0);
    CHECK(w.max >= 0);
    CHECK(w.max_abs == std::max(w.max, -w.min));
  }
}

TEST_CASE("simple walk maximum") {
  RandomStream r(3);
  const int n = 10000;
  RunningStats m;
  for (int i = 0; i < 10000; ++i) m.push(static_cast<double>(constant_walk(0.5, n, r).max));
  const double exact = srw_expected_max(n);
  CHECK(std::abs(exact - std::sqrt(2.0 * n / M_PI)) < 1.0);
  INFO(m.mean() << " +- " << m.std_error() << " vs " << exact);
  CHECK(m.estimate(0).within(exact));
}

TEST_CASE("biased walk drifts at speed 2 omega - 1") {
  RandomStream r(4);
  const std::uint64_t n = 20000;
  const Environment env = constant_env(0.99, n + 1);
  RunningStats f;
  for (int i = 0; i < 500; ++i) f.push(static_cast<double>(rwre_trajectory(env, n, r).final));
  CHECK(f.estimate(0).within(0.98 * n));
  CHECK(std::abs(std::sqrt(f.variance()) - std::sqrt(4 * 0.99 * 0.01 * n)) < 0.15 * std::sqrt(4 * 0.99 * 0.01 * n));
}

TEST_CASE("walk leaving the environment") {
  RandomStream r(5);
  CHECK_THROWS_AS(rwre_trajectory(Environment::flat(5), 10000, r), RangeError);
}

TEST_CASE("site frequencies follow the local transition probabilities") {
  RandomStream r(6);
  const Environment env = build_environment(StepModel::log_odds(1.0), 4000, 6);
  const OmegaField w = env_to_omega(env);
  const SiteCounts c = rwre_site_counts(env, 2000000, r);
  REQUIRE(c.visits.size() == c.right.size());
  std::uint64_t total = 0;
  int tested = 0, outside = 0;
  for (std::size_t i = 0; i < c.visits.size(); ++i) {
    total += c.visits[i];
    if (c.visits[i] < 2000) continue;
    const std::int64_t x = static_cast<std::int64_t>(i) - c.offset;
    const double om = x >= 0 ? w.pos[static_cast<std::size_t>(x)] : w.neg[static_cast<std::size_t>(-x - 1)];
    const double nv = static_cast<double>(c.visits[i]);
    ++tested;
    outside += std::abs(static_cast<double>(c.right[i]) - nv * om) > 3.0 * std::sqrt(nv * om * (1 - om));
  }
  CHECK(total == 2000000);
  CHECK(tested > 10);
  // 3-sigma excursions happen at rate 0.27%; allow a handful
  CHECK(outside <= std::max(2, tested / 50));
}

TEST_CASE("annealed supremum sample") {
  const auto m = StepModel::log_odds(std::sqrt(2.0));
  const AnnealedSample a = annealed_sup_distribution(m, 2000, 300, RandomStream(7), 1);
  const AnnealedSample b = annealed_sup_distribution(m, 2000, 300, RandomStream(7), 4);
  REQUIRE(a.values.size() == 300);
  CHECK(a.values == b.values);
  // sup Z_k is 0 when the walk never steps right of the origin, which a
  // left-hand valley makes likely at small n
  CHECK(std::ranges::all_of(a.values, [](double v) { return v >= 0.0; }));
  const auto zeros = std::ranges::count(a.values, 0.0);
  CHECK(zeros < 75);
  std::vector<double> sorted = a.values;
  std::ranges::sort(sorted);
  CHECK(sorted[150] > 0.0);
  CHECK(a.n == 2000);
  CHECK_THROWS_AS(annealed_sup_distribution(m, 10, 5, RandomStream(7)), DomainError);
}

TEST_CASE("envelope table shape") {
  const auto rows = envelope_diagnostic(StepModel::log_odds(std::sqrt(2.0)), {1000, 4000}, 100,
                                        {0.0, 1.0, 2.0}, RandomStream(8), 1);
  CHECK(rows.size() == 6);
  for (const auto& row : rows) {
    REQUIRE(row.q_beta.size() == row.levels.size());
    for (std::size_t i = 0; i < row.q_beta.size(); ++i) {
      CHECK(row.q_beta[i] >= 0.0);
      if (row.levels[i] >= 0.5) CHECK(row.q_beta[i] > 0.0);
      CHECK(row.q_beta_lower[i] <= row.q_beta[i]);
      CHECK(row.q_beta[i] <= row.q_beta_upper[i]);
      if (i > 0) CHECK(row.q_beta[i] >= row.q_beta[i - 1]);
    }
  }
}

TEST_CASE("liminf classifiers") {
  auto c = theorem_classifiers(1.0, 0.5);
  CHECK(c.verdict == Liminf::Zero);
  CHECK_FALSE(c.critical);
  c = theorem_classifiers(2.0, 0.5);
  CHECK(c.verdict == Liminf::Infinite);
  CHECK(c.critical);
  c = theorem_classifiers(3.0, 0.5);
  CHECK(c.verdict == Liminf::Infinite);
  CHECK_FALSE(c.critical);
  c = theorem2b_classifier(0.5);
  CHECK(c.verdict == Liminf::Zero);
  CHECK(c.critical);
  CHECK(theorem2b_classifier(0.2).verdict == Liminf::Zero);
  CHECK(theorem2b_classifier(0.7).verdict == Liminf::Infinite);
}
