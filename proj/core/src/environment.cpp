#include "sinai/environment.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sinai/error.hpp"

namespace sinai {

namespace {

double check_omega(double w) {
  if (!(w > 0.0 && w < 1.0)) throw DomainError("omega must lie in (0, 1)");
  return w;
}

double omega_step(double w) { return std::log((1.0 - w) / w); }

std::vector<double> partial_sums(std::span<const double> steps) {
  std::vector<double> v(steps.size() + 1, 0.0);
  for (std::size_t i = 0; i < steps.size(); ++i) v[i + 1] = v[i] + steps[i];
  return v;
}

}  // namespace

StepModel::StepModel(Kind kind, double alpha, double q)
    : kind_(std::move(kind)), alpha_(alpha), q_(q), nf_(NormingFunctions::power(alpha, q)) {}

StepModel StepModel::exact(const StableLaw& law) { return StepModel(ExactStable{law}, law.alpha(), law.q()); }

StepModel StepModel::pareto(double alpha, double weight_plus, double scale) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("ParetoTail: alpha must lie in (0, 2)");
  if (!(weight_plus >= 0.0 && weight_plus <= 1.0)) throw DomainError("ParetoTail: weight in [0, 1]");
  if (!(scale > 0.0)) throw DomainError("ParetoTail: scale must be positive");
  if (alpha == 1.0 && weight_plus != 0.5)
    throw UnsupportedParameterization("ParetoTail: alpha = 1 needs balanced tails");
  const double beta = 2.0 * weight_plus - 1.0;
  const double p = alpha == 1.0 ? 0.5
                                : 0.5 + std::atan(beta * std::tan(std::numbers::pi * alpha / 2.0)) /
                                            (std::numbers::pi * alpha);
  return StepModel(ParetoTail{alpha, weight_plus, scale}, alpha, 1.0 - p);
}

double SinaiTwoPoint::omega_a() const { return 1.0 / (1.0 + std::exp(step_a)); }
double SinaiTwoPoint::omega_b() const { return 1.0 / (1.0 + std::exp(step_b)); }

StepModel StepModel::two_point(double omega_a, double omega_b, double prob_a) {
  check_omega(omega_a);
  check_omega(omega_b);
  if (!(prob_a >= 0.0 && prob_a <= 1.0)) throw DomainError("SinaiTwoPoint: prob_a in [0, 1]");
  return StepModel(SinaiTwoPoint{omega_step(omega_a), omega_step(omega_b), prob_a}, 2.0, 0.5);
}

StepModel StepModel::log_odds(double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma))
    throw DomainError("log_odds: sigma must be finite and nonnegative");
  return StepModel(SinaiTwoPoint{sigma, -sigma, 0.5}, 2.0, 0.5);
}

StepModel StepModel::with_norming(NormingFunctions nf) const {
  StepModel m = *this;
  m.nf_ = std::move(nf);
  return m;
}

double StepModel::draw(RandomStream& rng) const {
  return std::visit(
      [&rng](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ExactStable>) {
          return sample_stable(k.law, rng);
        } else if constexpr (std::is_same_v<T, ParetoTail>) {
          const bool up = rng.uniform() < k.weight_plus;
          const double mag = k.scale * std::pow(rng.uniform_open(), -1.0 / k.alpha);
          const double centre =
              k.alpha > 1.0 ? (2.0 * k.weight_plus - 1.0) * k.scale * k.alpha / (k.alpha - 1.0)
                            : 0.0;
          return (up ? mag : -mag) - centre;
        } else {
          return rng.uniform() < k.prob_a ? k.step_a : k.step_b;
        }
      },
      kind_);
}

std::string StepModel::describe() const { return to_json().dump(); }

nlohmann::json StepModel::to_json() const {
  nlohmann::json j;
  std::visit(
      [&j](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ExactStable>) {
          j = {{"kind", "exact_stable"},
               {"alpha", k.law.alpha()},
               {"p", k.law.p()},
               {"gamma", k.law.gamma()},
               {"spectral", to_string(k.law.spectral())}};
        } else if constexpr (std::is_same_v<T, ParetoTail>) {
          j = {{"kind", "pareto_tail"},
               {"alpha", k.alpha},
               {"weight_plus", k.weight_plus},
               {"scale", k.scale}};
        } else {
          j = {{"kind", "sinai_two_point"},
               {"step_a", k.step_a},
               {"step_b", k.step_b},
               {"omega_a", k.omega_a()},
               {"omega_b", k.omega_b()},
               {"prob_a", k.prob_a}};
        }
      },
      kind_);
  return j;
}

StepModel StepModel::from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "exact_stable")
    return exact(StableLaw::make(j.at("alpha").get<double>(), j.at("p").get<double>(),
                                 j.value("gamma", 1.0)));
  if (kind == "pareto_tail")
    return pareto(j.at("alpha").get<double>(), j.at("weight_plus").get<double>(),
                  j.value("scale", 1.0));
  if (kind == "sinai_two_point") {
    if (j.contains("step_a"))
      return StepModel(SinaiTwoPoint{j.at("step_a").get<double>(), j.at("step_b").get<double>(),
                                     j.at("prob_a").get<double>()},
                       2.0, 0.5);
    return two_point(j.at("omega_a").get<double>(), j.at("omega_b").get<double>(),
                     j.at("prob_a").get<double>());
  }
  throw DomainError("unknown step model kind '" + kind + "'");
}

Environment::Environment(std::vector<double> steps_pos, std::vector<double> steps_neg)
    : steps_pos_(std::move(steps_pos)), steps_neg_(std::move(steps_neg)) {
  for (double s : steps_pos_)
    if (!std::isfinite(s)) throw DomainError("Environment: non-finite step");
  for (double s : steps_neg_)
    if (!std::isfinite(s)) throw DomainError("Environment: non-finite step");
  v_pos_ = partial_sums(steps_pos_);
  v_neg_ = partial_sums(steps_neg_);
}

Environment Environment::flat(std::size_t half_length) {
  return Environment(std::vector<double>(half_length, 0.0), std::vector<double>(half_length, 0.0));
}

double Environment::site(std::int64_t n) const {
  if (n >= 0) {
    if (static_cast<std::size_t>(n) > right_span())
      throw RangeError("Environment: site " + std::to_string(n) + " beyond right span");
    return v_pos_[static_cast<std::size_t>(n)];
  }
  const auto k = static_cast<std::size_t>(-n);
  if (k > left_span())
    throw RangeError("Environment: site " + std::to_string(n) + " beyond left span");
  return v_neg_[k];
}

CadlagGrid Environment::to_grid() const {
  return CadlagGrid::two_sided(std::span(v_neg_).subspan(1), std::span(v_pos_).subspan(1));
}

void Environment::set_provenance(StepModel model, std::uint64_t seed) {
  model_ = std::move(model);
  seed_ = seed;
}

Environment build_environment(const StepModel& model, std::size_t half_length,
                              std::uint64_t seed) {
  Environment env = build_environment(model, model, half_length, seed);
  env.set_provenance(model, seed);
  return env;
}

Environment build_environment(const StepModel& pos, const StepModel& neg,
                              std::size_t half_length, std::uint64_t seed) {
  if (half_length < 1) throw DomainError("build_environment: half_length must be >= 1");
  // separate streams per side: a longer environment from the same seed
  // extends the shorter one
  RandomStream rp = RandomStream::derive(seed, hash_name("environment+"), 0);
  RandomStream rn = RandomStream::derive(seed, hash_name("environment-"), 0);
  std::vector<double> sp(half_length), sn(half_length);
  for (auto& s : sp) s = pos.draw(rp);
  for (auto& s : sn) s = -neg.draw(rn);
  Environment env(std::move(sp), std::move(sn));
  env.set_provenance(pos, seed);
  return env;
}

double potential_at(const Environment& env, double x) {
  if (!std::isfinite(x)) throw RangeError("potential_at: non-finite argument");
  const double m = std::floor(std::abs(x));
  if (x >= 0.0) {
    if (x > static_cast<double>(env.right_span()))
      throw RangeError("potential_at: x beyond right span");
    return env.potential_pos()[static_cast<std::size_t>(m)];
  }
  if (-x > static_cast<double>(env.left_span()))
    throw RangeError("potential_at: x beyond left span");
  return env.potential_neg()[static_cast<std::size_t>(m)];
}

OmegaField env_to_omega(const Environment& env) {
  OmegaField w;
  w.pos.reserve(env.right_span());
  w.neg.reserve(env.left_span());
  for (double s : env.steps_pos()) w.pos.push_back(1.0 / (1.0 + std::exp(s)));
  // V_{-k} - V_{-k-1} = -steps_neg[k]
  for (double s : env.steps_neg()) w.neg.push_back(1.0 / (1.0 + std::exp(-s)));
  return w;
}

Environment omega_to_env(const OmegaField& omega) {
  std::vector<double> sp, sn;
  sp.reserve(omega.pos.size());
  sn.reserve(omega.neg.size());
  for (double w : omega.pos) sp.push_back(omega_step(check_omega(w)));
  for (double w : omega.neg) sn.push_back(-omega_step(check_omega(w)));
  return Environment(std::move(sp), std::move(sn));
}

nlohmann::json to_json(const Environment& env) {
  nlohmann::json j;
  j["model"] = env.model() ? env.model()->to_json() : nlohmann::json(nullptr);
  j["seed"] = env.seed() ? nlohmann::json(*env.seed()) : nlohmann::json(nullptr);
  j["steps_pos"] = std::vector<double>(env.steps_pos().begin(), env.steps_pos().end());
  j["steps_neg"] = std::vector<double>(env.steps_neg().begin(), env.steps_neg().end());
  return j;
}

Environment environment_from_json(const nlohmann::json& j) {
  Environment env(j.at("steps_pos").get<std::vector<double>>(),
                  j.at("steps_neg").get<std::vector<double>>());
  if (j.contains("model") && !j["model"].is_null() && j.contains("seed") && !j["seed"].is_null())
    env.set_provenance(StepModel::from_json(j["model"]), j["seed"].get<std::uint64_t>());
  return env;
}

}  // namespace sinai
