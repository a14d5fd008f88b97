#include "sinai/harness/registry.hpp"

#include <chrono>

#include "sinai/harness/experiments.hpp"

namespace sinai::lab {

const std::vector<ExperimentInfo>& registry() {
  static const std::vector<ExperimentInfo> r = {
      {"ksharp-mc", "decay rate of P(V#_v <= x) by particle splitting vs pi^2/4", "10 min",
       ksharp_mc},
      {"ksharp-roots", "first negative zeros rho1, rho2 of the Mittag-Leffler combinations", "1 s",
       ksharp_roots},
      {"xi-laplace-mc", "sampled Xi against its closed-form Laplace transform", "10 min",
       xi_laplace_mc},
      {"xi-cdf-inversion", "Gaver-Stehfest CDF of Xi and the alpha=2 transform identities", "1 s",
       xi_cdf_inversion},
      {"tau-sharp-mc", "transform of tau#_1: b=1 identity and Brownian Monte Carlo", "5 min",
       tau_sharp_mc},
      {"exit-gambler", "two-sided exit of random walks: ruin formula and ratio stability", "2 min",
       exit_gambler},
      {"exit-bertoin-mc", "exit of (b-1, b) before an exponential time, corrected vs printed",
       "5 min", exit_bertoin_mc},
      {"range-inequalities", "functional oracles, sub-multiplicativity and the joint-event ratio",
       "10 min", range_inequalities},
      {"renewal-scaling", "ladder-height renewal function growth", "5 min", renewal_scaling},
      {"quenched-bm", "Ray-Knight hitting time in a flat potential vs Brownian passage", "5 min",
       quenched_bm},
      {"surrogate-convergence", "log sigma_X(v) against its path surrogate as v grows", "10 min",
       surrogate_convergence},
      {"rwre-limit-law", "Sinai walk suprema against the Xi law", "10 min", rwre_limit_law},
      {"envelope-table", "quantiles of normalised suprema across n and beta", "10 min",
       envelope_table},
      {"classifier-table", "liminf classification of the power envelope family", "1 s",
       classifier_table},
  };
  return r;
}

const ExperimentInfo* find_experiment(std::string_view name) {
  for (const auto& e : registry())
    if (e.name == name) return &e;
  return nullptr;
}

ResultRecord run_experiment(const ExperimentConfig& config) {
  const ExperimentInfo* e = find_experiment(config.name);
  if (!e) throw UnknownExperiment("unknown experiment '" + config.name + "'");
  const auto t0 = std::chrono::steady_clock::now();
  ResultRecord r = e->run(config);
  r.provenance["elapsed_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.provenance["budget"] = e->budget;
  return r;
}

}  // namespace sinai::lab
