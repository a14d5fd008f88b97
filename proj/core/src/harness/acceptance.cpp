#include "sinai/harness/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "sinai/harness/registry.hpp"

namespace sinai::lab {

using nlohmann::json;

namespace {

ExperimentConfig run(std::string name, json params) {
  ExperimentConfig c;
  c.name = std::move(name);
  c.params = std::move(params);
  return c;
}

}  // namespace

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "roots rho1(2), rho2(2) equal pi^2/4", 1.0, {run("ksharp-roots", {{"alphas", {2.0}}})}},
      {2,
       "transform identities: b=1 limit and the two alpha=2 Xi formulas",
       1.0,
       {run("tau-sharp-mc", {{"alphas", {1.25, 1.5, 1.75, 2.0}}, {"n", 0}}),
        run("xi-cdf-inversion", {{"alphas", json::array()}})}},
      {3,
       "exit of (b-1, b) before eta(q): corrected closed form vs Monte Carlo",
       300.0,
       {run("exit-bertoin-mc", {{"alpha", 2.0},
                                {"b", {0.5, 0.99}},
                                {"q", {1.0}},
                                {"discriminating_q", {2.0}},
                                {"n", 100000},
                                {"mesh", 4096}})}},
      {4,
       "K# by Monte Carlo within 15% of pi^2/4",
       600.0,
       {run("ksharp-mc", {{"alpha", 2.0}, {"x", 32.0}, {"n", 100000}})}},
      {5,
       "Xi sampler against the closed-form transforms",
       600.0,
       {run("xi-laplace-mc", {{"n", 100000}, {"mesh", 4096}})}},
      {6,
       "Brownian tau#_1 transform equals 1/cosh(sqrt q)",
       300.0,
       {run("tau-sharp-mc", {{"alphas", {2.0}}, {"q", {1.0, 2.0}}, {"n", 100000}})}},
      {7,
       "random-walk exit: ruin formula and Gaussian ratio stability",
       300.0,
       {run("exit-gambler", {{"n", 100000}})}},
      {8,
       "functional oracle suite on random 50-step paths",
       10.0,
       {run("range-inequalities", {{"part", "oracle"}, {"oracle_paths", 1000}})}},
      {9,
       "range-probability inequalities",
       600.0,
       {run("range-inequalities", {{"part", "probability"}, {"n", 100000}})}},
      {10,
       "quenched hitting time in a flat potential is Brownian",
       300.0,
       {run("quenched-bm", {{"n", 10000}, {"mesh_log2", 10}})}},
      {11,
       "surrogate error for log sigma_X(v) shrinks with v",
       600.0,
       {run("surrogate-convergence", {{"v", {64, 256, 1024, 4096}}, {"n", 2000}})}},
      {12,
       "Sinai walk suprema follow the Xi law (KS <= 0.1)",
       600.0,
       {run("rwre-limit-law", {{"n", 1000000}, {"n_walks", 10000}})}},
  };
  return list;
}

CriterionResult run_criterion(int id, std::uint64_t seed, std::size_t workers) {
  const Criterion* c = nullptr;
  for (const auto& k : criteria())
    if (k.id == id) c = &k;
  if (!c) throw DomainError("unknown acceptance criterion " + std::to_string(id));
  CriterionResult r;
  r.id = id;
  r.title = c->title;
  r.budget_seconds = c->budget_seconds;
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  for (ExperimentConfig cfg : c->runs) {
    cfg.seed = seed;
    cfg.workers = workers;
    ResultRecord rec = run_experiment(cfg);
    for (const auto& v : rec.verdicts)
      if (v.status == Status::Fail) {
        ok = false;
        r.failures.push_back(rec.experiment + ": " + v.check + " (value " +
                             json(v.value).dump() + ", target " + json(v.target).dump() + ", " +
                             v.tolerance + (v.note.empty() ? "" : "; " + v.note) + ")");
      }
    r.records.push_back(std::move(rec));
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.seconds > r.budget_seconds) {
    ok = false;
    r.failures.push_back("runtime over budget");
  }
  r.pass = ok;
  return r;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream o;
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%.2f s / %.0f s)", r.seconds, r.budget_seconds);
  o << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.id << "  " << r.title << "  " << buf;
  for (const auto& f : r.failures) o << "\n      failed: " << f;
  return o.str();
}

}  // namespace sinai::lab
