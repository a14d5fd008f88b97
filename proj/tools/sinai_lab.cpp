// sinai-lab: run registered experiments and the acceptance suite.
#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "sinai/harness/acceptance.hpp"
#include "sinai/harness/config.hpp"
#include "sinai/harness/registry.hpp"

namespace lab = sinai::lab;

namespace {

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("SINAI_LAB_SEED");
  if (!s || !*s) return std::nullopt;
  return std::stoull(s, nullptr, 0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo and closed-form experiments for random walks in random environment"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run one experiment and write record.json / data.csv");
  std::string name, config_path, out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  run->add_option("--experiment,-e", name, "experiment name (see `list`)");
  run->add_option("--config,-c", config_path, "TOML or JSON config")->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "overrides SINAI_LAB_SEED and the config");
  run->add_option("--workers", workers, "threads; 0 uses all cores");
  run->add_option("--out", out, "output directory");

  app.add_subcommand("list", "list registered experiments");

  auto* check = app.add_subcommand("check", "run the acceptance suite");
  std::vector<int> only;
  std::optional<std::uint64_t> check_seed;
  std::size_t check_workers = 0;
  check->add_option("--criterion", only, "run only these criteria");
  check->add_option("--seed", check_seed, "seed (default: SINAI_LAB_SEED or built in)");
  check->add_option("--workers", check_workers, "threads; 0 uses all cores");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("list")) {
      for (const auto& e : lab::registry())
        std::cout << e.name << std::string(24 - std::min<std::size_t>(23, e.name.size()), ' ')
                  << e.summary << "  [" << e.budget << "]\n";
      return 0;
    }

    if (app.got_subcommand("check")) {
      const std::uint64_t s = check_seed ? *check_seed : env_seed().value_or(lab::kAcceptanceSeed);
      bool all = true;
      for (const auto& c : lab::criteria()) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        const auto r = lab::run_criterion(c.id, s, check_workers);
        std::cout << lab::format_result(r) << std::endl;
        all = all && r.pass;
      }
      return all ? 0 : 1;
    }

    lab::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = lab::load_config(config_path);
    if (!name.empty()) cfg.name = name;
    if (cfg.name.empty()) {
      std::cerr << "sinai-lab run: no experiment given\n";
      return 2;
    }
    if (!lab::find_experiment(cfg.name)) {
      std::cerr << "sinai-lab run: unknown experiment '" << cfg.name << "' (try `sinai-lab list`)\n";
      return 2;
    }
    if (auto s = env_seed()) cfg.seed = *s;
    if (seed) cfg.seed = *seed;
    if (workers) cfg.workers = *workers;
    if (!out.empty()) cfg.out_path = out;

    const lab::ResultRecord rec = lab::run_experiment(cfg);
    lab::write_record(rec, cfg.out_path);
    std::size_t failed = 0;
    for (const auto& v : rec.verdicts) {
      std::cout << lab::to_string(v.status) << "  " << v.check << "  value=" << v.value
                << " target=" << v.target << " (" << v.tolerance << ")\n";
      if (v.status == lab::Status::Fail) ++failed;
    }
    std::cout << rec.verdicts.size() - failed << "/" << rec.verdicts.size()
              << " checks passed; wrote " << (cfg.out_path / "record.json").string() << "\n";
    return failed ? 1 : 0;
  } catch (const std::exception& e) {
    std::cerr << "sinai-lab: " << e.what() << "\n";
    return 2;
  }
}
