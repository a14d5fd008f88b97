#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "catch_amalgamated.hpp"
#include "sinai/harness/acceptance.hpp"
#include "sinai/harness/config.hpp"
#include "sinai/harness/record.hpp"
#include "sinai/harness/registry.hpp"

using namespace sinai;
using namespace sinai::lab;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sinai_lab_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SINAI_LAB_EXE) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("TOML subset") {
  const json j = parse_toml(R"(
# experiment
name = "exit-gambler"   # trailing comment
seed = 42
workers = 2

[params]
n = 1_000
pairs = [[5, 20],
         [10, 100]]
rate = 2.5e-1
flag = true
label = "a # not a comment"

[params.nested]
x = -3
)");
  CHECK(j["name"] == "exit-gambler");
  CHECK(j["seed"] == 42);
  CHECK(j["params"]["n"] == 1000);
  CHECK(j["params"]["pairs"] == json::array({{5, 20}, {10, 100}}));
  CHECK(j["params"]["rate"] == 0.25);
  CHECK(j["params"]["flag"] == true);
  CHECK(j["params"]["label"] == "a # not a comment");
  CHECK(j["params"]["nested"]["x"] == -3);
  CHECK_THROWS_AS(parse_toml("a = {b = 1}"), Error);
  CHECK_THROWS_AS(parse_toml("a = [1, 2"), Error);
  CHECK_THROWS_AS(parse_toml("just words"), Error);
}

TEST_CASE("config files") {
  const fs::path dir = scratch("config");
  fs::create_directories(dir);
  {
    std::ofstream(dir / "c.toml") << "name = \"ksharp-roots\"\nseed = 7\n[params]\nalphas = [2.0]\n";
    std::ofstream(dir / "c.json") << R"({"name": "ksharp-roots", "seed": 7, "params": {"alphas": [2.0]}})";
  }
  const auto a = load_config(dir / "c.toml"), b = load_config(dir / "c.json");
  CHECK(a.name == b.name);
  CHECK(a.seed == 7);
  CHECK(a.params == b.params);
  CHECK(to_json(a) == to_json(b));
  CHECK(config_from_json(to_json(a)).params == a.params);
  fs::remove_all(dir);
}

TEST_CASE("record serialisation") {
  ResultRecord r;
  r.experiment = "demo";
  auto& row = r.add("p_up", {{"y", 20}, {"x", 5}}, 0.2, 0.01, 100, 3);
  r.check(within_se("ruin", 0.2, 0.01, 0.21), &row);
  r.add("other", {{"x", 1}}, 1.5);
  CHECK(r.passed());
  CHECK(r.estimates[0].verdict == "pass");  // row may dangle after the second add
  r.check(at_most("bound", 2.0, 1.0));
  CHECK_FALSE(r.passed());

  const std::string csv = to_csv(r);
  std::istringstream in(csv);
  std::string header, line1;
  std::getline(in, header);
  std::getline(in, line1);
  CHECK(header == "experiment,stat,x,y,value,se,n,seed,verdict,tolerance");
  CHECK(line1.rfind("demo,p_up,5,20,0.2", 0) == 0);

  const json j = to_json(r);
  CHECK(j["verdicts"].size() == 2);
  CHECK(j["verdicts"][1]["status"] == "fail");

  const fs::path dir = scratch("record");
  write_record(r, dir);
  CHECK(fs::exists(dir / "record.json"));
  CHECK(json::parse(slurp(dir / "record.json")) == j);
  CHECK(slurp(dir / "data.csv") == csv);
  fs::remove_all(dir);
}

TEST_CASE("verdict helpers") {
  CHECK(within_se("a", 1.0, 0.1, 1.25).status == Status::Pass);
  CHECK(within_se("a", 1.0, 0.1, 1.35).status == Status::Fail);
  CHECK(within_abs("b", 1.0, 1.0 + 1e-11, 1e-10).status == Status::Pass);
  CHECK(within_rel("c", 2.2, 2.0, 0.15).status == Status::Pass);
  CHECK(within_rel("c", 2.4, 2.0, 0.15).status == Status::Fail);
  CHECK(at_least("d", 0.02, 0.01).margin > 0.0);
  CHECK(holds("e", false).status == Status::Fail);
}

TEST_CASE("registry") {
  CHECK(registry().size() == 14);
  for (const auto& e : registry()) {
    CHECK_FALSE(e.summary.empty());
    CHECK_FALSE(e.budget.empty());
    CHECK(find_experiment(e.name) == &e);
  }
  CHECK(find_experiment("no-such-thing") == nullptr);
  ExperimentConfig c;
  c.name = "no-such-thing";
  CHECK_THROWS_AS(run_experiment(c), UnknownExperiment);
  CHECK(criteria().size() == 12);
}

TEST_CASE("closed-form experiment passes") {
  ExperimentConfig c;
  c.name = "ksharp-roots";
  c.params = {{"alphas", {2.0}}};
  const ResultRecord r = run_experiment(c);
  CHECK(r.passed());
  CHECK(r.provenance.contains("elapsed_seconds"));
}

TEST_CASE("worker count does not change results") {
  ExperimentConfig c;
  c.name = "exit-gambler";
  c.seed = 99;
  c.params = {{"pairs", {{5, 20}}}, {"n", 3000}, {"ratio_pairs", {{4, 40}, {8, 80}}}, {"n_ratio", 400}};
  json first;
  for (std::size_t w : {1, 4, 16}) {
    c.workers = w;
    const json est = to_json(run_experiment(c))["estimates"];
    if (first.is_null())
      first = est;
    else
      CHECK(est == first);
  }
  c.seed = 100;
  c.workers = 1;
  CHECK(to_json(run_experiment(c))["estimates"] != first);
}

TEST_CASE("command line") {
  const fs::path out = scratch("cli");
  CHECK(run_cli("list") == 0);
  CHECK(run_cli("run --experiment no-such-thing --out " + out.string()) == 2);
  CHECK_FALSE(fs::exists(out));
  CHECK(run_cli("run --experiment ksharp-roots --seed 5 --out " + out.string()) == 0);
  CHECK(fs::exists(out / "record.json"));
  CHECK(fs::exists(out / "data.csv"));
  const json rec = json::parse(slurp(out / "record.json"));
  CHECK(rec["experiment"] == "ksharp-roots");
  fs::remove_all(out);

  const fs::path cfg = scratch("cli_cfg.toml");
  std::ofstream(cfg) << "name = \"exit-gambler\"\n[params]\nn = 2000\nn_ratio = 200\n"
                        "pairs = [[5, 20]]\nratio_pairs = [[4, 40], [8, 80]]\n";
  const int code = run_cli("run --config " + cfg.string() + " --out " + out.string());
  CHECK((code == 0 || code == 1));
  CHECK(fs::exists(out / "record.json"));
  const json rec2 = json::parse(slurp(out / "record.json"));
  CHECK(rec2["params"]["n"] == 2000);
  fs::remove_all(out);
  fs::remove(cfg);

  CHECK(run_cli("check --criterion 1") == 0);
}
