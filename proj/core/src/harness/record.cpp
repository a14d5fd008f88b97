#include "sinai/harness/record.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "sinai/error.hpp"

namespace sinai::lab {

using nlohmann::json;

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::NA: return "na";
  }
  return "na";
}

namespace {

std::string fmt(double x) {
  std::ostringstream o;
  o.precision(6);
  o << x;
  return o.str();
}

Verdict make(std::string check, bool ok, double value, double target, std::string tol,
             double margin) {
  Verdict v;
  v.check = std::move(check);
  v.status = (ok && std::isfinite(value)) ? Status::Pass : Status::Fail;
  v.value = value;
  v.target = target;
  v.tolerance = std::move(tol);
  v.margin = margin;
  return v;
}

}  // namespace

Verdict within_se(std::string check, double value, double se, double target, double k) {
  const double d = std::abs(value - target);
  return make(std::move(check), d <= k * se, value, target, "|d| <= " + fmt(k) + " se", k * se - d);
}

Verdict within_abs(std::string check, double value, double target, double tol) {
  const double d = std::abs(value - target);
  return make(std::move(check), d <= tol, value, target, "|d| <= " + fmt(tol), tol - d);
}

Verdict within_rel(std::string check, double value, double target, double tol) {
  const double d = std::abs(value - target);
  const double lim = tol * std::abs(target);
  return make(std::move(check), d <= lim, value, target, "|d| <= " + fmt(tol) + " |target|",
              lim - d);
}

Verdict at_most(std::string check, double value, double bound) {
  return make(std::move(check), value <= bound, value, bound, "<= " + fmt(bound), bound - value);
}

Verdict at_least(std::string check, double value, double bound) {
  return make(std::move(check), value >= bound, value, bound, ">= " + fmt(bound), value - bound);
}

Verdict holds(std::string check, bool ok, std::string tolerance, std::string note) {
  Verdict v;
  v.check = std::move(check);
  v.status = ok ? Status::Pass : Status::Fail;
  v.value = ok ? 1.0 : 0.0;
  v.target = 1.0;
  v.tolerance = std::move(tolerance);
  v.note = std::move(note);
  return v;
}

bool ResultRecord::passed() const {
  for (const auto& v : verdicts)
    if (v.status == Status::Fail) return false;
  return true;
}

EstimateRow& ResultRecord::add(std::string stat, json params_, double value, double se,
                               std::size_t n, std::uint64_t seed) {
  EstimateRow r;
  r.stat = std::move(stat);
  r.params = std::move(params_);
  r.value = value;
  r.se = se;
  r.n = n;
  r.seed = seed;
  estimates.push_back(std::move(r));
  return estimates.back();
}

EstimateRow& ResultRecord::add(std::string stat, json params_, const McEstimate& e) {
  return add(std::move(stat), std::move(params_), e.mean, e.std_error, e.n, e.seed);
}

const Verdict& ResultRecord::check(Verdict v, EstimateRow* row) {
  if (row) {
    row->verdict = to_string(v.status);
    row->tolerance = v.tolerance;
  }
  verdicts.push_back(std::move(v));
  return verdicts.back();
}

json to_json(const Verdict& v) {
  json j = {{"check", v.check},         {"status", to_string(v.status)},
            {"value", v.value},         {"target", v.target},
            {"tolerance", v.tolerance}, {"margin", v.margin}};
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

json to_json(const ResultRecord& r) {
  json est = json::array();
  for (const auto& e : r.estimates) {
    json row = {{"stat", e.stat}, {"params", e.params}, {"value", e.value}, {"se", e.se},
                {"n", e.n},       {"seed", e.seed}};
    if (!e.verdict.empty()) {
      row["verdict"] = e.verdict;
      row["tolerance"] = e.tolerance;
    }
    est.push_back(std::move(row));
  }
  json ver = json::array();
  for (const auto& v : r.verdicts) ver.push_back(to_json(v));
  return {{"experiment", r.experiment}, {"params", r.params},         {"estimates", est},
          {"verdicts", ver},            {"provenance", r.provenance}, {"passed", r.passed()}};
}

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell(const json& j) {
  if (j.is_null()) return "";
  if (j.is_string()) return csv_cell(j.get<std::string>());
  if (j.is_number_float()) {
    std::ostringstream o;
    o.precision(17);
    o << j.get<double>();
    return o.str();
  }
  return csv_cell(j.dump());
}

}  // namespace

std::string to_csv(const ResultRecord& r) {
  std::set<std::string> keys;
  for (const auto& e : r.estimates)
    for (auto it = e.params.begin(); it != e.params.end(); ++it) keys.insert(it.key());
  std::ostringstream o;
  o << "experiment,stat";
  for (const auto& k : keys) o << ',' << csv_cell(k);
  o << ",value,se,n,seed,verdict,tolerance\n";
  for (const auto& e : r.estimates) {
    o << csv_cell(r.experiment) << ',' << csv_cell(e.stat);
    for (const auto& k : keys) o << ',' << (e.params.contains(k) ? cell(e.params.at(k)) : "");
    o << ',' << cell(e.value) << ',' << cell(e.se) << ',' << e.n << ',' << e.seed << ','
      << e.verdict << ',' << csv_cell(e.tolerance) << '\n';
  }
  return o.str();
}

void write_record(const ResultRecord& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream j(dir / "record.json");
  std::ofstream c(dir / "data.csv");
  if (!j || !c) throw Error("write_record: cannot write into " + dir.string());
  j << to_json(r).dump(2) << '\n';
  c << to_csv(r);
}

}  // namespace sinai::lab
