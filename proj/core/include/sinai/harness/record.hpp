#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "sinai/mc.hpp"

namespace sinai::lab {

enum class Status { Pass, Fail, NA };
std::string to_string(Status s);

/// One acceptance check. `margin` is positive when the check passes with room.
struct Verdict {
  std::string check;
  Status status = Status::NA;
  double value = 0.0;
  double target = 0.0;
  std::string tolerance;
  double margin = 0.0;
  std::string note;
};

/// |value - target| <= k se.
Verdict within_se(std::string check, double value, double se, double target, double k = 3.0);
/// |value - target| <= tol.
Verdict within_abs(std::string check, double value, double target, double tol);
/// |value - target| <= tol |target|.
Verdict within_rel(std::string check, double value, double target, double tol);
Verdict at_most(std::string check, double value, double bound);
Verdict at_least(std::string check, double value, double bound);
Verdict holds(std::string check, bool ok, std::string tolerance = "exact", std::string note = {});

/// One long-form row: a statistic at a parameter point.
struct EstimateRow {
  std::string stat;
  nlohmann::json params = nlohmann::json::object();
  double value = 0.0;
  double se = 0.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string verdict;  // empty when no check is attached
  std::string tolerance;
};

struct ResultRecord {
  std::string experiment;
  nlohmann::json params = nlohmann::json::object();
  std::vector<EstimateRow> estimates;
  std::vector<Verdict> verdicts;
  nlohmann::json provenance = nlohmann::json::object();

  /// No verdict failed (NA does not count).
  bool passed() const;

  EstimateRow& add(std::string stat, nlohmann::json params, double value, double se = 0.0,
                   std::size_t n = 0, std::uint64_t seed = 0);
  EstimateRow& add(std::string stat, nlohmann::json params, const McEstimate& e);
  /// Appends the verdict and, when given, stamps it on the row.
  const Verdict& check(Verdict v, EstimateRow* row = nullptr);
};

nlohmann::json to_json(const Verdict& v);
nlohmann::json to_json(const ResultRecord& r);
/// experiment, stat, <param columns>, value, se, n, seed, verdict, tolerance.
std::string to_csv(const ResultRecord& r);
/// Writes record.json and data.csv into `dir`, creating it.
void write_record(const ResultRecord& r, const std::filesystem::path& dir);

}  // namespace sinai::lab
