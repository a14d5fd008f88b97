#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sinai/harness/config.hpp"
#include "sinai/harness/record.hpp"

namespace sinai::lab {

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::vector<ExperimentConfig> runs;  // seed and workers filled in at run time
};

const std::vector<Criterion>& criteria();

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  double seconds = 0.0;
  double budget_seconds = 0.0;
  std::vector<ResultRecord> records;
  std::vector<std::string> failures;  // names of failed checks
};

constexpr std::uint64_t kAcceptanceSeed = 20240917;

CriterionResult run_criterion(int id, std::uint64_t seed = kAcceptanceSeed,
                              std::size_t workers = 0);

/// "PASS  3  <title>  (12.3 s / 300 s)" followed by failed checks, if any.
std::string format_result(const CriterionResult& r);

}  // namespace sinai::lab
