#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "sinai/error.hpp"
#include "sinai/harness/config.hpp"
#include "sinai/harness/record.hpp"

namespace sinai::lab {

struct ExperimentInfo {
  std::string name;
  std::string summary;  // one line for `sinai-lab list`
  std::string budget;   // wall-clock budget at the default parameters
  std::function<ResultRecord(const ExperimentConfig&)> run;
};

class UnknownExperiment : public Error {
 public:
  using Error::Error;
};

const std::vector<ExperimentInfo>& registry();
const ExperimentInfo* find_experiment(std::string_view name);

/// Dispatches on config.name and stamps elapsed time into the provenance.
/// Throws UnknownExperiment for names outside the registry.
ResultRecord run_experiment(const ExperimentConfig& config);

}  // namespace sinai::lab
