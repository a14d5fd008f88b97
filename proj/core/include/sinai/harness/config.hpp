#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

namespace sinai::lab {

struct ExperimentConfig {
  std::string name;
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::size_t workers = 0;
  std::filesystem::path out_path = "out";
};

/// Flat subset of TOML: comments, `key = value` with strings, integers,
/// floats, booleans and (nested) arrays of those, and [table] / [a.b] headers.
/// Arrays may span lines. Inline tables and dates are rejected.
nlohmann::json parse_toml(std::string_view text);

/// Reads a .toml or .json file laid out as
/// { name, seed, workers, out_path, params: {...} }.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& c);

/// Typed access to experiment parameters with defaults.
class Params {
 public:
  explicit Params(const nlohmann::json& j) : j_(j) {}

  template <class T>
  T get(const std::string& key, const T& fallback) const {
    if (!j_.contains(key)) return fallback;
    return j_.at(key).get<T>();
  }
  bool has(const std::string& key) const { return j_.contains(key); }
  const nlohmann::json& raw() const noexcept { return j_; }

 private:
  const nlohmann::json& j_;
};

}  // namespace sinai::lab
