#include "sinai/harness/config.hpp"

#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "sinai/error.hpp"

namespace sinai::lab {

using nlohmann::json;

namespace {

class TomlValue {
 public:
  TomlValue(std::string_view s, std::size_t line) : s_(s), line_(line) {}

  json parse() {
    json v = value();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters after value");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError("toml line " + std::to_string(line_) + ": " + what);
  }
  void skip_ws() {
    while (pos_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
      } else if (s_[pos_] == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }
  json value() {
    skip_ws();
    if (pos_ >= s_.size()) fail("missing value");
    const char c = s_[pos_];
    if (c == '"' || c == '\'') return string(c);
    if (c == '[') return array();
    if (c == '{') fail("inline tables are not supported");
    return scalar();
  }
  json string(char quote) {
    ++pos_;
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != quote) {
      char c = s_[pos_++];
      if (quote == '"' && c == '\\' && pos_ < s_.size()) {
        const char e = s_[pos_++];
        switch (e) {
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          case '"': c = '"'; break;
          case '\\': c = '\\'; break;
          default: fail(std::string("unsupported escape \\") + e);
        }
      }
      out += c;
    }
    if (pos_ >= s_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }
  json array() {
    ++pos_;
    json arr = json::array();
    for (;;) {
      skip_ws();
      if (pos_ >= s_.size()) fail("unterminated array");
      if (s_[pos_] == ']') {
        ++pos_;
        return arr;
      }
      arr.push_back(value());
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == ',') ++pos_;
    }
  }
  json scalar() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ']' && s_[pos_] != '#' &&
           !std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    std::string tok(s_.substr(start, pos_ - start));
    if (tok == "true") return true;
    if (tok == "false") return false;
    if (tok == "inf" || tok == "+inf") return std::numeric_limits<double>::infinity();
    std::string clean;
    for (char c : tok)
      if (c != '_') clean += c;
    if (clean.empty()) fail("empty value");
    const bool is_float = clean.find_first_of(".eE") != std::string::npos;
    try {
      std::size_t used = 0;
      if (is_float) {
        const double d = std::stod(clean, &used);
        if (used == clean.size()) return d;
      } else if (clean[0] == '-') {
        const long long i = std::stoll(clean, &used);
        if (used == clean.size()) return i;
      } else {
        const unsigned long long u = std::stoull(clean, &used, 0);
        if (used == clean.size()) return u;
      }
    } catch (const std::exception&) {
    }
    fail("cannot parse value '" + tok + "'");
  }

  std::string_view s_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

int bracket_balance(std::string_view s) {
  int depth = 0;
  char quote = 0;
  for (char c : s) {
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '#') {
      break;
    } else if (c == '[') {
      ++depth;
    } else if (c == ']') {
      --depth;
    }
  }
  return depth;
}

}  // namespace

json parse_toml(std::string_view text) {
  json root = json::object();
  json* table = &root;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t[0] == '[') {
      const auto close = t.find(']');
      if (close == std::string::npos || t.rfind("[[", 0) == 0)
        throw DomainError("toml line " + std::to_string(lineno) + ": bad table header");
      table = &root;
      std::stringstream path(t.substr(1, close - 1));
      std::string part;
      while (std::getline(path, part, '.')) {
        part = trim(part);
        if (!table->contains(part)) (*table)[part] = json::object();
        table = &(*table)[part];
        if (!table->is_object())
          throw DomainError("toml line " + std::to_string(lineno) + ": key redefined as table");
      }
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw DomainError("toml line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(t.substr(0, eq));
    if (key.size() >= 2 && (key.front() == '"' || key.front() == '\''))
      key = key.substr(1, key.size() - 2);
    std::string rhs = t.substr(eq + 1);
    const std::size_t first = lineno;
    while (bracket_balance(rhs) > 0 && std::getline(in, line)) {
      ++lineno;
      rhs += "\n" + line;
    }
    if (table->contains(key))
      throw DomainError("toml line " + std::to_string(first) + ": duplicate key " + key);
    (*table)[key] = TomlValue(rhs, first).parse();
  }
  return root;
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  c.name = j.value("name", std::string{});
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("workers")) c.workers = j.at("workers").get<std::size_t>();
  if (j.contains("out_path")) c.out_path = j.at("out_path").get<std::string>();
  if (j.contains("params")) {
    if (!j.at("params").is_object()) throw DomainError("config: params must be a table");
    c.params = j.at("params");
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("config: cannot open " + path.string());
  std::stringstream buf;
  buf << f.rdbuf();
  const auto ext = path.extension().string();
  if (ext == ".toml") return config_from_json(parse_toml(buf.str()));
  if (ext == ".json") return config_from_json(json::parse(buf.str()));
  throw DomainError("config: expected a .toml or .json file");
}

json to_json(const ExperimentConfig& c) {
  return {{"name", c.name},
          {"params", c.params},
          {"seed", c.seed},
          {"workers", c.workers},
          {"out_path", c.out_path.string()}};
}

}  // namespace sinai::lab
