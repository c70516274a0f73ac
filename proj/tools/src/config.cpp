#include "ineqcert_cli/config.hpp"

#include "ineqcert/errors.hpp"
#include "ineqcert/real.hpp"

#include <charconv>
#include <fstream>

namespace ineqcert::cli {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

int parse_int(const std::string& key, const std::string& text) {
  int value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("key '" + key + "' expects an integer, got '" + text + "'");
  }
  return value;
}

}  // namespace

std::pair<std::string, std::string> parse_interval(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
    throw ConfigError("interval must be written as 'a,b', got '" + text + "'");
  }
  return {trim(text.substr(0, comma)), trim(text.substr(comma + 1))};
}

void apply_setting(ProblemConfig& config, const std::string& key, const std::string& value) {
  if (key == "function") {
    config.function = value;
  } else if (key == "interval") {
    config.interval = parse_interval(value);
  } else if (key == "n") {
    config.n = value;
  } else if (key == "m") {
    config.m = value;
  } else if (key == "degree") {
    config.degree = parse_int(key, value);
  } else if (key == "precision_digits") {
    config.precision_digits = parse_int(key, value);
  } else if (key == "tol") {
    config.tol = value;
  } else if (key == "grid_multiplier") {
    config.grid_multiplier = parse_int(key, value);
  } else if (key == "margin_factor") {
    config.margin_factor = value;
  } else if (key == "alpha_override") {
    config.alpha_override = value;
  } else if (key == "beta_override") {
    config.beta_override = value;
  } else if (key == "output_path") {
    config.output_path = value;
  } else {
    throw ConfigError("unknown configuration key '" + key + "'");
  }
}

ProblemConfig parse_config(std::istream& in) {
  ProblemConfig config;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(number) + ": expected 'key = value'");
    }
    const std::string key = trim(text.substr(0, eq));
    try {
      apply_setting(config, key, trim(text.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(number) + ": " + e.what());
    }
  }
  return config;
}

ProblemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

void validate(const ProblemConfig& config) {
  if (config.function.empty()) throw ConfigError("missing 'function'");
  if (config.interval.first.empty() || config.interval.second.empty()) {
    throw ConfigError("missing 'interval'");
  }
  if (config.precision_digits < Precision::kMinimumDigits) {
    throw ConfigError("precision_digits must be at least " +
                      std::to_string(Precision::kMinimumDigits));
  }
  if (config.degree < 0) throw ConfigError("degree must be non-negative");
  if (config.grid_multiplier < 1) throw ConfigError("grid_multiplier must be positive");
  PrecisionScope scope{Precision(config.precision_digits)};
  const Real a = parse_decimal(config.interval.first);
  const Real b = parse_decimal(config.interval.second);
  if (!(a < b)) throw ConfigError("interval must satisfy a < b");
  parse_decimal(config.n);
  parse_decimal(config.m);
  parse_decimal(config.tol);
  parse_decimal(config.margin_factor);
  if (config.alpha_override) parse_decimal(*config.alpha_override);
  if (config.beta_override) parse_decimal(*config.beta_override);
}

}  // namespace ineqcert::cli
