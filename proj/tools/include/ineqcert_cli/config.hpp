#pragma once
// Problem configuration: a flat `key = value` text file, one key per line,
// `#` starts a comment line. Numerics stay as decimal text until the working
// precision is known.
#include <istream>
#include <optional>
#include <string>
#include <utility>

namespace ineqcert::cli {

struct ProblemConfig {
  std::string function;
  std::pair<std::string, std::string> interval;
  std::string n = "0";
  std::string m = "0";
  int degree = 1;
  int precision_digits = 50;
  std::string tol = "1e-12";
  int grid_multiplier = 64;
  std::string margin_factor = "1.000001";
  std::optional<std::string> alpha_override;
  std::optional<std::string> beta_override;
  std::optional<std::string> output_path;
};

// Throws ConfigError with the offending line number.
ProblemConfig parse_config(std::istream& in);
ProblemConfig load_config(const std::string& path);

// Sets one key from its text value (shared by the file reader and CLI flags).
void apply_setting(ProblemConfig& config, const std::string& key, const std::string& value);

// "a,b" -> (a, b), whitespace trimmed.
std::pair<std::string, std::string> parse_interval(const std::string& text);

// Rejects configurations that cannot run: missing function or interval,
// a >= b, malformed decimals, non-positive integers.
void validate(const ProblemConfig& config);

}  // namespace ineqcert::cli
