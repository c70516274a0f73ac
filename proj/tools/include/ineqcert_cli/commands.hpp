#pragma once
// Subcommand drivers. Each returns the process exit code and never throws:
//   0 proven / success, 1 disproven, 2 inconclusive or computation failed,
//   3 usage, configuration or I/O error.
#include "ineqcert_cli/config.hpp"

#include <ostream>
#include <string>

namespace ineqcert::cli {

inline constexpr int kExitProven = 0;
inline constexpr int kExitDisproven = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 3;

// Writes the report JSON to config.output_path, or to `out` when unset.
// A one-line verdict summary goes to `err`.
int run_prove(const ProblemConfig& config, bool wall_clock, std::ostream& out, std::ostream& err);

// Minimax of `function` itself (no endpoint quotient) on the interval.
int run_minimax(const ProblemConfig& config, std::ostream& out, std::ostream& err);

// Prints K^(order)(x) and its error bound.
int run_kurepa(const std::string& x, int order, int precision_digits, std::ostream& out,
               std::ostream& err);

// Endpoint limits alpha, beta as JSON; method is "auto", "taylor" or "numeric".
int run_limits(const ProblemConfig& config, const std::string& method, std::ostream& out,
               std::ostream& err);

}  // namespace ineqcert::cli
