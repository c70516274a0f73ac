#include "ineqcert_cli/commands.hpp"

#include "ineqcert/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace ineqcert::cli;

namespace {

// Flags shared by prove, minimax and limits; each overrides the config file.
struct Overrides {
  std::string config_path;
  std::string function, interval, n, m, tol, margin, alpha, beta, out;
  int degree = -1;
  int precision = -1;
  int grid_multiplier = -1;

  void add_to(CLI::App* cmd, bool proof_flags) {
    cmd->add_option("--config", config_path, "key = value problem file");
    cmd->add_option("--function", function, "expression in x");
    cmd->add_option("--interval", interval, "segment as a,b");
    cmd->add_option("--degree", degree, "polynomial degree");
    cmd->add_option("--precision", precision, "working precision in decimal digits");
    cmd->add_option("--tol", tol, "Remez convergence tolerance");
    cmd->add_option("--grid-multiplier", grid_multiplier, "exchange grid multiplier");
    cmd->add_option("--out", out, "write JSON here instead of stdout");
    cmd->add_option("--n", n, "exponent of (x - a)");
    cmd->add_option("--m", m, "exponent of (b - x)");
    if (proof_flags) {
      cmd->add_option("--margin", margin, "delta inflation factor in (1, 2]");
      cmd->add_option("--alpha", alpha, "use this left limit instead of computing it");
      cmd->add_option("--beta", beta, "use this right limit instead of computing it");
    }
  }

  ProblemConfig resolve() const {
    ProblemConfig c = config_path.empty() ? ProblemConfig{} : load_config(config_path);
    if (!function.empty()) c.function = function;
    if (!interval.empty()) c.interval = parse_interval(interval);
    if (!n.empty()) c.n = n;
    if (!m.empty()) c.m = m;
    if (!tol.empty()) c.tol = tol;
    if (!margin.empty()) c.margin_factor = margin;
    if (!alpha.empty()) c.alpha_override = alpha;
    if (!beta.empty()) c.beta_override = beta;
    if (!out.empty()) c.output_path = out;
    if (degree >= 0) c.degree = degree;
    if (precision >= 0) c.precision_digits = precision;
    if (grid_multiplier >= 0) c.grid_multiplier = grid_multiplier;
    return c;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ineqcert: prove f(x) >= 0 on [a, b] via minimax approximation"};
  app.require_subcommand(1);

  Overrides prove_flags;
  bool timings = false;
  auto* prove = app.add_subcommand("prove", "run the full proof pipeline");
  prove_flags.add_to(prove, true);
  prove->add_flag("--timings", timings, "add wall-clock stage timings to the report");

  Overrides minimax_flags;
  auto* mm = app.add_subcommand("minimax", "minimax polynomial of the function itself");
  minimax_flags.add_to(mm, false);

  Overrides limit_flags;
  std::string method = "auto";
  auto* limits = app.add_subcommand("limits", "endpoint limits alpha and beta");
  limit_flags.add_to(limits, false);
  limits->add_option("--method", method, "auto, taylor or numeric");

  std::string x;
  int order = 0;
  int kurepa_precision = 50;
  auto* kurepa = app.add_subcommand("kurepa", "Kurepa function and its derivatives");
  kurepa->add_option("--x", x, "argument, x >= 0")->required();
  kurepa->add_option("--order", order, "derivative order");
  kurepa->add_option("--precision", kurepa_precision, "working precision in decimal digits");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (prove->parsed()) {
      return run_prove(prove_flags.resolve(), timings, std::cout, std::cerr);
    }
    if (mm->parsed()) return run_minimax(minimax_flags.resolve(), std::cout, std::cerr);
    if (limits->parsed()) return run_limits(limit_flags.resolve(), method, std::cout, std::cerr);
    if (kurepa->parsed()) return run_kurepa(x, order, kurepa_precision, std::cout, std::cerr);
  } catch (const ineqcert::Error& e) {
    // Config-file and flag errors raised before a driver runs.
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
