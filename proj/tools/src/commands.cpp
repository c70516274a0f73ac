#include "ineqcert_cli/commands.hpp"

#include "ineqcert/certify.hpp"
#include "ineqcert/errors.hpp"
#include "ineqcert/expr.hpp"
#include "ineqcert/gfun.hpp"
#include "ineqcert/quad.hpp"
#include "ineqcert/remez.hpp"
#include "ineqcert/report.hpp"

#include <json.hpp>

#include <fstream>
#include <functional>

namespace ineqcert::cli {
namespace {

class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::optional<std::string>& path, std::ostream& out) {
  if (!path) {
    out << text << '\n';
    return;
  }
  std::ofstream file(*path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + *path + "' for writing");
  file << text << '\n';
  if (!file.flush()) throw IoError("failed writing '" + *path + "'");
}

// Maps exceptions onto the exit-code contract.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "error: parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "inconclusive: " << e.what() << '\n';
    return kExitInconclusive;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

struct Problem {
  Precision precision;
  Expression f;
  Real a, b, n, m;
};

Problem load_problem(const ProblemConfig& config) {
  validate(config);
  Precision p(config.precision_digits);
  PrecisionScope scope(p);
  return Problem{p,
                 parse(config.function),
                 parse_decimal(config.interval.first),
                 parse_decimal(config.interval.second),
                 parse_decimal(config.n),
                 parse_decimal(config.m)};
}

}  // namespace

int run_prove(const ProblemConfig& config, bool wall_clock, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Problem problem = load_problem(config);
    PrecisionScope scope(problem.precision);
    ProofSettings settings;
    settings.precision = problem.precision;
    settings.tol = parse_decimal(config.tol);
    settings.grid_multiplier = config.grid_multiplier;
    settings.margin_factor = parse_decimal(config.margin_factor);
    if (config.alpha_override) settings.alpha_override = parse_decimal(*config.alpha_override);
    if (config.beta_override) settings.beta_override = parse_decimal(*config.beta_override);
    settings.record_wall_clock = wall_clock;

    const ProofReport report = prove_inequality(problem.f, problem.a, problem.b, problem.n,
                                                problem.m, config.degree, settings);
    emit(report_to_json(report), config.output_path, out);

    err << "verdict: " << to_string(report.verdict);
    if (!report.failed_stage.empty()) err << " (stage " << report.failed_stage << ")";
    err << '\n';
    for (const auto& d : report.diagnostics) err << "  " << d << '\n';
    switch (report.verdict) {
      case Verdict::kProven: return kExitProven;
      case Verdict::kDisproven: return kExitDisproven;
      case Verdict::kInconclusive: return kExitInconclusive;
    }
    return kExitInconclusive;
  });
}

int run_minimax(const ProblemConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Problem problem = load_problem(config);
    PrecisionScope scope(problem.precision);
    MinimaxSettings settings;
    settings.tol = parse_decimal(config.tol);
    settings.grid_multiplier = config.grid_multiplier;
    const Precision& p = problem.precision;
    RealFunction g = [&](const Real& x) { return evaluate(problem.f, x, p); };
    const MinimaxResult result =
        minimax(g, problem.a, problem.b, config.degree, settings, p);
    emit(minimax_to_json(result, p), config.output_path, out);
    return kExitProven;
  });
}

int run_kurepa(const std::string& x, int order, int precision_digits, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    if (order < 0 || order > quad::kMaxDerivativeOrder) {
      throw ConfigError("order must lie in 0.." + std::to_string(quad::kMaxDerivativeOrder));
    }
    const Precision p(precision_digits);
    PrecisionScope scope(p);
    const Real point = parse_decimal(x);
    if (point < 0) throw ConfigError("x must be non-negative");
    const quad::QuadratureResult r =
        order == 0 ? quad::kurepa(point, p) : quad::kurepa_derivative(point, order, p);
    out << "value " << to_decimal_string(r.value, p.decimal_digits()) << '\n';
    out << "error_bound " << to_decimal_string(r.error_bound, 6) << '\n';
    return kExitProven;
  });
}

int run_limits(const ProblemConfig& config, const std::string& method, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    const Problem problem = load_problem(config);
    const Precision& p = problem.precision;
    PrecisionScope scope(p);
    EndpointLimits limits;
    if (method == "auto") {
      limits = endpoint_limits(problem.f, problem.a, problem.b, problem.n, problem.m, p);
    } else if (method == "numeric") {
      limits = endpoint_limits_numeric(problem.f, problem.a, problem.b, problem.n, problem.m, p);
    } else if (method == "taylor") {
      int n = 0;
      int m = 0;
      if (!is_small_integer(problem.n, &n) || !is_small_integer(problem.m, &m)) {
        throw ConfigError("the taylor method needs integer n and m");
      }
      limits = endpoint_limits_taylor(problem.f, problem.a, problem.b, n, m, p);
    } else {
      throw ConfigError("method must be auto, taylor or numeric");
    }
    nlohmann::ordered_json j;
    j["function"] = print(problem.f);
    j["alpha"] = to_decimal_string(limits.alpha, p.decimal_digits());
    j["beta"] = to_decimal_string(limits.beta, p.decimal_digits());
    j["alpha_method"] = to_string(limits.alpha_method);
    j["beta_method"] = to_string(limits.beta_method);
    j["notes"] = limits.notes;
    emit(j.dump(2), config.output_path, out);
    return kExitProven;
  });
}

}  // namespace ineqcert::cli
