#include "ineqcert/report.hpp"

#include <json.hpp>

namespace ineqcert {
namespace {

using Json = nlohmann::ordered_json;

Json decimal(const Real& v, int digits) { return to_decimal_string(v, digits); }

Json decimal_list(const std::vector<Real>& values, int digits) {
  Json out = Json::array();
  for (const Real& v : values) out.push_back(to_decimal_string(v, digits));
  return out;
}

template <typename T, typename F>
Json optional_field(const std::optional<T>& value, F&& render) {
  return value ? render(*value) : Json(nullptr);
}

void add_minimax_fields(Json& out, const MinimaxResult& r, int digits) {
  out["delta_hat"] = decimal(r.delta_hat, digits);
  out["lower_bound"] = decimal(r.lower_bound, digits);
  out["upper_bound"] = decimal(r.upper_bound, digits);
  out["nodes"] = decimal_list(r.nodes, digits);
  out["node_residuals"] = decimal_list(r.node_residuals, digits);
  out["polynomial_basis"] = "chebyshev";
  out["polynomial_interval"] = {decimal(r.polynomial.a(), digits),
                                decimal(r.polynomial.b(), digits)};
  out["polynomial_coefficients"] = decimal_list(r.polynomial.coefficients(), digits);
  out["monomial_coefficients"] = decimal_list(r.polynomial.to_monomial(), digits);
  out["iterations"] = r.iterations;
  out["levelled_error_history"] = decimal_list(r.levelled_error_history, digits);
  out["exact"] = r.exact;
  out["evaluations"] = r.evaluations;
}

}  // namespace

std::string minimax_to_json(const MinimaxResult& result, const Precision& p, int indent) {
  PrecisionScope scope(p);
  Json out = Json::object();
  add_minimax_fields(out, result, p.decimal_digits());
  return out.dump(indent);
}

std::string report_to_json(const ProofReport& report, int indent) {
  const Precision& p = report.settings.precision;
  PrecisionScope scope(p);
  const int digits = p.decimal_digits();
  auto dec = [digits](const Real& v) { return decimal(v, digits); };
  auto method = [](LimitMethod m) { return Json(to_string(m)); };

  Json out = Json::object();
  out["verdict"] = to_string(report.verdict);
  out["failed_stage"] = report.failed_stage.empty() ? Json(nullptr) : Json(report.failed_stage);
  out["diagnostics"] = report.diagnostics;
  out["function"] = report.function;
  out["interval"] = {dec(report.a), dec(report.b)};
  out["alpha"] = optional_field(report.alpha, dec);
  out["beta"] = optional_field(report.beta, dec);
  out["alpha_method"] = optional_field(report.alpha_method, method);
  out["beta_method"] = optional_field(report.beta_method, method);
  out["n"] = dec(report.n);
  out["m"] = dec(report.m);
  out["degree"] = report.degree;

  if (report.minimax) {
    add_minimax_fields(out, *report.minimax, digits);
  } else {
    for (const char* key : {"delta_hat", "lower_bound", "upper_bound", "nodes",
                            "polynomial_coefficients"}) {
      out[key] = nullptr;
    }
  }
  out["global_min_bound"] =
      report.certificate ? dec(report.certificate->global_min_bound) : Json(nullptr);

  Json witnesses = Json::array();
  for (const Witness& w : report.witnesses) {
    witnesses.push_back({{"kind", w.kind}, {"x", dec(w.location)}, {"value", dec(w.value)}});
  }
  out["witnesses"] = std::move(witnesses);

  out["equioscillation"] = optional_field(report.equioscillation, [&](const auto& e) {
    Json j = Json::object();
    j["passed"] = e.passed;
    j["spread"] = dec(e.spread);
    j["offending_node"] = e.offending_node ? Json(*e.offending_node) : Json(nullptr);
    j["reason"] = e.reason;
    return j;
  });
  out["residual_check"] = optional_field(report.residual_check, [&](const auto& r) {
    Json j = Json::object();
    j["passed"] = r.passed;
    j["points"] = r.points;
    j["max_residual"] = dec(r.max_residual);
    j["max_location"] = dec(r.max_location);
    j["delta"] = dec(r.delta);
    return j;
  });
  out["certificate"] = optional_field(report.certificate, [&](const auto& c) {
    Json j = Json::object();
    j["delta"] = dec(c.delta);
    j["margin_factor"] = dec(c.margin_factor);
    j["global_min_bound"] = dec(c.global_min_bound);
    Json pieces = Json::array();
    for (const auto& s : c.subintervals) {
      pieces.push_back({dec(s.left), dec(s.right), dec(s.lower_bound)});
    }
    j["subintervals"] = std::move(pieces);
    return j;
  });

  out["caveat"] = report.caveat;

  const ProofSettings& s = report.settings;
  Json settings = Json::object();
  settings["precision_digits"] = digits;
  settings["tol"] = dec(s.tol);
  settings["grid_multiplier"] = s.grid_multiplier;
  settings["margin_factor"] = dec(s.margin_factor);
  settings["equioscillation_tol"] = dec(s.equioscillation_tol);
  settings["residual_grid_size"] = s.residual_grid_size;
  settings["sign_samples"] = s.sign_samples;
  settings["alpha_override"] = optional_field(s.alpha_override, dec);
  settings["beta_override"] = optional_field(s.beta_override, dec);
  settings["record_wall_clock"] = s.record_wall_clock;
  out["settings"] = std::move(settings);

  Json timings = Json::array();
  for (const StageCounters& t : report.timings) {
    Json j = Json::object();
    j["stage"] = t.stage;
    j["evaluations"] = t.evaluations;
    if (s.record_wall_clock) j["wall_clock_ms"] = t.wall_clock_ms;
    timings.push_back(std::move(j));
  }
  out["timings"] = std::move(timings);
  return out.dump(indent);
}

}  // namespace ineqcert
