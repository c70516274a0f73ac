#include "ineqcert/quad.hpp"

#include "ineqcert/errors.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>

namespace ineqcert::quad {
namespace {

constexpr int kGuardDigits = 10;
constexpr int kMaxPanelDepth = 48;

Real log1p_real(const Real& u) {
  Real r;
  mpfr_log1p(r.backend().data(), u.backend().data(), MPFR_RNDN);
  return r;
}

Real expm1_real(const Real& u) {
  Real r;
  mpfr_expm1(r.backend().data(), u.backend().data(), MPFR_RNDN);
  return r;
}

int default_panel_nodes(const Precision& p) { return 20 + p.decimal_digits() / 3; }

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<Real, Real> legendre(int n, const Real& x) {
  Real p0 = 1;
  Real p1 = x;
  for (int k = 2; k <= n; ++k) {
    Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = std::move(p1);
    p1 = std::move(p2);
  }
  if (n == 1) {
    p0 = 1;
  }
  Real derivative = n * (x * p1 - p0) / (x * x - 1);
  return {p1, derivative};
}

GaussLegendreRule compute_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const Real pi = pi_constant();
  const long bits = static_cast<long>(mpfr_get_prec(Real(0).backend().data()));
  const Real tolerance = ldexp(Real(1), static_cast<int>(-bits + 4));
  for (int i = 0; i < n / 2; ++i) {
    // Roots in decreasing order; Newton from the asymptotic guess.
    Real x = cos(pi * (Real(i) + Real(0.75)) / (Real(n) + Real(0.5)));
    for (int iteration = 0; iteration < 100; ++iteration) {
      auto [value, derivative] = legendre(n, x);
      Real step = value / derivative;
      x -= step;
      if (abs(step) <= tolerance) {
        break;
      }
    }
    const Real derivative = legendre(n, x).second;
    Real weight = 2 / ((1 - x * x) * derivative * derivative);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = weight;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = std::move(weight);
  }
  if (n % 2 == 1) {
    // Middle node x = 0: P_n'(0) from the recurrence at zero.
    const Real derivative = legendre(n, Real(0)).second;
    rule.nodes[static_cast<std::size_t>(n / 2)] = 0;
    rule.weights[static_cast<std::size_t>(n / 2)] = 2 / (derivative * derivative);
  }
  return rule;
}

// Accumulates value and error over panels in a fixed left-to-right order.
template <class Integrand>
class PanelIntegrator {
 public:
  PanelIntegrator(const Integrand& f, const GaussLegendreRule& rule, Real panel_tolerance,
                  long budget, long* evaluations)
      : f_(f),
        rule_(rule),
        tolerance_(std::move(panel_tolerance)),
        budget_(budget),
        evaluations_(evaluations) {}

  void integrate(const Real& lo, const Real& hi, Real* value, Real* error) {
    Real whole = apply_rule(lo, hi);
    refine(lo, hi, whole, 0, value, error);
  }

 private:
  Real apply_rule(const Real& lo, const Real& hi) {
    if (*evaluations_ + static_cast<long>(rule_.nodes.size()) > budget_) {
      throw QuadratureError("quadrature node budget of " + std::to_string(budget_) +
                            " evaluations exhausted");
    }
    const Real half = (hi - lo) / 2;
    const Real mid = (hi + lo) / 2;
    Real sum = 0;
    for (std::size_t i = 0; i < rule_.nodes.size(); ++i) {
      sum += rule_.weights[i] * f_(mid + half * rule_.nodes[i]);
    }
    *evaluations_ += static_cast<long>(rule_.nodes.size());
    return sum * half;
  }

  void refine(const Real& lo, const Real& hi, const Real& whole, int depth, Real* value,
              Real* error) {
    const Real mid = (lo + hi) / 2;
    Real left = apply_rule(lo, mid);
    Real right = apply_rule(mid, hi);
    Real halves = left + right;
    Real difference = abs(whole - halves);
    if (difference <= tolerance_ || depth >= kMaxPanelDepth) {
      *value += halves;
      *error += difference;
      return;
    }
    refine(lo, mid, left, depth + 1, value, error);
    refine(mid, hi, right, depth + 1, value, error);
  }

  const Integrand& f_;
  const GaussLegendreRule& rule_;
  Real tolerance_;
  long budget_;
  long* evaluations_;
};

// Smallest T (rounded up to an integer, at least 2x + 2k + 4) with
// e^-T T^(x+1) log^k(T) below 10^-(digits + 10).
double tail_cutoff_for(double x, int order, int digits) {
  const double target = (digits + 10) * std::log(10.0);
  double t = target;
  for (int i = 0; i < 60; ++i) {
    t = target + (x + 1) * std::log(t) + order * std::log(std::log(t));
  }
  return std::max(std::ceil(t) + 1, 2 * x + 2 * order + 4);
}

struct Evaluation {
  Real value = 0;
  Real error = 0;
  long evaluations = 0;
  Real cutoff;
};

void validate(const Real& x, int order, const QuadratureConfig& config) {
  if (!is_finite(x) || x < 0) {
    throw DomainError("Kurepa integral requires x >= 0");
  }
  if (order < 0 || order > kMaxDerivativeOrder) {
    throw ConfigError("Kurepa derivative order must be in 1.." +
                      std::to_string(kMaxDerivativeOrder));
  }
  if (!(config.singularity_halfwidth > 0 && config.singularity_halfwidth < 0.5) ||
      !(config.origin_split > 0 && config.origin_split < 1 - config.singularity_halfwidth) ||
      config.tail_scale < 1 || config.panel_nodes < 0 || config.max_evaluations <= 0) {
    throw ConfigError("invalid quadrature configuration");
  }
}

// int_0^s e^-t (t^x - 1)/(t - 1) dt (order 0) or int_0^s e^-t t^x log^k t/(t - 1) dt,
// from e^-t/(1 - t) = sum c_j t^j with c_j = sum_{i<=j} (-1)^i / i!.
void integrate_origin_series(const Real& x, int order, const Real& s, const Real& threshold,
                             Evaluation* out) {
  const Real log_s = log(s);
  Real c = 1;                   // c_j
  Real inverse_factorial = 1;   // 1 / j!
  Real s_pow_j = 1;             // s^j
  const Real s_pow_x1 = pow(s, x + 1);
  Real scale = 2;
  if (order > 0) {
    Real factorial = 1;
    for (int r = 2; r <= order; ++r) factorial *= r;
    scale = factorial * pow(1 + abs(log_s), order);
  }
  const Real tail_factor = scale / (1 - s);
  Real sum = 0;
  for (int j = 0;; ++j) {
    if (j > 0) {
      inverse_factorial /= j;
      c += (j % 2 == 0 ? inverse_factorial : -inverse_factorial);
      s_pow_j *= s;
    }
    const Real bound = s_pow_j * s * tail_factor;
    if (bound < threshold && j > 0) {
      out->error += bound;
      break;
    }
    if (order == 0) {
      const Real left = s_pow_j * s / (j + 1);
      const Real right = s_pow_x1 * s_pow_j / (x + j + 1);
      sum += c * (left - right);
    } else {
      const Real exponent = x + j + 1;
      const Real power = s_pow_x1 * s_pow_j;
      Real integral = power / exponent;  // I_0
      Real log_pow = 1;
      for (int r = 1; r <= order; ++r) {
        log_pow *= log_s;
        integral = power * log_pow / exponent - r * integral / exponent;
      }
      sum -= c * integral;
    }
  }
  out->value += sum;
}

Evaluation evaluate_integral(const Real& x, int order, const Precision& p,
                             const QuadratureConfig& config) {
  validate(x, order, config);
  PrecisionScope scope(p, kGuardDigits);

  const int n = config.panel_nodes > 0 ? config.panel_nodes : default_panel_nodes(p);
  const GaussLegendreRule& rule = gauss_legendre(n);
  const Real threshold = pow10(-(p.decimal_digits() + 10));
  const Real panel_tolerance = pow10(-(p.decimal_digits() + 2));

  Evaluation out;
  const Real s = Real(config.origin_split);
  const Real eps = Real(config.singularity_halfwidth);
  const Real left_window = 1 - eps;
  const Real right_window = 1 + eps;
  const double x_double = x.convert_to<double>();
  out.cutoff = Real(std::ceil(tail_cutoff_for(x_double, order, p.decimal_digits()) *
                              config.tail_scale));

  if (order == 0 && x == 0) {
    // t^0 - 1 vanishes identically.
    out.value = 0;
    out.error = 0;
    return out;
  }

  integrate_origin_series(x, order, s, threshold, &out);

  // Direct forms away from t = 1.
  auto direct = [&](const Real& t) -> Real {
    const Real log_t = log(t);
    if (order == 0) {
      return exp(-t) * expm1_real(x * log_t) / (t - 1);
    }
    return exp(x * log_t - t) * pow(log_t, order) / (t - 1);
  };

  // Series forms inside the window, in u = t - 1.
  std::vector<Real> coefficients;
  if (order == 0) {
    // (t^x - 1)/(t - 1) = sum_{j>=1} binom(x, j) u^(j-1)
    Real binomial = x;  // binom(x, 1)
    for (int j = 1;; ++j) {
      coefficients.push_back(binomial);
      const bool past_peak = Real(j) > x + 1;
      if (binomial == 0 || (past_peak && abs(binomial) * pow(eps, j) < threshold)) {
        break;
      }
      binomial = binomial * (x - j) / (j + 1);
    }
  } else {
    // log(1 + u)/u = sum_{j>=0} (-u)^j / (j + 1)
    Real eps_pow = 1;
    for (int j = 0;; ++j) {
      coefficients.push_back(Real(j % 2 == 0 ? 1 : -1) / (j + 1));
      eps_pow *= eps;
      if (eps_pow / (j + 2) < threshold) {
        break;
      }
    }
  }
  out.error += threshold;  // window series truncation
  auto windowed = [&](const Real& t) -> Real {
    const Real u = t - 1;
    Real series = 0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
      series = series * u + *it;
    }
    if (order == 0) {
      return exp(-t) * series;
    }
    const Real log_t = log1p_real(u);
    Real value = exp(x * log_t - t) * series;
    if (order > 1) {
      value *= pow(log_t, order - 1);
    }
    return value;
  };

  PanelIntegrator<decltype(direct)> direct_panels(direct, rule, panel_tolerance,
                                                  config.max_evaluations, &out.evaluations);
  PanelIntegrator<decltype(windowed)> window_panels(windowed, rule, panel_tolerance,
                                                    config.max_evaluations, &out.evaluations);

  direct_panels.integrate(s, left_window, &out.value, &out.error);
  window_panels.integrate(left_window, right_window, &out.value, &out.error);
  Real lo = right_window;
  Real hi = 2;
  while (lo < out.cutoff) {
    if (hi > out.cutoff) hi = out.cutoff;
    direct_panels.integrate(lo, hi, &out.value, &out.error);
    lo = hi;
    hi *= 2;
  }

  // Tail beyond T: at most e^-T T^(x+1) log^k(T).
  const Real& cutoff = out.cutoff;
  Real tail = exp(-cutoff) * pow(cutoff, x + 1);
  if (order > 0) {
    tail *= pow(log(cutoff), order);
  }
  out.error += tail;
  // Rounding allowance for the accumulated sums.
  out.error += pow10(-(p.decimal_digits() + kGuardDigits - 2)) *
               Real(out.evaluations + 1) * (1 + abs(out.value));

  if (out.error > pow10(-(p.decimal_digits() - 10))) {
    throw QuadratureError("Kurepa quadrature error bound " + to_decimal_string(out.error, 6) +
                          " exceeds the target for " + std::to_string(p.decimal_digits()) +
                          " digits");
  }
  return out;
}

QuadratureResult to_result(Evaluation&& e, const Precision& p) {
  QuadratureResult result;
  PrecisionScope scope(p);
  result.value = Real(e.value);
  result.error_bound = Real(e.error);
  result.nodes_used = std::max<long>(e.evaluations, 1);
  result.tail_cutoff = Real(e.cutoff);
  return result;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  if (n < 1) {
    throw ConfigError("Gauss-Legendre rule needs at least one node");
  }
  static std::mutex mutex;
  static std::map<std::pair<int, long>, std::unique_ptr<GaussLegendreRule>> cache;
  const long bits = static_cast<long>(Real::default_precision());
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{n, bits}];
  if (!slot) {
    slot = std::make_unique<GaussLegendreRule>(compute_rule(n));
  }
  return *slot;
}

QuadratureResult kurepa(const Real& x, const Precision& p, const QuadratureConfig& config) {
  return to_result(evaluate_integral(x, 0, p, config), p);
}

QuadratureResult kurepa_derivative(const Real& x, int order, const Precision& p,
                                   const QuadratureConfig& config) {
  if (order < 1) {
    throw ConfigError("Kurepa derivative order must be in 1.." +
                      std::to_string(kMaxDerivativeOrder));
  }
  return to_result(evaluate_integral(x, order, p, config), p);
}

Real find_inflection(const Precision& p, const QuadratureConfig& config) {
  PrecisionScope scope(p);
  Real lo = 0;
  Real hi = 1;
  const Real at_lo = kurepa_derivative(lo, 2, p, config).value;
  const Real at_hi = kurepa_derivative(hi, 2, p, config).value;
  if (!(at_lo < 0 && at_hi > 0)) {
    throw QuadratureError("K'' has no sign change on [0, 1]; check the quadrature settings");
  }
  const Real width = Real("1e-12");
  while (hi - lo >= width) {
    Real mid = (lo + hi) / 2;
    if (kurepa_derivative(mid, 2, p, config).value < 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

}  // namespace ineqcert::quad
