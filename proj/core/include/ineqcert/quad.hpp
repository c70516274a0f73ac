#pragma once

// Kurepa's left-factorial integral and its x-derivatives
//
//   K(x)       = int_0^inf e^-t (t^x - 1) / (t - 1) dt
//   K^(k)(x)   = int_0^inf e^-t t^x log^k(t) / (t - 1) dt      (k >= 1)
//
// evaluated at working precision. The range is split into
//   [0, s]            term-wise integration of the series of e^-t / (1 - t),
//   [s, 1 - eps]      adaptive Gauss-Legendre panels,
//   [1 - eps, 1 + eps] Gauss-Legendre on the series form of the removable
//                      singularity in u = t - 1,
//   [1 + eps, T]      adaptive Gauss-Legendre panels,
// and the tail beyond T is bounded analytically.

#include "ineqcert/real.hpp"

#include <vector>

namespace ineqcert::quad {

struct QuadratureConfig {
  /// Half-width of the series window around t = 1.
  double singularity_halfwidth = 0.125;
  /// Right end of the series window at t = 0.
  double origin_split = 0.5;
  /// Gauss-Legendre points per panel; 0 picks a value from the precision.
  int panel_nodes = 0;
  /// Multiplies the automatically chosen tail cutoff T.
  double tail_scale = 1.0;
  /// Budget on integrand evaluations before giving up.
  long max_evaluations = 2'000'000;
};

struct QuadratureResult {
  Real value;
  Real error_bound;
  long nodes_used = 0;
  Real tail_cutoff;
};

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<Real> nodes;
  std::vector<Real> weights;
};

/// n-point rule at the current working precision, cached per (n, precision).
const GaussLegendreRule& gauss_legendre(int n);

/// Highest derivative order accepted by kurepa_derivative.
inline constexpr int kMaxDerivativeOrder = 8;

/// K(x) for x >= 0. error_bound <= 10^-(digits - 10) or QuadratureError.
QuadratureResult kurepa(const Real& x, const Precision& p, const QuadratureConfig& config = {});

/// order-th derivative of K at x >= 0, 1 <= order <= kMaxDerivativeOrder.
QuadratureResult kurepa_derivative(const Real& x, int order, const Precision& p,
                                   const QuadratureConfig& config = {});

/// The unique zero c of K'' in [0, 1], by bisection to a bracket of width
/// below 1e-12 (returned as the bracket midpoint).
Real find_inflection(const Precision& p, const QuadratureConfig& config = {});

}  // namespace ineqcert::quad
