#pragma once

// Second (multi-point exchange) Remez algorithm for the best uniform
// polynomial approximation of a continuous function on [a, b].

#include "ineqcert/errors.hpp"
#include "ineqcert/polynomial.hpp"
#include "ineqcert/real.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ineqcert {

using RealFunction = std::function<Real(const Real&)>;

/// Levelled system has no unique solution (coincident or degenerate nodes).
class SingularSystemError : public Error {
 public:
  using Error::Error;
};

/// Residual shows fewer than degree + 2 sign alternations on the search grid.
class AlternationLostError : public Error {
 public:
  AlternationLostError(const std::string& message, int sign_runs, int required)
      : Error(message), sign_runs_(sign_runs), required_(required) {}
  int sign_runs() const noexcept { return sign_runs_; }
  int required() const noexcept { return required_; }

 private:
  int sign_runs_;
  int required_;
};

/// Iteration cap reached before the node residuals levelled out.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& message, std::vector<Real> history)
      : Error(message), history_(std::move(history)) {}
  const std::vector<Real>& history() const noexcept { return history_; }

 private:
  std::vector<Real> history_;
};

struct MinimaxSettings {
  /// Relative spread of node residual magnitudes accepted as levelled.
  Real tol = Real("1e-12");
  /// Search grid has grid_multiplier * (degree + 2) points.
  int grid_multiplier = 64;
  int max_iterations = 50;
};

struct MinimaxResult {
  Polynomial polynomial;
  /// Largest |g - P| found on the search grid and refined extrema.
  Real delta_hat;
  /// degree + 2 alternation points, strictly increasing.
  std::vector<Real> nodes;
  /// g - P at the nodes.
  std::vector<Real> node_residuals;
  int iterations = 0;
  /// |h| of each levelled solve.
  std::vector<Real> levelled_error_history;
  Real lower_bound;
  Real upper_bound;
  /// Residual vanished to working precision (g is a polynomial of this degree).
  bool exact = false;
  long evaluations = 0;
};

/// Chebyshev extremum abscissae cos(j pi / (k + 1)), j = 0..k+1, mapped to
/// [a, b] in increasing order.
std::vector<Real> initial_nodes(const Real& a, const Real& b, int degree);

struct LevelledSolution {
  Polynomial polynomial;
  /// h in g(t_i) = P(t_i) + (-1)^i h.
  Real levelled_error;
};

/// Solves the (k+2) x (k+2) levelled system by full-pivot elimination.
LevelledSolution solve_levelled_system(const RealFunction& g, std::span<const Real> nodes,
                                       const Real& a, const Real& b, const Precision& p);

struct ExchangeResult {
  std::vector<Real> nodes;
  std::vector<Real> residuals;
  /// max |g - P| over the grid and the new nodes.
  Real max_residual;
  /// Residual below the working-precision floor everywhere; nodes unchanged.
  bool exact = false;
};

/// One multi-point exchange: local extrema of |g - P| on a Chebyshev grid of
/// grid_multiplier * (k + 2) points, refined by golden-section search to width
/// (b - a) 1e-12, reduced to k + 2 alternating points that keep the global
/// maximum.
ExchangeResult exchange(const RealFunction& g, const Polynomial& polynomial,
                        std::span<const Real> current_nodes, const Precision& p,
                        int grid_multiplier = 64);

/// Iterates solve + exchange until the node residuals level out to
/// settings.tol or the iteration cap is hit (NonConvergenceError).
MinimaxResult minimax(const RealFunction& g, const Real& a, const Real& b, int degree,
                      const MinimaxSettings& settings, const Precision& p);

struct EquioscillationReport {
  bool passed = false;
  std::vector<Real> residuals;
  /// Spread of |residual| relative to delta_hat.
  Real spread;
  std::optional<int> offending_node;
  std::string reason;
};

/// Checks alternation and levelling of g - P at the result's nodes.
EquioscillationReport verify_equioscillation(const MinimaxResult& result, const RealFunction& g,
                                             const Real& rel_tol, const Precision& p);

/// Absolute residual floor below which an approximation counts as exact.
Real residual_floor(const Precision& p, const Real& scale);

}  // namespace ineqcert
