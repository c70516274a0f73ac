#pragma once

// Proof pipeline for f(x) >= 0 on [a, b]:
//   endpoint limits -> sign precondition -> g -> minimax (P, delta) ->
//   equioscillation check -> sampled |g - P| <= delta check ->
//   interval certificate of P(x) - delta > 0.

#include "ineqcert/errors.hpp"
#include "ineqcert/expr.hpp"
#include "ineqcert/gfun.hpp"
#include "ineqcert/polynomial.hpp"
#include "ineqcert/real.hpp"
#include "ineqcert/remez.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ineqcert {

/// Certification needs at least this many working digits.
inline constexpr int kMinimumCertificationDigits = 30;

enum class PreconditionOutcome { kProceed, kDisprovenAlpha, kDisprovenBeta };

const char* to_string(PreconditionOutcome outcome);

/// A limit that vanishes (|value| <= zero_tolerance) contradicts the choice of
/// n, m: ConfigError. Otherwise proceed iff both limits are positive.
PreconditionOutcome precondition_check(const Real& alpha, const Real& beta,
                                       const Real& zero_tolerance = Real(0));

struct ResidualStatistics {
  int points = 0;
  Real max_residual;
  Real max_location;
  Real delta;
  bool passed = false;
};

/// max |g - P| over grid_size Chebyshev points plus `nodes`; passes iff it is
/// at most delta (1 + 1e-6) plus the working-precision floor.
ResidualStatistics residual_check(const RealFunction& g, const Polynomial& polynomial,
                                  const Real& delta, int grid_size, const Precision& p,
                                  const std::vector<Real>& nodes = {});

struct CertifiedSubinterval {
  Real left;
  Real right;
  Real lower_bound;
};

struct PositivityCertificate {
  Polynomial polynomial;
  Real delta;
  Real margin_factor;
  std::vector<CertifiedSubinterval> subintervals;
  Real global_min_bound;
};

/// P - delta * margin could not be shown positive.
class CertificationError : public Error {
 public:
  CertificationError(const std::string& message, Real left, Real right, Real bound)
      : Error(message), left_(std::move(left)), right_(std::move(right)), bound_(std::move(bound)) {}
  const Real& left() const noexcept { return left_; }
  const Real& right() const noexcept { return right_; }
  const Real& bound() const noexcept { return bound_; }

 private:
  Real left_;
  Real right_;
  Real bound_;
};

/// Bisects [a, b] until interval enclosures of P - delta * margin_factor are
/// positive on every piece, or a piece narrower than (b - a) 1e-14 still fails
/// (CertificationError). margin_factor in (1, 2], delta >= 0,
/// p >= kMinimumCertificationDigits.
PositivityCertificate certify_positive(const Polynomial& polynomial, const Real& delta,
                                       const Real& margin_factor, const Precision& p);

enum class Verdict { kProven, kDisproven, kInconclusive };

const char* to_string(Verdict verdict);

struct ProofSettings {
  Precision precision;
  Real tol = Real("1e-12");
  int grid_multiplier = 64;
  Real margin_factor = Real("1.000001");
  /// Equioscillation acceptance (relative spread of node residuals).
  Real equioscillation_tol = Real("1e-6");
  /// Residual-check grid; 0 selects 4 * grid_multiplier * (degree + 2).
  int residual_grid_size = 0;
  int sign_samples = 64;
  std::optional<Real> alpha_override;
  std::optional<Real> beta_override;
  /// Adds wall-clock stage timings to the report (makes it non-reproducible).
  bool record_wall_clock = false;
};

struct Witness {
  std::string kind;  // "alpha", "beta" or "interior"
  Real location;
  Real value;
};

struct StageCounters {
  std::string stage;
  long evaluations = 0;
  double wall_clock_ms = 0;
};

struct ProofReport {
  Verdict verdict = Verdict::kInconclusive;
  /// Stage that decided a non-proven verdict.
  std::string failed_stage;
  std::vector<std::string> diagnostics;

  std::string function;
  Real a, b, n, m;
  int degree = 0;
  std::optional<Real> alpha;
  std::optional<Real> beta;
  std::optional<LimitMethod> alpha_method;
  std::optional<LimitMethod> beta_method;

  std::vector<Witness> witnesses;
  std::optional<MinimaxResult> minimax;
  std::optional<EquioscillationReport> equioscillation;
  std::optional<ResidualStatistics> residual_check;
  std::optional<PositivityCertificate> certificate;

  std::string caveat;
  ProofSettings settings;
  std::vector<StageCounters> timings;
};

/// Fixed text attached to every report.
const std::string& proof_caveat();

/// Runs the pipeline. Malformed input (bad interval, negative exponents,
/// precision below kMinimumCertificationDigits) throws ConfigError; failures of
/// later stages produce an inconclusive report naming the stage.
ProofReport prove_inequality(const Expression& f, const Real& a, const Real& b, const Real& n,
                             const Real& m, int degree, const ProofSettings& settings);

}  // namespace ineqcert
