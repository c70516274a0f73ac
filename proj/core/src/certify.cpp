#include "ineqcert/certify.hpp"

#include "ineqcert/interval.hpp"

#include <chrono>
#include <map>
#include <sstream>
#include <utility>

namespace ineqcert {
namespace {

constexpr int kMaxSubdivisionDepth = 47;
constexpr long kMaxSubintervals = 1L << 20;

std::vector<Real> chebyshev_grid(const Real& a, const Real& b, int count) {
  std::vector<Real> points;
  points.reserve(static_cast<std::size_t>(count));
  const Real pi = pi_constant();
  const Real mid = (a + b) / 2;
  const Real half = (b - a) / 2;
  for (int j = 0; j < count; ++j) {
    if (j == 0) {
      points.push_back(a);
    } else if (j == count - 1) {
      points.push_back(b);
    } else {
      points.push_back(mid - half * cos(pi * j / (count - 1)));
    }
  }
  return points;
}

// g with memoization and an evaluation counter, shared across pipeline stages.
class CachedFunction {
 public:
  explicit CachedFunction(const GFunction& g) : g_(g) {}

  Real operator()(const Real& x) {
    auto it = cache_.find(x);
    if (it != cache_.end()) return it->second;
    ++evaluations_;
    return cache_.emplace(x, g_(x)).first->second;
  }

  long evaluations() const noexcept { return evaluations_; }

 private:
  const GFunction& g_;
  std::map<Real, Real> cache_;
  long evaluations_ = 0;
};

class StageClock {
 public:
  StageClock(ProofReport& report, std::string stage, const CachedFunction* counter)
      : report_(report),
        stage_(std::move(stage)),
        counter_(counter),
        start_evaluations_(counter ? counter->evaluations() : 0),
        start_(std::chrono::steady_clock::now()) {}

  ~StageClock() {
    StageCounters c;
    c.stage = stage_;
    c.evaluations = counter_ ? counter_->evaluations() - start_evaluations_ : 0;
    if (report_.settings.record_wall_clock) {
      c.wall_clock_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start_)
                            .count();
    }
    report_.timings.push_back(std::move(c));
  }

 private:
  ProofReport& report_;
  std::string stage_;
  const CachedFunction* counter_;
  long start_evaluations_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

const char* to_string(PreconditionOutcome outcome) {
  switch (outcome) {
    case PreconditionOutcome::kProceed: return "proceed";
    case PreconditionOutcome::kDisprovenAlpha: return "disproven_alpha";
    case PreconditionOutcome::kDisprovenBeta: return "disproven_beta";
  }
  return "unknown";
}

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kProven: return "proven";
    case Verdict::kDisproven: return "disproven";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "unknown";
}

PreconditionOutcome precondition_check(const Real& alpha, const Real& beta,
                                       const Real& zero_tolerance) {
  if (!is_finite(alpha) || !is_finite(beta)) {
    throw ConfigError("endpoint limits must be finite");
  }
  if (abs(alpha) <= zero_tolerance) {
    throw ConfigError("limit alpha vanishes: the exponent n is misconfigured (too small)");
  }
  if (abs(beta) <= zero_tolerance) {
    throw ConfigError("limit beta vanishes: the exponent m is misconfigured (too small)");
  }
  if (alpha < 0) return PreconditionOutcome::kDisprovenAlpha;
  if (beta < 0) return PreconditionOutcome::kDisprovenBeta;
  return PreconditionOutcome::kProceed;
}

ResidualStatistics residual_check(const RealFunction& g, const Polynomial& polynomial,
                                  const Real& delta, int grid_size, const Precision& p,
                                  const std::vector<Real>& nodes) {
  PrecisionScope scope(p);
  const int minimum = 4 * (polynomial.degree() + 2);
  if (grid_size < minimum) {
    throw ConfigError("residual grid needs at least " + std::to_string(minimum) + " points");
  }
  std::vector<Real> points = chebyshev_grid(polynomial.a(), polynomial.b(), grid_size);
  points.insert(points.end(), nodes.begin(), nodes.end());

  ResidualStatistics stats;
  stats.points = static_cast<int>(points.size());
  stats.delta = delta;
  stats.max_residual = -1;
  Real scale = 0;
  for (const Real& x : points) {
    const Real gx = g(x);
    scale = std::max(scale, Real(abs(gx)));
    const Real r = abs(gx - polynomial(x));
    if (r > stats.max_residual) {
      stats.max_residual = r;
      stats.max_location = x;
    }
  }
  stats.passed = stats.max_residual <= delta * (1 + Real("1e-6")) + residual_floor(p, scale);
  return stats;
}

PositivityCertificate certify_positive(const Polynomial& polynomial, const Real& delta,
                                       const Real& margin_factor, const Precision& p) {
  if (p.decimal_digits() < kMinimumCertificationDigits) {
    throw ConfigError("certification requires at least " +
                      std::to_string(kMinimumCertificationDigits) + " working digits");
  }
  PrecisionScope scope(p);
  if (!(margin_factor > 1 && margin_factor <= 2)) {
    throw ConfigError("margin factor must lie in (1, 2]");
  }
  if (delta < 0 || !is_finite(delta)) {
    throw ConfigError("delta must be a finite non-negative number");
  }
  // delta * margin rounded up.
  const Real inflated = (Interval(delta) * Interval(margin_factor)).hi();
  const Interval shift(inflated);

  const Real& a = polynomial.a();
  const Real& b = polynomial.b();
  const Real min_width = (b - a) * Real("1e-14");

  PositivityCertificate cert{polynomial, delta, margin_factor, {}, Real(0)};
  struct Piece {
    Real left;
    Real right;
    int depth;
  };
  std::vector<Piece> stack{{a, b, 0}};
  long processed = 0;
  bool first = true;
  while (!stack.empty()) {
    Piece piece = std::move(stack.back());
    stack.pop_back();
    ++processed;
    const Interval range = enclose(polynomial, piece.left, piece.right) - shift;
    const Real& bound = range.lo();
    if (bound > 0) {
      if (first || bound < cert.global_min_bound) cert.global_min_bound = bound;
      first = false;
      cert.subintervals.push_back({piece.left, piece.right, bound});
      continue;
    }
    if (piece.right - piece.left < min_width || piece.depth >= kMaxSubdivisionDepth ||
        processed >= kMaxSubintervals) {
      std::ostringstream os;
      os << "P - delta not certified positive on [" << to_decimal_string(piece.left, 20) << ", "
         << to_decimal_string(piece.right, 20) << "] (lower bound "
         << to_decimal_string(bound, 10) << "); delta may be too large for this degree";
      throw CertificationError(os.str(), piece.left, piece.right, bound);
    }
    Real mid = (piece.left + piece.right) / 2;
    stack.push_back({mid, piece.right, piece.depth + 1});
    stack.push_back({piece.left, std::move(mid), piece.depth + 1});
  }
  return cert;
}

const std::string& proof_caveat() {
  static const std::string text =
      "The polynomial P and error estimate delta come from a numerical Remez iteration at the "
      "stated working precision. The bound |g - P| <= delta is checked on a finite sample grid, "
      "not proven; the verdict is therefore conditional on that estimate being correct at the "
      "chosen accuracy. Positivity of P - delta is certified with outward-rounded interval "
      "arithmetic.";
  return text;
}

ProofReport prove_inequality(const Expression& f, const Real& a, const Real& b, const Real& n,
                             const Real& m, int degree, const ProofSettings& settings) {
  const Precision& p = settings.precision;
  if (p.decimal_digits() < kMinimumCertificationDigits) {
    throw ConfigError("proofs require at least " + std::to_string(kMinimumCertificationDigits) +
                      " working digits");
  }
  PrecisionScope scope(p);
  if (!is_finite(a) || !is_finite(b) || !(a < b)) {
    throw ConfigError("interval must satisfy a < b");
  }
  if (!is_finite(n) || !is_finite(m) || n < 0 || m < 0) {
    throw ConfigError("exponents n and m must be non-negative");
  }
  if (degree < 0) {
    throw ConfigError("degree must be non-negative");
  }
  if (settings.grid_multiplier < 1 || settings.sign_samples < 2 ||
      settings.residual_grid_size < 0) {
    throw ConfigError("grid sizes must be positive");
  }
  if (!(settings.margin_factor > 1 && settings.margin_factor <= 2)) {
    throw ConfigError("margin factor must lie in (1, 2]");
  }
  if (!(settings.tol > 0) || settings.tol < p.epsilon(10)) {
    throw ConfigError("tol must be at least 10^(-digits + 10)");
  }

  ProofReport report;
  report.function = print(f);
  report.a = a;
  report.b = b;
  report.n = n;
  report.m = m;
  report.degree = degree;
  report.caveat = proof_caveat();
  report.settings = settings;

  auto inconclusive = [&](const std::string& stage, const std::string& why) {
    report.verdict = Verdict::kInconclusive;
    report.failed_stage = stage;
    report.diagnostics.push_back(why);
    return report;
  };

  // Endpoint limits.
  Real alpha;
  Real beta;
  try {
    StageClock clock(report, "endpoint_limits", nullptr);
    const bool need_computed = !settings.alpha_override || !settings.beta_override;
    EndpointLimits computed;
    if (need_computed) {
      computed = endpoint_limits(f, a, b, n, m, p);
      for (const auto& note : computed.notes) report.diagnostics.push_back(note);
    }
    alpha = settings.alpha_override ? *settings.alpha_override : computed.alpha;
    beta = settings.beta_override ? *settings.beta_override : computed.beta;
    report.alpha_method = settings.alpha_override ? LimitMethod::kUserSupplied : computed.alpha_method;
    report.beta_method = settings.beta_override ? LimitMethod::kUserSupplied : computed.beta_method;
    report.alpha = alpha;
    report.beta = beta;
  } catch (const LimitError& e) {
    return inconclusive("endpoint_limits", std::string("misconfigured n, m: ") + e.what());
  } catch (const Error& e) {
    return inconclusive("endpoint_limits", e.what());
  }

  // Signs of the limits.
  try {
    const PreconditionOutcome outcome = precondition_check(alpha, beta, p.epsilon(30));
    if (alpha < 0) report.witnesses.push_back({"alpha", a, alpha});
    if (beta < 0) report.witnesses.push_back({"beta", b, beta});
    if (outcome != PreconditionOutcome::kProceed) {
      report.verdict = Verdict::kDisproven;
      report.failed_stage = "precondition";
      report.diagnostics.push_back(std::string("negative endpoint limit (") + to_string(outcome) +
                                   "): f takes negative values next to the endpoint");
      return report;
    }
  } catch (const ConfigError& e) {
    return inconclusive("precondition", e.what());
  }

  const GFunction g = build_g(f, a, b, n, m, alpha, beta, p,
                              report.alpha_method.value_or(LimitMethod::kUserSupplied),
                              report.beta_method.value_or(LimitMethod::kUserSupplied));
  CachedFunction cached(g);
  RealFunction g_function = [&cached](const Real& x) { return cached(x); };

  // Self-test of the construction: sign(g) = sign(f) inside.
  try {
    StageClock clock(report, "sign_equivalence", nullptr);
    const SignReport signs = sign_equivalence_check(g, settings.sign_samples);
    if (!signs.passed()) {
      return inconclusive("sign_equivalence",
                          "sign(g) differs from sign(f) at " +
                              std::to_string(signs.violations.size()) + " sample points");
    }
  } catch (const Error& e) {
    return inconclusive("sign_equivalence", e.what());
  }

  const int residual_points = settings.residual_grid_size > 0
                                  ? settings.residual_grid_size
                                  : 4 * settings.grid_multiplier * (degree + 2);

  // Interior scan for a negative value of f.
  try {
    StageClock clock(report, "interior_scan", &cached);
    const Real threshold = -p.epsilon(15);
    for (const Real& x : chebyshev_grid(a, b, residual_points)) {
      if (x == a || x == b) continue;
      if (cached(x) < 0) {
        const Real fx = evaluate(f, x, p);
        if (fx < threshold) {
          report.witnesses.push_back({"interior", x, fx});
          report.verdict = Verdict::kDisproven;
          report.failed_stage = "interior_scan";
          report.diagnostics.push_back("f is negative at an interior sample point");
          return report;
        }
      }
    }
  } catch (const Error& e) {
    return inconclusive("interior_scan", e.what());
  }

  // Minimax approximation.
  try {
    StageClock clock(report, "minimax", &cached);
    MinimaxSettings ms;
    ms.tol = settings.tol;
    ms.grid_multiplier = settings.grid_multiplier;
    report.minimax = minimax(g_function, a, b, degree, ms, p);
  } catch (const Error& e) {
    return inconclusive("minimax", e.what());
  }
  const MinimaxResult& mm = *report.minimax;

  try {
    StageClock clock(report, "equioscillation", &cached);
    report.equioscillation = verify_equioscillation(mm, g_function, settings.equioscillation_tol, p);
  } catch (const Error& e) {
    return inconclusive("equioscillation", e.what());
  }
  if (!report.equioscillation->passed) {
    return inconclusive("equioscillation", report.equioscillation->reason);
  }

  try {
    StageClock clock(report, "residual_check", &cached);
    report.residual_check =
        residual_check(g_function, mm.polynomial, mm.delta_hat, residual_points, p, mm.nodes);
  } catch (const Error& e) {
    return inconclusive("residual_check", e.what());
  }
  if (!report.residual_check->passed) {
    return inconclusive("residual_check",
                        "|g - P| reaches " + to_decimal_string(report.residual_check->max_residual, 12) +
                            " > delta at x = " +
                            to_decimal_string(report.residual_check->max_location, 12));
  }

  try {
    StageClock clock(report, "certify_positive", nullptr);
    report.certificate = certify_positive(mm.polynomial, mm.delta_hat, settings.margin_factor, p);
  } catch (const CertificationError& e) {
    return inconclusive("certify_positive",
                        std::string(e.what()) + "; a higher degree may succeed");
  } catch (const Error& e) {
    return inconclusive("certify_positive", e.what());
  }

  report.verdict = Verdict::kProven;
  report.failed_stage.clear();
  return report;
}

}  // namespace ineqcert
