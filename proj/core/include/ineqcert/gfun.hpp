#pragma once

// The continuous quotient g(x) = f(x) / ((x - a)^n (b - x)^m), closed at the
// endpoints by its limits alpha (x -> a+) and beta (x -> b-). On (a, b) the
// denominator is positive, so g and f share their sign there.

#include "ineqcert/errors.hpp"
#include "ineqcert/expr.hpp"
#include "ineqcert/real.hpp"

#include <string>
#include <vector>

namespace ineqcert {

enum class LimitMethod { kTaylor, kNumeric, kUserSupplied };

const char* to_string(LimitMethod method);

enum class Endpoint { kLeft, kRight };

/// Failure to obtain a finite non-zero endpoint limit.
class LimitError : public Error {
 public:
  enum class Kind {
    kDivergence,     // quotient grows: exponent too large
    kZeroLimit,      // quotient tends to zero: exponent too small
    kNoConvergence,  // extrapolation did not settle
    kMultiplicity,   // a lower-order derivative does not vanish
  };

  LimitError(Kind kind, Endpoint endpoint, const std::string& message, double hint_exponent = 0)
      : Error(message), kind_(kind), endpoint_(endpoint), hint_(hint_exponent) {}

  Kind kind() const noexcept { return kind_; }
  Endpoint endpoint() const noexcept { return endpoint_; }
  /// Observed growth exponent of the quotient, h^hint as h -> 0 (divergence
  /// and zero-limit errors only).
  double hint_exponent() const noexcept { return hint_; }

 private:
  Kind kind_;
  Endpoint endpoint_;
  double hint_;
};

struct EndpointLimits {
  Real alpha;
  Real beta;
  LimitMethod alpha_method = LimitMethod::kTaylor;
  LimitMethod beta_method = LimitMethod::kTaylor;
  /// Cross-check notes (Taylor vs numeric disagreement, fallbacks taken).
  std::vector<std::string> notes;
};

/// alpha = f^(n)(a) / (n! (b-a)^m), beta = (-1)^m f^(m)(b) / (m! (b-a)^n).
/// Lower-order derivatives must vanish to 10^-(digits - 30) (kMultiplicity
/// otherwise); derivative evaluation failures surface as DomainError.
EndpointLimits endpoint_limits_taylor(const Expression& f, const Real& a, const Real& b, int n,
                                      int m, const Precision& p);

/// Extrapolates the quotient along x_j = a + (b - a) 4^-j, j = 3..12 (mirrored
/// at b) and accelerates it with an estimated error order. Accepts when two
/// successive accelerated values agree to 1e-8 relative.
EndpointLimits endpoint_limits_numeric(const Expression& f, const Real& a, const Real& b,
                                       const Real& n, const Real& m, const Precision& p);

/// Taylor per endpoint when its exponent is an integer (numeric cross-check
/// recorded in notes), numeric otherwise or when the Taylor derivative cannot
/// be evaluated at that endpoint.
EndpointLimits endpoint_limits(const Expression& f, const Real& a, const Real& b, const Real& n,
                               const Real& m, const Precision& p);

class GFunction {
 public:
  /// Distance from an endpoint, relative to b - a, inside which evaluation
  /// blends linearly toward the limit.
  static constexpr int kBlendExponent = 8;

  const Expression& f() const noexcept { return f_; }
  const Real& a() const noexcept { return a_; }
  const Real& b() const noexcept { return b_; }
  const Real& n() const noexcept { return n_; }
  const Real& m() const noexcept { return m_; }
  const Real& alpha() const noexcept { return alpha_; }
  const Real& beta() const noexcept { return beta_; }
  LimitMethod alpha_method() const noexcept { return alpha_method_; }
  LimitMethod beta_method() const noexcept { return beta_method_; }
  const Precision& precision() const noexcept { return precision_; }

  /// g(x) for x in [a, b]; DomainError outside.
  Real operator()(const Real& x) const;

  /// f(x) / ((x - a)^n (b - x)^m) without endpoint handling, x in (a, b).
  Real quotient(const Real& x) const;

  /// (x - a)^n (b - x)^m.
  Real denominator(const Real& x) const;

 private:
  friend GFunction build_g(const Expression&, const Real&, const Real&, const Real&, const Real&,
                           const Real&, const Real&, const Precision&, LimitMethod, LimitMethod);
  GFunction(Expression f, Precision p) : f_(std::move(f)), precision_(p) {}

  Expression f_;
  Precision precision_;
  Real a_, b_, n_, m_, alpha_, beta_;
  LimitMethod alpha_method_ = LimitMethod::kUserSupplied;
  LimitMethod beta_method_ = LimitMethod::kUserSupplied;
  Real left_anchor_, left_anchor_value_;
  Real right_anchor_, right_anchor_value_;
};

/// alpha and beta must be finite and non-zero (ConfigError otherwise).
GFunction build_g(const Expression& f, const Real& a, const Real& b, const Real& n, const Real& m,
                  const Real& alpha, const Real& beta, const Precision& p,
                  LimitMethod alpha_method = LimitMethod::kUserSupplied,
                  LimitMethod beta_method = LimitMethod::kUserSupplied);

struct SignViolation {
  Real x;
  int f_sign = 0;
  int g_sign = 0;
  std::string note;
};

struct SignReport {
  int samples = 0;
  std::vector<SignViolation> violations;
  bool passed() const noexcept { return violations.empty(); }
};

/// Compares sign(g) with sign(f) at `samples` interior Chebyshev points.
SignReport sign_equivalence_check(const GFunction& g, int samples);

}  // namespace ineqcert
