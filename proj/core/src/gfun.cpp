#include "ineqcert/gfun.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace ineqcert {

const char* to_string(LimitMethod method) {
  switch (method) {
    case LimitMethod::kTaylor: return "taylor";
    case LimitMethod::kNumeric: return "numeric";
    case LimitMethod::kUserSupplied: return "user_supplied";
  }
  return "unknown";
}

namespace {

const char* endpoint_name(Endpoint e) { return e == Endpoint::kLeft ? "a" : "b"; }

Real factorial(int k) {
  Real r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

// h^e for h > 0, exact for integer e.
Real power(const Real& h, const Real& e) {
  int k = 0;
  if (is_small_integer(e, &k)) {
    Real r;
    mpfr_pow_si(r.backend().data(), h.backend().data(), k, MPFR_RNDN);
    return r;
  }
  return pow(h, e);
}

Real taylor_limit(const Expression& f, const Real& point, int order, Endpoint endpoint,
                  const Precision& p) {
  const Real tolerance = p.epsilon(30);
  Expression derivative = f;
  for (int k = 0; k < order; ++k) {
    const Real value = evaluate(derivative, point, p);
    if (abs(value) > tolerance) {
      std::ostringstream os;
      os << "derivative of order " << k << " does not vanish at " << endpoint_name(endpoint)
         << " (value " << to_decimal_string(value, 8) << "); multiplicity " << order
         << " is too large";
      throw LimitError(LimitError::Kind::kMultiplicity, endpoint, os.str());
    }
    derivative = differentiate(derivative, 1);
  }
  return evaluate(derivative, point, p) / factorial(order);
}

// Quotient sequence toward one endpoint and its accelerated limit.
Real numeric_limit(const Expression& f, const Real& a, const Real& b, const Real& n,
                   const Real& m, Endpoint endpoint, const Precision& p) {
  constexpr int kFirst = 3;
  constexpr int kLast = 12;
  const Real width = b - a;
  std::vector<Real> sequence;
  for (int j = kFirst; j <= kLast; ++j) {
    const Real h = width / pow(Real(4), j);
    Real value;
    if (endpoint == Endpoint::kLeft) {
      value = evaluate(f, a + h, p) / (power(h, n) * power(width - h, m));
    } else {
      value = evaluate(f, b - h, p) / (power(width - h, n) * power(h, m));
    }
    sequence.push_back(value);
  }
  const std::size_t count = sequence.size();
  if (sequence.back() == 0) {
    throw LimitError(LimitError::Kind::kZeroLimit, endpoint,
                     std::string("quotient vanishes near ") + endpoint_name(endpoint) +
                         "; the exponent is too small",
                     std::numeric_limits<double>::infinity());
  }

  // Growth exponents of |s| against h over the last three steps.
  std::vector<double> growth;
  for (std::size_t j = count - 3; j + 1 < count; ++j) {
    if (sequence[j] == 0) {
      growth.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    const Real ratio = abs(sequence[j + 1] / sequence[j]);
    growth.push_back(-(log(ratio) / log(Real(4))).convert_to<double>());
  }
  const double last = growth.back();
  bool consistent = std::abs(last) > 0.05;
  for (double g : growth) {
    if (!(std::abs(g - last) <= 0.1 * std::abs(last))) consistent = false;
  }
  if (consistent) {
    std::ostringstream os;
    os << "quotient near " << endpoint_name(endpoint) << " behaves like h^"
       << std::setprecision(3) << last << "; ";
    if (last < 0) {
      os << "the exponent is too large by about " << -last;
      throw LimitError(LimitError::Kind::kDivergence, endpoint, os.str(), last);
    }
    os << "the exponent is too small by about " << last;
    throw LimitError(LimitError::Kind::kZeroLimit, endpoint, os.str(), last);
  }

  // Iterated Aitken: each pass removes one power-of-h error term whose order is
  // estimated from consecutive differences (real exponents give non-integer
  // orders). The level whose last two entries agree best is used.
  std::vector<std::vector<Real>> levels{sequence};
  while (levels.back().size() >= 3) {
    const std::vector<Real>& s = levels.back();
    std::vector<Real> next;
    for (std::size_t j = 0; j + 2 < s.size(); ++j) {
      const Real d1 = s[j + 1] - s[j];
      const Real d2 = s[j + 2] - s[j + 1];
      const Real curvature = d2 - d1;
      next.push_back(curvature == 0 ? s[j + 2] : Real(s[j + 2] - d2 * d2 / curvature));
    }
    levels.push_back(std::move(next));
  }
  Real previous;
  Real current;
  Real spread = -1;
  for (const auto& level : levels) {
    if (level.size() < 2) break;
    const Real gap = abs(level[level.size() - 1] - level[level.size() - 2]);
    if (spread < 0 || gap < spread) {
      spread = gap;
      previous = level[level.size() - 2];
      current = level.back();
    }
  }
  if (spread > Real("1e-8") * abs(current) && spread > p.epsilon(10)) {
    std::ostringstream os;
    os << "extrapolated limit at " << endpoint_name(endpoint) << " did not settle (last values "
       << to_decimal_string(previous, 10) << ", " << to_decimal_string(current, 10) << ")";
    throw LimitError(LimitError::Kind::kNoConvergence, endpoint, os.str());
  }
  if (abs(current) <= p.epsilon(10)) {
    throw LimitError(LimitError::Kind::kZeroLimit, endpoint,
                     std::string("extrapolated limit at ") + endpoint_name(endpoint) +
                         " is zero; the exponent is too small");
  }
  return current;
}

void validate_interval(const Real& a, const Real& b) {
  if (!is_finite(a) || !is_finite(b) || !(a < b)) {
    throw ConfigError("interval must satisfy a < b");
  }
}

bool relative_agreement(const Real& x, const Real& y, const Real& tolerance) {
  return abs(x - y) <= tolerance * std::max(abs(x), abs(y));
}

}  // namespace

EndpointLimits endpoint_limits_taylor(const Expression& f, const Real& a, const Real& b, int n,
                                      int m, const Precision& p) {
  PrecisionScope scope(p);
  validate_interval(a, b);
  if (n < 0 || m < 0) {
    throw ConfigError("Taylor limits need non-negative integer exponents");
  }
  const Real width = b - a;
  EndpointLimits limits;
  limits.alpha = taylor_limit(f, a, n, Endpoint::kLeft, p) / power(width, Real(m));
  limits.beta = taylor_limit(f, b, m, Endpoint::kRight, p) / power(width, Real(n));
  if (m % 2 == 1) {
    limits.beta = -limits.beta;
  }
  limits.alpha_method = LimitMethod::kTaylor;
  limits.beta_method = LimitMethod::kTaylor;
  return limits;
}

EndpointLimits endpoint_limits_numeric(const Expression& f, const Real& a, const Real& b,
                                       const Real& n, const Real& m, const Precision& p) {
  PrecisionScope scope(p);
  validate_interval(a, b);
  if (n < 0 || m < 0) {
    throw ConfigError("exponents n and m must be non-negative");
  }
  EndpointLimits limits;
  limits.alpha = numeric_limit(f, a, b, n, m, Endpoint::kLeft, p);
  limits.beta = numeric_limit(f, a, b, n, m, Endpoint::kRight, p);
  limits.alpha_method = LimitMethod::kNumeric;
  limits.beta_method = LimitMethod::kNumeric;
  return limits;
}

EndpointLimits endpoint_limits(const Expression& f, const Real& a, const Real& b, const Real& n,
                               const Real& m, const Precision& p) {
  PrecisionScope scope(p);
  validate_interval(a, b);
  if (n < 0 || m < 0) {
    throw ConfigError("exponents n and m must be non-negative");
  }
  EndpointLimits limits;
  const Real cross_check_tolerance("1e-6");

  auto one_endpoint = [&](Endpoint endpoint, Real* limit, LimitMethod* method) {
    const Real& exponent = endpoint == Endpoint::kLeft ? n : m;
    const char* name = endpoint_name(endpoint);
    int integer_exponent = 0;
    if (is_small_integer(exponent, &integer_exponent)) {
      try {
        // The other endpoint's exponent only enters through (b - a)^k.
        const Real width = b - a;
        if (endpoint == Endpoint::kLeft) {
          *limit = taylor_limit(f, a, integer_exponent, endpoint, p) / power(width, m);
        } else {
          *limit = taylor_limit(f, b, integer_exponent, endpoint, p) / power(width, n);
          if (integer_exponent % 2 == 1) *limit = -*limit;
        }
        *method = LimitMethod::kTaylor;
        try {
          const Real numeric = numeric_limit(f, a, b, n, m, endpoint, p);
          if (!relative_agreement(*limit, numeric, cross_check_tolerance)) {
            limits.notes.push_back(std::string("taylor and numeric limits disagree at ") + name +
                                   ": " + to_decimal_string(*limit, 12) + " vs " +
                                   to_decimal_string(numeric, 12));
          }
        } catch (const Error& e) {
          limits.notes.push_back(std::string("numeric cross-check at ") + name +
                                 " failed: " + e.what());
        }
        return;
      } catch (const DomainError& e) {
        limits.notes.push_back(std::string("taylor limit at ") + name +
                               " not evaluable (" + e.what() + "); using numeric extrapolation");
      }
    }
    *limit = numeric_limit(f, a, b, n, m, endpoint, p);
    *method = LimitMethod::kNumeric;
  };

  one_endpoint(Endpoint::kLeft, &limits.alpha, &limits.alpha_method);
  one_endpoint(Endpoint::kRight, &limits.beta, &limits.beta_method);
  return limits;
}

// ---------------------------------------------------------------------------

Real GFunction::denominator(const Real& x) const {
  PrecisionScope scope(precision_);
  return power(x - a_, n_) * power(b_ - x, m_);
}

Real GFunction::quotient(const Real& x) const {
  PrecisionScope scope(precision_);
  return evaluate(f_, x, precision_) / denominator(x);
}

Real GFunction::operator()(const Real& x) const {
  PrecisionScope scope(precision_);
  if (x < a_ || x > b_) {
    throw DomainError("g evaluated outside [a, b]");
  }
  if (x == a_) return alpha_;
  if (x == b_) return beta_;
  if (x < left_anchor_) {
    return alpha_ + (left_anchor_value_ - alpha_) * (x - a_) / (left_anchor_ - a_);
  }
  if (x > right_anchor_) {
    return beta_ + (right_anchor_value_ - beta_) * (b_ - x) / (b_ - right_anchor_);
  }
  return quotient(x);
}

GFunction build_g(const Expression& f, const Real& a, const Real& b, const Real& n, const Real& m,
                  const Real& alpha, const Real& beta, const Precision& p,
                  LimitMethod alpha_method, LimitMethod beta_method) {
  PrecisionScope scope(p);
  validate_interval(a, b);
  if (n < 0 || m < 0) {
    throw ConfigError("exponents n and m must be non-negative");
  }
  if (!is_finite(alpha) || !is_finite(beta) || alpha == 0 || beta == 0) {
    throw ConfigError("endpoint limits must be finite and non-zero");
  }
  GFunction g(f, p);
  g.a_ = a;
  g.b_ = b;
  g.n_ = n;
  g.m_ = m;
  g.alpha_ = alpha;
  g.beta_ = beta;
  g.alpha_method_ = alpha_method;
  g.beta_method_ = beta_method;
  const Real offset = (b - a) * pow10(-GFunction::kBlendExponent);
  g.left_anchor_ = a + offset;
  g.right_anchor_ = b - offset;
  g.left_anchor_value_ = g.quotient(g.left_anchor_);
  g.right_anchor_value_ = g.quotient(g.right_anchor_);
  return g;
}

SignReport sign_equivalence_check(const GFunction& g, int samples) {
  const Precision& p = g.precision();
  PrecisionScope scope(p);
  if (samples < 2) {
    throw ConfigError("sign check needs at least two samples");
  }
  SignReport report;
  report.samples = samples;
  const Real pi = pi_constant();
  const Real mid = (g.a() + g.b()) / 2;
  const Real half = (g.b() - g.a()) / 2;
  auto sign = [](const Real& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); };
  for (int i = 0; i < samples; ++i) {
    const Real x = mid + half * cos(pi * (2 * i + 1) / (2 * samples));
    try {
      const Real f_value = evaluate(g.f(), x, p);
      const int f_sign = sign(f_value);
      const bool blended = x - g.a() < half * 2 * pow10(-GFunction::kBlendExponent) ||
                           g.b() - x < half * 2 * pow10(-GFunction::kBlendExponent);
      const int g_sign = sign(blended ? g(x) : Real(f_value / g.denominator(x)));
      if (f_sign != g_sign) {
        report.violations.push_back({x, f_sign, g_sign, "sign mismatch"});
      }
    } catch (const Error& e) {
      report.violations.push_back({x, 0, 0, e.what()});
    }
  }
  return report;
}

}  // namespace ineqcert
