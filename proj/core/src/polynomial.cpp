#include "ineqcert/polynomial.hpp"

#include "ineqcert/errors.hpp"

#include <utility>

namespace ineqcert {
namespace {

// Chebyshev coefficients of s * p(s) for p given in the Chebyshev basis.
std::vector<Real> multiply_by_s(const std::vector<Real>& c) {
  std::vector<Real> out(c.size() + 1, Real(0));
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (j == 0) {
      out[1] += c[0];
    } else {
      out[j + 1] += c[j] / 2;
      out[j - 1] += c[j] / 2;
    }
  }
  return out;
}

}  // namespace

Polynomial::Polynomial(std::vector<Real> coefficients, Real a, Real b)
    : coefficients_(std::move(coefficients)), a_(std::move(a)), b_(std::move(b)) {
  if (coefficients_.empty()) {
    coefficients_.push_back(Real(0));
  }
  if (!(a_ < b_)) {
    throw ConfigError("polynomial segment must satisfy a < b");
  }
}

Real Polynomial::to_unit(const Real& x) const { return (2 * x - a_ - b_) / (b_ - a_); }

Real Polynomial::operator()(const Real& x) const {
  const Real s = to_unit(x);
  Real b1 = 0;
  Real b2 = 0;
  for (std::size_t j = coefficients_.size(); j-- > 1;) {
    Real b0 = 2 * s * b1 - b2 + coefficients_[j];
    b2 = std::move(b1);
    b1 = std::move(b0);
  }
  return s * b1 - b2 + coefficients_[0];
}

std::vector<Real> Polynomial::to_monomial() const {
  const std::size_t n = coefficients_.size();
  // Monomial coefficients in s of T_j, by T_{j+1} = 2 s T_j - T_{j-1}.
  std::vector<Real> in_s(n, Real(0));
  std::vector<Real> previous(n, Real(0));
  std::vector<Real> current(n, Real(0));
  previous[0] = 1;  // T_0
  in_s[0] += coefficients_[0];
  if (n > 1) {
    current[1] = 1;  // T_1
    in_s[1] += coefficients_[1];
  }
  for (std::size_t j = 2; j < n; ++j) {
    std::vector<Real> next(n, Real(0));
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) next[i] += 2 * current[i - 1];
      next[i] -= previous[i];
    }
    for (std::size_t i = 0; i < n; ++i) in_s[i] += coefficients_[j] * next[i];
    previous = std::move(current);
    current = std::move(next);
  }
  // Substitute s = scale x + shift and expand.
  const Real scale = 2 / (b_ - a_);
  const Real shift = -(a_ + b_) / (b_ - a_);
  std::vector<Real> out(n, Real(0));
  std::vector<Real> power(n, Real(0));  // coefficients of (scale x + shift)^j
  power[0] = 1;
  for (std::size_t j = 0; j < n; ++j) {
    if (j > 0) {
      std::vector<Real> next(n, Real(0));
      for (std::size_t i = 0; i < n; ++i) {
        next[i] += shift * power[i];
        if (i > 0) next[i] += scale * power[i - 1];
      }
      power = std::move(next);
    }
    for (std::size_t i = 0; i < n; ++i) out[i] += in_s[j] * power[i];
  }
  return out;
}

Polynomial Polynomial::from_monomial(std::span<const Real> monomial, const Real& a,
                                     const Real& b) {
  // x = half s + mid; Horner in the Chebyshev basis.
  const Real half = (b - a) / 2;
  const Real mid = (a + b) / 2;
  std::vector<Real> acc{Real(0)};
  for (std::size_t j = monomial.size(); j-- > 0;) {
    // acc <- acc * (half s + mid) + m_j
    std::vector<Real> times_s = multiply_by_s(acc);
    std::vector<Real> next(times_s.size(), Real(0));
    for (std::size_t i = 0; i < times_s.size(); ++i) next[i] = half * times_s[i];
    for (std::size_t i = 0; i < acc.size(); ++i) next[i] += mid * acc[i];
    next[0] += monomial[j];
    acc = std::move(next);
  }
  acc.resize(std::max<std::size_t>(monomial.size(), 1));
  return Polynomial(std::move(acc), a, b);
}

Polynomial Polynomial::derivative() const {
  const std::size_t n = coefficients_.size();
  if (n <= 1) {
    return Polynomial({Real(0)}, a_, b_);
  }
  // d/ds: c'_{j-1} = c'_{j+1} + 2 j c_j, with c'_0 halved.
  std::vector<Real> d(n + 1, Real(0));
  for (std::size_t j = n - 1; j >= 1; --j) {
    d[j - 1] = d[j + 1] + 2 * Real(static_cast<long>(j)) * coefficients_[j];
  }
  d[0] /= 2;
  d.resize(n - 1);
  const Real chain = 2 / (b_ - a_);
  for (auto& c : d) c *= chain;
  return Polynomial(std::move(d), a_, b_);
}

Polynomial Polynomial::scaled(const Real& factor) const {
  std::vector<Real> c = coefficients_;
  for (auto& v : c) v *= factor;
  return Polynomial(std::move(c), a_, b_);
}

}  // namespace ineqcert
