#pragma once

#include "ineqcert/real.hpp"

#include <span>
#include <vector>

namespace ineqcert {

/// Polynomial on [a, b] in the Chebyshev basis of that segment:
///   P(x) = sum_j c_j T_j(s),   s = (2x - a - b) / (b - a).
class Polynomial {
 public:
  Polynomial(std::vector<Real> coefficients, Real a, Real b);

  /// Interpolates monomial coefficients m_j of x^j (original variable).
  static Polynomial from_monomial(std::span<const Real> monomial, const Real& a, const Real& b);

  int degree() const noexcept { return static_cast<int>(coefficients_.size()) - 1; }
  const std::vector<Real>& coefficients() const noexcept { return coefficients_; }
  const Real& a() const noexcept { return a_; }
  const Real& b() const noexcept { return b_; }

  /// Clenshaw recurrence.
  Real operator()(const Real& x) const;

  /// Coefficients of x^j, j = 0..degree.
  std::vector<Real> to_monomial() const;

  /// d/dx, still in the Chebyshev basis of [a, b].
  Polynomial derivative() const;

  Polynomial scaled(const Real& factor) const;

  Real to_unit(const Real& x) const;

 private:
  std::vector<Real> coefficients_;
  Real a_;
  Real b_;
};

}  // namespace ineqcert
