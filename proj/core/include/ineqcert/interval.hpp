#pragma once

#include "ineqcert/polynomial.hpp"
#include "ineqcert/real.hpp"

namespace ineqcert {

/// Closed interval [lo, hi] whose arithmetic rounds lo down and hi up, so the
/// result encloses every value reachable from the operands.
class Interval {
 public:
  Interval() : lo_(0), hi_(0) {}
  explicit Interval(const Real& point) : lo_(point), hi_(point) {}
  Interval(Real lo, Real hi);

  const Real& lo() const noexcept { return lo_; }
  const Real& hi() const noexcept { return hi_; }
  bool contains(const Real& v) const { return lo_ <= v && v <= hi_; }
  bool contains_zero() const { return lo_ <= 0 && 0 <= hi_; }

  friend Interval operator+(const Interval& x, const Interval& y);
  friend Interval operator-(const Interval& x, const Interval& y);
  friend Interval operator*(const Interval& x, const Interval& y);
  /// Throws DomainError when y contains zero.
  friend Interval operator/(const Interval& x, const Interval& y);
  friend Interval operator-(const Interval& x);

  /// Intersection; callers guarantee the operands overlap.
  static Interval intersect(const Interval& x, const Interval& y);

 private:
  Real lo_;
  Real hi_;
};

/// Enclosure of the polynomial's range over [lo, hi]: the intersection of the
/// interval Clenshaw evaluation and the mean-value form around the midpoint.
Interval enclose(const Polynomial& p, const Real& lo, const Real& hi);

}  // namespace ineqcert
