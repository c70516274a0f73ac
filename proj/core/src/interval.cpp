#include "ineqcert/interval.hpp"

#include "ineqcert/errors.hpp"

#include <utility>
#include <vector>

namespace ineqcert {
namespace {

using BinaryMpfr = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

Real apply(BinaryMpfr op, const Real& x, const Real& y, mpfr_rnd_t mode) {
  Real r;
  op(r.backend().data(), x.backend().data(), y.backend().data(), mode);
  return r;
}

Interval clenshaw(const std::vector<Interval>& c, const Interval& s) {
  Interval b1;
  Interval b2;
  const Interval two(Real(2));
  for (std::size_t j = c.size(); j-- > 1;) {
    Interval b0 = two * s * b1 - b2 + c[j];
    b2 = std::move(b1);
    b1 = std::move(b0);
  }
  return s * b1 - b2 + c[0];
}

}  // namespace

Interval::Interval(Real lo, Real hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (hi_ < lo_) {
    throw DomainError("interval lower end exceeds upper end");
  }
}

Interval operator+(const Interval& x, const Interval& y) {
  return Interval(apply(mpfr_add, x.lo_, y.lo_, MPFR_RNDD), apply(mpfr_add, x.hi_, y.hi_, MPFR_RNDU));
}

Interval operator-(const Interval& x, const Interval& y) {
  return Interval(apply(mpfr_sub, x.lo_, y.hi_, MPFR_RNDD), apply(mpfr_sub, x.hi_, y.lo_, MPFR_RNDU));
}

Interval operator-(const Interval& x) { return Interval(-x.hi_, -x.lo_); }

Interval operator*(const Interval& x, const Interval& y) {
  const Real* xs[2] = {&x.lo_, &x.hi_};
  const Real* ys[2] = {&y.lo_, &y.hi_};
  Real lo;
  Real hi;
  bool first = true;
  for (const Real* u : xs) {
    for (const Real* v : ys) {
      Real down = apply(mpfr_mul, *u, *v, MPFR_RNDD);
      Real up = apply(mpfr_mul, *u, *v, MPFR_RNDU);
      if (first || down < lo) lo = down;
      if (first || up > hi) hi = up;
      first = false;
    }
  }
  return Interval(std::move(lo), std::move(hi));
}

Interval operator/(const Interval& x, const Interval& y) {
  if (y.contains_zero()) {
    throw DomainError("interval division by an interval containing zero");
  }
  const Real one(1);
  const Interval reciprocal(apply(mpfr_div, one, y.hi_, MPFR_RNDD),
                            apply(mpfr_div, one, y.lo_, MPFR_RNDU));
  return x * reciprocal;
}

Interval Interval::intersect(const Interval& x, const Interval& y) {
  return Interval(std::max(x.lo_, y.lo_), std::min(x.hi_, y.hi_));
}

Interval enclose(const Polynomial& p, const Real& lo, const Real& hi) {
  const Interval a(p.a());
  const Interval b(p.b());
  const Interval two(Real(2));
  const Interval width = b - a;
  auto to_unit = [&](const Interval& x) { return (two * x - a - b) / width; };

  std::vector<Interval> c;
  for (const Real& v : p.coefficients()) c.emplace_back(v);

  const Interval box(lo, hi);
  Interval naive = clenshaw(c, to_unit(box));
  if (c.size() <= 1) {
    return naive;
  }

  // Derivative coefficients: c'_{j-1} = c'_{j+1} + 2 j c_j, c'_0 halved, times 2/(b-a).
  const std::size_t n = c.size();
  std::vector<Interval> d(n + 1);
  for (std::size_t j = n - 1; j >= 1; --j) {
    d[j - 1] = d[j + 1] + Interval(Real(2 * static_cast<long>(j))) * c[j];
  }
  d[0] = d[0] / two;
  d.resize(n - 1);
  const Interval chain = two / width;
  for (auto& v : d) v = v * chain;

  const Real mid = (lo + hi) / 2;
  const Interval at_mid = clenshaw(c, to_unit(Interval(mid)));
  const Interval slope = clenshaw(d, to_unit(box));
  const Interval mean_value = at_mid + slope * (box - Interval(mid));
  if (naive.hi() < mean_value.lo() || mean_value.hi() < naive.lo()) {
    // Cannot happen for valid enclosures; keep the naive one.
    return naive;
  }
  return Interval::intersect(naive, mean_value);
}

}  // namespace ineqcert
