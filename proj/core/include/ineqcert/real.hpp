#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <string_view>

namespace ineqcert {

/// Working-precision real. The precision of newly created values follows the
/// active PrecisionScope.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

/// Decimal working precision of a run. All modules take it explicitly.
class Precision {
 public:
  static constexpr int kMinimumDigits = 15;
  static constexpr int kDefaultDigits = 50;

  Precision() = default;
  explicit Precision(int decimal_digits);

  int decimal_digits() const noexcept { return digits_; }

  /// 10^(-decimal_digits + offset), at the current precision.
  Real epsilon(int offset = 0) const;

  friend bool operator==(const Precision&, const Precision&) = default;

 private:
  int digits_ = kDefaultDigits;
};

/// Installs a working precision for the lifetime of the object and restores the
/// previous one afterwards. `guard_digits` are added on top of the requested
/// precision for intermediate computations.
class PrecisionScope {
 public:
  explicit PrecisionScope(const Precision& p, int guard_digits = 0);
  ~PrecisionScope();

  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned previous_;
};

/// Parses a decimal literal ("0.5", "-1e-3", "1/3" is not accepted) at the
/// current precision. Throws ConfigError on malformed text.
Real parse_decimal(std::string_view text);

/// Deterministic scientific rendering with `digits` significant digits.
std::string to_decimal_string(const Real& value, int digits);

Real pi_constant();
Real e_constant();

/// 10^k at the current precision.
Real pow10(int k);

bool is_finite(const Real& value);

/// Returns true when `value` is an integer that fits in an int.
bool is_small_integer(const Real& value, int* out = nullptr);

}  // namespace ineqcert
