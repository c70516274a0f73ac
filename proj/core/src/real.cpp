#include "ineqcert/real.hpp"

#include "ineqcert/errors.hpp"

#include <cctype>
#include <cmath>
#include <ios>

namespace ineqcert {

Precision::Precision(int decimal_digits) : digits_(decimal_digits) {
  if (decimal_digits < kMinimumDigits) {
    throw ConfigError("precision must be at least " + std::to_string(kMinimumDigits) +
                      " decimal digits, got " + std::to_string(decimal_digits));
  }
}

Real Precision::epsilon(int offset) const { return pow10(-digits_ + offset); }

PrecisionScope::PrecisionScope(const Precision& p, int guard_digits)
    : previous_(Real::default_precision()) {
  Real::default_precision(static_cast<unsigned>(p.decimal_digits() + guard_digits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(previous_); }

Real parse_decimal(std::string_view text) {
  std::string s(text);
  auto begin = s.find_first_not_of(" \t");
  auto end = s.find_last_not_of(" \t");
  if (begin == std::string::npos) {
    throw ConfigError("empty numeric literal");
  }
  s = s.substr(begin, end - begin + 1);
  // Strict grammar: [sign] digits [. digits] [(e|E) [sign] digits]
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t mantissa_digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++mantissa_digits;
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++mantissa_digits;
  }
  if (mantissa_digits == 0) {
    throw ConfigError("malformed numeric literal '" + s + "'");
  }
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t exponent_digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++exponent_digits;
    if (exponent_digits == 0) {
      throw ConfigError("malformed exponent in numeric literal '" + s + "'");
    }
  }
  if (i != s.size()) {
    throw ConfigError("malformed numeric literal '" + s + "'");
  }
  return Real(s);
}

std::string to_decimal_string(const Real& value, int digits) {
  if (value == 0) {
    return "0";
  }
  return value.str(digits, std::ios_base::scientific);
}

Real pi_constant() {
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

Real e_constant() { return exp(Real(1)); }

Real pow10(int k) {
  Real r;
  mpfr_ui_pow_ui(r.backend().data(), 10, static_cast<unsigned long>(std::abs(k)), MPFR_RNDN);
  if (k < 0) {
    r = Real(1) / r;
  }
  return r;
}

bool is_finite(const Real& value) { return mpfr_number_p(value.backend().data()) != 0; }

bool is_small_integer(const Real& value, int* out) {
  if (!is_finite(value) || mpfr_integer_p(value.backend().data()) == 0) {
    return false;
  }
  if (abs(value) > Real(1'000'000)) {
    return false;
  }
  if (out != nullptr) {
    *out = value.convert_to<int>();
  }
  return true;
}

}  // namespace ineqcert
