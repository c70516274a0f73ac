#pragma once
// Small helpers shared by the unit and acceptance tests.
#include "ineqcert/real.hpp"

#include <random>
#include <string>

namespace testing_support {

using ineqcert::Real;

inline Real R(const char* text) { return ineqcert::parse_decimal(text); }

inline double rel_diff(const Real& x, const Real& y) {
  const Real scale = std::max(Real(abs(x)), Real(abs(y)));
  if (scale == 0) return 0;
  return Real(abs(x - y) / scale).convert_to<double>();
}

inline double abs_diff(const Real& x, const Real& y) { return Real(abs(x - y)).convert_to<double>(); }

// Fixed seed: test outcomes must not depend on the run.
inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20261017);
  return engine;
}

inline std::string fixture(const std::string& name) {
  return std::string(INEQCERT_FIXTURE_DIR) + "/" + name;
}

}  // namespace testing_support
