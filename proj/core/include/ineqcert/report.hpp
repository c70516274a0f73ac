#pragma once
// JSON rendering of pipeline results. Field order is fixed and every real is a
// decimal string at the working precision, so identical inputs give
// byte-identical output.
#include "ineqcert/certify.hpp"
#include "ineqcert/remez.hpp"

#include <string>

namespace ineqcert {

std::string report_to_json(const ProofReport& report, int indent = 2);

std::string minimax_to_json(const MinimaxResult& result, const Precision& p, int indent = 2);

}  // namespace ineqcert
