#pragma once

#include <string>

#include "vitalscan/identity.hpp"
#include "vitalscan/synth.hpp"
#include "vitalscan/vitals.hpp"

namespace vitalscan {

// Canonical JSON: keys sorted, floats at 6 significant digits, no whitespace,
// trailing newline. Byte-stable so independent front ends can be diffed.
std::string canonical_report_json(const VitalsReport& report);
std::string canonical_match_json(const IdentityMatch& match);
std::string canonical_ground_truth_json(const SynthGroundTruth& truth);
std::string canonical_error_json(const std::string& error_name);

// "%.6g" with negative zero folded to "0".
std::string format_float(double value);

}  // namespace vitalscan
