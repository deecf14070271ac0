#pragma once

#include <map>
#include <optional>
#include <string>

#include "vitalscan/pos.hpp"
#include "vitalscan/trace.hpp"
#include "vitalscan/vitals.hpp"

namespace vitalscan {

struct TraceOptions {
    std::optional<double> fs_target;  // resample onto a uniform grid first
    double gap_limit_s = 0.5;
    std::map<std::string, double> roi_weights;  // empty = uniform over ROIs
    PosConfig pos;
};

// One code path from raw CSV text to each artifact; every front end goes
// through here so their outputs agree byte for byte.
CombinedSeries combined_from_document(const std::string& csv_text,
                                      const TraceOptions& options = {});
PulseSignal pulse_from_document(const std::string& csv_text,
                                const TraceOptions& options = {});
VitalsReport vitals_from_document(const std::string& csv_text,
                                  const TraceOptions& options = {});

}  // namespace vitalscan
