#include "vitalscan/pipeline.hpp"

namespace vitalscan {

CombinedSeries combined_from_document(const std::string& csv_text,
                                      const TraceOptions& options) {
    RgbTrace trace = parse_trace(csv_text);
    if (options.fs_target)
        trace = resample_uniform(trace, *options.fs_target, options.gap_limit_s);
    return combine_rois(trace, options.roi_weights);
}

PulseSignal pulse_from_document(const std::string& csv_text, const TraceOptions& options) {
    return pos_pipeline(combined_from_document(csv_text, options), options.pos);
}

VitalsReport vitals_from_document(const std::string& csv_text, const TraceOptions& options) {
    return compute_vitals(combined_from_document(csv_text, options), options.pos);
}

}  // namespace vitalscan
