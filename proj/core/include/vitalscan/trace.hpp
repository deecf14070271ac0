#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vitalscan {

/// One parsed row of a trace document: mean channel intensities of one ROI
/// at one frame instant. Channel values are unit-free; only their ratios in
/// time matter downstream.
struct RgbSample {
    double t = 0.0;   // seconds since trace start
    std::string roi;  // "left_cheek", "right_cheek", "nose", "forehead" or custom
    double r = 0.0, g = 0.0, b = 0.0;
};

/// Column-wise ROI stream; timestamps strictly increasing, channels strictly
/// positive.
struct RoiStream {
    std::string roi;
    std::vector<double> t;
    std::vector<double> r, g, b;

    std::size_t size() const { return t.size(); }
};

/// Per-frame ROI-averaged RGB series, grouped per ROI.
struct RgbTrace {
    std::vector<RoiStream> streams;
    // Exact after resample_uniform; estimated as (n-1)/(t_last-t_first) for
    // parsed raw traces (absent when any stream is too short to estimate).
    std::optional<double> fs;

    std::vector<std::string> roi_set() const;
    std::size_t sample_count() const;
    const RoiStream* find(const std::string& roi) const;
};

/// Single ROI-combined RGB stream on a uniform grid; the input to the pulse
/// extraction.
struct CombinedSeries {
    double t0 = 0.0;
    double fs = 0.0;
    std::vector<double> r, g, b;

    std::size_t size() const { return r.size(); }
    double duration_s() const { return fs > 0.0 ? static_cast<double>(size()) / fs : 0.0; }
};

/// Parse the trace CSV format: header `t,roi,r,g,b`, one row per
/// (frame, ROI), `#` comment lines ignored.
/// Throws Error: MalformedRow, NonMonotoneTimestamps, NonPositiveChannel,
/// EmptyTrace.
RgbTrace parse_trace(const std::string& document);

/// Inverse of parse_trace; writes streams grouped per ROI, shortest
/// round-trip float formatting.
std::string serialize_trace(const RgbTrace& trace);

/// Linear interpolation of every ROI stream onto the shared grid
/// t0 + k/fs_target, where t0/t_end bound the intersection of all ROI spans.
/// Throws Error: TooFewSamples, GapTooLarge.
RgbTrace resample_uniform(const RgbTrace& trace, double fs_target, double gap_limit_s = 0.5);

/// Weighted per-timestamp mean across ROI streams that already share one
/// uniform grid. Empty weight map = uniform; weights are renormalized to
/// sum 1, so only ratios matter. ROIs absent from a non-empty map get
/// weight 0.
/// Throws Error: RoiGridMismatch, AllZeroWeights.
CombinedSeries combine_rois(const RgbTrace& trace,
                            const std::map<std::string, double>& weights = {});

}  // namespace vitalscan
