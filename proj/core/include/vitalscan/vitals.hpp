#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vitalscan/pos.hpp"
#include "vitalscan/trace.hpp"

namespace vitalscan {

/// Ordered inter-beat intervals in milliseconds.
struct RrSeries {
    std::vector<double> intervals_ms;

    std::size_t size() const { return intervals_ms.size(); }
};

enum class QualityFlag {
    ok,
    degenerate_variability,
    low_beat_count,
};

const char* to_string(QualityFlag flag);

struct HrvSummary {
    double pnn50_pct = 0.0;
    double rmssd_ms = 0.0;
    double sdnn_ms = 0.0;
};

struct PeakDetection {
    std::vector<std::size_t> peak_indices;
    RrSeries rr;
    bool outliers_dropped = false;  // intervals outside [250, 3000] ms removed
};

struct BaevskyResult {
    double stress_index = 0.0;
    bool degenerate_variability = false;  // RR range clamped to 0.05 s
};

/// Heart rate plus time-domain HRV metrics. Metrics that could not be
/// computed are absent, with the suppressing condition recorded in quality.
struct VitalsReport {
    double hr_bpm = 0.0;
    RrSeries rr;
    std::optional<double> pnn50_pct;
    std::optional<double> rmssd_ms;
    std::optional<double> sdnn_ms;
    std::optional<double> stress_index;
    std::vector<QualityFlag> quality;
};

/// Spectral heart rate: Welch-averaged periodogram (10 s Hann segments, 50%
/// overlap), argmax over the 0.7-4.0 Hz pulse band, refined by parabolic
/// interpolation around the peak bin.
/// Throws Error: SignalTooShort, NoSpectralPeak, BandOutOfRange.
double estimate_hr(const PulseSignal& pulse);

/// Beat detection: strict local maxima above 0.3 * signal std, thinned by a
/// refractory period of 0.6 of the expected beat period (larger peak wins on
/// conflict). hr_hint_bpm avoids re-running the spectral estimate.
/// Throws Error: SignalTooShort, NoPeaks.
PeakDetection detect_peaks(const PulseSignal& pulse,
                           std::optional<double> hr_hint_bpm = std::nullopt);

/// PNN50 (strict > 50 ms), RMSSD (mean over n-1 squared successive diffs),
/// SDNN (sample standard deviation, n-1).
/// Throws Error: TooFewIntervals (< 2 intervals).
HrvSummary hrv_metrics(const RrSeries& rr);

/// Baevsky stress index SI = AMo / (2 * Mo * MxDMn) from a 50 ms RR
/// histogram spanning [0.3, 2.0] s. MxDMn is clamped below at 0.05 s and the
/// clamp reported as degenerate variability.
/// Throws Error: TooFewIntervals (< 10 intervals).
BaevskyResult baevsky_si(const RrSeries& rr);

/// Whole analysis chain: pulse extraction, spectral heart rate, beat
/// detection, HRV metrics, stress index.
/// Throws Error: TraceTooShort, NoPulse, plus sub-operation errors.
VitalsReport compute_vitals(const CombinedSeries& series, const PosConfig& cfg = {});

}  // namespace vitalscan
