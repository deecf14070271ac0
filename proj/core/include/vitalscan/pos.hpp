#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vitalscan/trace.hpp"

namespace vitalscan {

/// Sliding-window and band parameters for the pulse extraction.
/// The pulse band [0.7, 4.0] Hz corresponds to 42-240 bpm.
struct PosConfig {
    double window_seconds = 1.6;
    std::size_t stride_frames = 1;
    double band_lo_hz = 0.7;
    double band_hi_hz = 4.0;
};

/// Uniformly sampled scalar pulse waveform.
struct PulseSignal {
    double fs = 0.0;
    double t0 = 0.0;
    std::vector<double> samples;

    std::size_t size() const { return samples.size(); }
    double duration_s() const { return fs > 0.0 ? static_cast<double>(size()) / fs : 0.0; }
};

struct NormalizedWindow {
    std::vector<double> r, g, b;
};

/// Divide each channel by its own window mean, leaving only fractional
/// variation (removes illumination and camera gain).
/// Throws Error: DegenerateWindow, NonPositiveSample.
NormalizedWindow temporal_normalize(std::span<const double> r, std::span<const double> g,
                                    std::span<const double> b);

/// Project a temporally normalized window onto the plane orthogonal to the
/// skin-tone axis and combine the two components with the variance-matching
/// weight alpha = std(s1)/std(s2). Result is mean-subtracted. When s2 has
/// (numerically) zero variance the projection falls back to s1 alone.
std::vector<double> pos_project_window(const NormalizedWindow& window);

/// Zero-phase frequency-domain bandpass: DFT, multiply by a mask that is 1
/// on [lo, hi] with raised-cosine tapers of width 0.1 Hz just outside both
/// edges, inverse DFT. Deterministic and length-preserving.
/// Throws Error: BandOutOfRange, SignalTooShort.
std::vector<double> bandpass(const std::vector<double>& signal, double fs, double lo_hz,
                             double hi_hz);

/// Full pulse extraction: sliding windows of round(window_seconds * fs)
/// frames advancing by stride_frames; each window is normalized, projected,
/// and overlap-added (coverage-normalized); the reconstruction is then
/// bandpassed to the pulse band. Output length equals input length.
/// Throws Error: TraceTooShort, WindowTooShort, and bandpass errors.
PulseSignal pos_pipeline(const CombinedSeries& series, const PosConfig& cfg = {});

/// Pulse CSV: `# fs=<Hz>` comment, `t,value` header, one row per sample.
std::string serialize_pulse(const PulseSignal& pulse);

}  // namespace vitalscan
