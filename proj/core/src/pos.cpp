#include "vitalscan/pos.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "vitalscan/error.hpp"
#include "vitalscan/fft.hpp"
#include "vitalscan/stats.hpp"

namespace vitalscan {
namespace {

constexpr double kTaperHz = 0.1;

std::vector<double> divide_by_mean(std::span<const double> x) {
    const double m = mean(x);
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] / m;
    return out;
}

void subtract_mean(std::vector<double>& x) {
    const double m = mean(x);
    for (double& v : x) v -= m;
}

// Raised-cosine transition from 0 at the outer edge to 1 at the band edge.
double band_mask(double f, double lo, double hi) {
    if (f >= lo && f <= hi) return 1.0;
    if (f > lo - kTaperHz && f < lo) {
        const double u = (f - (lo - kTaperHz)) / kTaperHz;
        return 0.5 * (1.0 - std::cos(std::numbers::pi * u));
    }
    if (f > hi && f < hi + kTaperHz) {
        const double u = ((hi + kTaperHz) - f) / kTaperHz;
        return 0.5 * (1.0 - std::cos(std::numbers::pi * u));
    }
    return 0.0;
}

std::string shortest(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return {buf, ptr};
}

}  // namespace

NormalizedWindow temporal_normalize(std::span<const double> r, std::span<const double> g,
                                    std::span<const double> b) {
    if (r.size() < 2 || g.size() != r.size() || b.size() != r.size())
        throw Error("DegenerateWindow", "window needs >= 2 samples per channel");
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!(r[i] > 0.0) || !(g[i] > 0.0) || !(b[i] > 0.0))
            throw Error("NonPositiveSample", "channel values must be > 0 inside the window");
    }
    return {divide_by_mean(r), divide_by_mean(g), divide_by_mean(b)};
}

std::vector<double> pos_project_window(const NormalizedWindow& window) {
    const std::size_t n = window.r.size();
    std::vector<double> s1(n), s2(n);
    for (std::size_t i = 0; i < n; ++i) {
        s1[i] = window.g[i] - window.b[i];
        s2[i] = window.g[i] + window.b[i] - 2.0 * window.r[i];
    }
    const double sd2 = stddev_population(s2);
    std::vector<double> h(n);
    if (sd2 < 1e-12) {
        h = s1;  // singular-variance fallback
    } else {
        const double alpha = stddev_population(s1) / sd2;
        for (std::size_t i = 0; i < n; ++i) h[i] = s1[i] + alpha * s2[i];
    }
    subtract_mean(h);
    return h;
}

std::vector<double> bandpass(const std::vector<double>& signal, double fs, double lo_hz,
                             double hi_hz) {
    if (!(fs > 0.0)) throw std::invalid_argument("bandpass: fs must be > 0");
    if (!(lo_hz > 0.0) || !(lo_hz < hi_hz) || hi_hz >= fs / 2.0)
        throw Error("BandOutOfRange", "need 0 < lo < hi < fs/2");
    if (signal.size() < 4) throw Error("SignalTooShort", "bandpass needs >= 4 samples");

    auto spectrum = rfft(signal);
    const double df = fs / static_cast<double>(signal.size());
    for (std::size_t k = 0; k < spectrum.size(); ++k)
        spectrum[k] *= band_mask(static_cast<double>(k) * df, lo_hz, hi_hz);
    return irfft(spectrum, signal.size());
}

PulseSignal pos_pipeline(const CombinedSeries& series, const PosConfig& cfg) {
    const std::size_t n = series.size();
    if (!(series.fs > 0.0)) throw std::invalid_argument("pos_pipeline: series.fs must be > 0");
    if (cfg.stride_frames < 1) throw std::invalid_argument("pos_pipeline: stride must be >= 1");

    const auto window = static_cast<std::size_t>(std::llround(cfg.window_seconds * series.fs));
    if (window < 8) throw Error("WindowTooShort", "window must span >= 8 frames at this rate");
    if (n < window) throw Error("TraceTooShort", "series shorter than one analysis window");

    std::vector<double> acc(n, 0.0);
    std::vector<double> coverage(n, 0.0);
    for (std::size_t start = 0; start + window <= n; start += cfg.stride_frames) {
        const auto win = temporal_normalize(
            std::span(series.r).subspan(start, window),
            std::span(series.g).subspan(start, window),
            std::span(series.b).subspan(start, window));
        const auto chunk = pos_project_window(win);
        for (std::size_t i = 0; i < window; ++i) {
            acc[start + i] += chunk[i];
            coverage[start + i] += 1.0;
        }
    }
    // Flatten the overlap-add envelope so edge beats keep full amplitude.
    for (std::size_t i = 0; i < n; ++i)
        if (coverage[i] > 0.0) acc[i] /= coverage[i];

    PulseSignal pulse;
    pulse.fs = series.fs;
    pulse.t0 = series.t0;
    pulse.samples = bandpass(acc, series.fs, cfg.band_lo_hz, cfg.band_hi_hz);
    return pulse;
}

std::string serialize_pulse(const PulseSignal& pulse) {
    std::string out = "# fs=" + shortest(pulse.fs) + "\nt,value\n";
    for (std::size_t i = 0; i < pulse.size(); ++i) {
        out += shortest(pulse.t0 + static_cast<double>(i) / pulse.fs);
        out += ',';
        out += shortest(pulse.samples[i]);
        out += '\n';
    }
    return out;
}

}  // namespace vitalscan
