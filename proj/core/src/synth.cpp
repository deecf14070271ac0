#include "vitalscan/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vitalscan/error.hpp"

namespace vitalscan {

double Pcg32::next_gauss() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

std::pair<RgbTrace, SynthGroundTruth> synth_trace(double hr_bpm, double duration_s,
                                                  double fs, double amplitude_frac,
                                                  double noise_sigma_frac,
                                                  std::uint64_t seed) {
    if (!(hr_bpm >= 42.0 && hr_bpm <= 240.0))
        throw Error("ParameterOutOfRange", "hr_bpm must lie in [42, 240]");
    if (!(duration_s >= 10.0))
        throw Error("ParameterOutOfRange", "duration_s must be >= 10");
    if (!(fs >= 10.0)) throw Error("ParameterOutOfRange", "fs must be >= 10");
    if (!(amplitude_frac > 0.0 && amplitude_frac <= 0.1))
        throw Error("ParameterOutOfRange", "amplitude_frac must lie in (0, 0.1]");
    if (!(noise_sigma_frac >= 0.0 && noise_sigma_frac <= 0.05))
        throw Error("ParameterOutOfRange", "noise_sigma_frac must lie in [0, 0.05]");

    constexpr double kBaseline[3] = {140.0, 110.0, 95.0};
    constexpr double kStrength[3] = {0.5, 1.0, 0.6};  // green strongest

    const double pulse_hz = hr_bpm / 60.0;
    const auto n = static_cast<std::size_t>(std::llround(duration_s * fs));

    Pcg32 rng(seed);
    RoiStream stream;
    stream.roi = "synthetic";
    stream.t.reserve(n);
    for (auto* ch : {&stream.r, &stream.g, &stream.b}) ch->reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / fs;
        const double carrier = std::sin(2.0 * std::numbers::pi * pulse_hz * t);
        stream.t.push_back(t);
        double vals[3];
        for (int c = 0; c < 3; ++c) {
            double v = kBaseline[c] * (1.0 + kStrength[c] * amplitude_frac * carrier);
            v += noise_sigma_frac * kBaseline[c] * rng.next_gauss();
            vals[c] = std::max(v, 1e-3);
        }
        stream.r.push_back(vals[0]);
        stream.g.push_back(vals[1]);
        stream.b.push_back(vals[2]);
    }

    RgbTrace trace;
    trace.streams.push_back(std::move(stream));
    trace.fs = fs;

    SynthGroundTruth truth;
    truth.hr_bpm = hr_bpm;
    truth.pulse_hz = pulse_hz;
    truth.amplitude_frac = amplitude_frac;
    truth.noise_sigma_frac = noise_sigma_frac;
    truth.seed = seed;
    const double period = 60.0 / hr_bpm;
    // Sinusoid crests sit a quarter period in; spacing is exactly 60/hr.
    for (std::size_t k = 0;; ++k) {
        const double beat = (0.25 + static_cast<double>(k)) * period;
        if (beat >= duration_s) break;
        truth.beat_times_s.push_back(beat);
    }
    return {std::move(trace), std::move(truth)};
}

RrSeries synth_rr(double mean_ms, double jitter_ms, std::size_t count, std::uint64_t seed) {
    if (!(mean_ms >= 250.0 && mean_ms <= 3000.0))
        throw Error("ParameterOutOfRange", "mean_ms must lie in [250, 3000]");
    if (!(jitter_ms >= 0.0)) throw Error("ParameterOutOfRange", "jitter_ms must be >= 0");
    if (count < 2) throw Error("ParameterOutOfRange", "count must be >= 2");

    Pcg32 rng(seed);
    RrSeries rr;
    rr.intervals_ms.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double v = mean_ms + jitter_ms * rng.next_gauss();
        rr.intervals_ms.push_back(std::clamp(v, 250.0, 3000.0));
    }
    return rr;
}

double dense_spectral_peak(std::span<const double> signal, double fs, double lo_hz,
                           double hi_hz) {
    if (!(fs > 0.0)) throw std::invalid_argument("dense_spectral_peak: fs must be > 0");
    if (!(lo_hz > 0.0 && lo_hz < hi_hz))
        throw std::invalid_argument("dense_spectral_peak: need 0 < lo < hi");
    if (static_cast<double>(signal.size()) / fs < 10.0)
        throw std::invalid_argument("dense_spectral_peak: need >= 10 s of signal");

    double mean = 0.0;
    for (double v : signal) mean += v;
    mean /= static_cast<double>(signal.size());

    constexpr double kStepHz = 0.01;
    const auto n_grid =
        static_cast<std::size_t>(std::floor((hi_hz - lo_hz) / kStepHz + 1e-9)) + 1;
    std::vector<double> magnitude(n_grid);
    for (std::size_t k = 0; k < n_grid; ++k) {
        const double f = lo_hz + kStepHz * static_cast<double>(k);
        const double w = 2.0 * std::numbers::pi * f / fs;
        double re = 0.0, im = 0.0;
        for (std::size_t i = 0; i < signal.size(); ++i) {
            const double x = signal[i] - mean;
            re += x * std::cos(w * static_cast<double>(i));
            im -= x * std::sin(w * static_cast<double>(i));
        }
        magnitude[k] = std::hypot(re, im);
    }

    std::vector<double> sorted(magnitude);
    std::sort(sorted.begin(), sorted.end());
    const double median = (n_grid % 2 == 1)
                              ? sorted[n_grid / 2]
                              : 0.5 * (sorted[n_grid / 2 - 1] + sorted[n_grid / 2]);
    const auto peak_it = std::max_element(magnitude.begin(), magnitude.end());
    if (!(*peak_it > 3.0 * median))
        throw Error("FlatSpectrum", "no dominant tone over the scanned band");
    return lo_hz + kStepHz * static_cast<double>(peak_it - magnitude.begin());
}

}  // namespace vitalscan
