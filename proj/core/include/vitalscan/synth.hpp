#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "vitalscan/trace.hpp"
#include "vitalscan/vitals.hpp"

namespace vitalscan {

// PCG XSH-RR 64/32: seedable and bit-identical across platforms, unlike the
// standard-library distributions.
class Pcg32 {
  public:
    explicit Pcg32(std::uint64_t seed, std::uint64_t stream = 54) {
        inc_ = (stream << 1u) | 1u;
        next();
        state_ += seed;
        next();
    }

    std::uint32_t next() {
        const std::uint64_t old = state_;
        state_ = old * 6364136223846793005ULL + inc_;
        const auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
        const auto rot = static_cast<std::uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
    }

    // Uniform on (0, 1), never hitting either endpoint.
    double next_unit() { return (static_cast<double>(next()) + 0.5) * 0x1p-32; }

    // Standard normal via Box-Muller, one spare cached.
    double next_gauss();

  private:
    std::uint64_t state_ = 0;
    std::uint64_t inc_ = 0;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

struct SynthGroundTruth {
    double hr_bpm = 0.0;
    double pulse_hz = 0.0;
    std::vector<double> beat_times_s;
    double amplitude_frac = 0.0;
    double noise_sigma_frac = 0.0;
    std::uint64_t seed = 0;
};

// Sinusoidal pulse on fixed RGB baselines, single ROI "synthetic".
std::pair<RgbTrace, SynthGroundTruth> synth_trace(double hr_bpm, double duration_s,
                                                  double fs, double amplitude_frac = 0.01,
                                                  double noise_sigma_frac = 0.0,
                                                  std::uint64_t seed = 1);

RrSeries synth_rr(double mean_ms, double jitter_ms, std::size_t count, std::uint64_t seed);

// Brute-force DTFT magnitude scan on a 0.01 Hz grid; shares nothing with the
// production spectral path so the two can check each other.
double dense_spectral_peak(std::span<const double> signal, double fs, double lo_hz,
                           double hi_hz);

}  // namespace vitalscan
