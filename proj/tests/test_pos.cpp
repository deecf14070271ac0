#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "vitalscan/error.hpp"
#include "vitalscan/pos.hpp"
#include "vitalscan/stats.hpp"
#include "vitalscan/synth.hpp"

using vitalscan::Error;

namespace {

std::vector<double> tone(double freq_hz, double fs, std::size_t n, double amp = 1.0) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = amp * std::cos(2.0 * std::numbers::pi * freq_hz * static_cast<double>(i) / fs);
    return x;
}

vitalscan::CombinedSeries series_from_synth(double hr, double duration, double fs,
                                            double noise = 0.0, std::uint64_t seed = 3) {
    const auto [trace, truth] = vitalscan::synth_trace(hr, duration, fs, 0.01, noise, seed);
    return vitalscan::combine_rois(trace);
}

}  // namespace

TEST_CASE("temporal normalization divides each channel by its window mean") {
    const std::vector<double> r(48, 100.0);
    std::vector<double> g(48), b(48);
    for (std::size_t i = 0; i < 48; ++i) {
        g[i] = 90.0 + ((i % 2 == 0) ? 1.0 : -1.0);
        b[i] = 80.0;
    }
    const auto win = vitalscan::temporal_normalize(r, g, b);
    for (std::size_t i = 0; i < 48; ++i) {
        CHECK(win.r[i] == 1.0);  // constant channel maps to exactly 1
        CHECK(win.g[i] == doctest::Approx((90.0 + ((i % 2 == 0) ? 1.0 : -1.0)) / 90.0)
                              .epsilon(1e-12));
        CHECK(win.b[i] == 1.0);
    }
}

TEST_CASE("temporal normalization rejects degenerate windows") {
    const std::vector<double> one{100.0};
    CHECK_THROWS_AS((void)vitalscan::temporal_normalize(one, one, one), Error);

    std::vector<double> ok(16, 100.0), bad(16, 100.0);
    bad[7] = 0.0;
    try {
        (void)vitalscan::temporal_normalize(ok, bad, ok);
        FAIL("expected NonPositiveSample");
    } catch (const Error& e) {
        CHECK(e.name() == "NonPositiveSample");
    }
}

TEST_CASE("projection falls back to the first axis when the second is flat") {
    // r == (g+b)/2 pointwise makes s2 identically zero
    const std::vector<double> r(4, 100.0);
    const std::vector<double> g{55.0, 45.0, 55.0, 45.0};
    const std::vector<double> b{72.0, 88.0, 72.0, 88.0};
    const auto win = vitalscan::temporal_normalize(r, g, b);
    const auto h = vitalscan::pos_project_window(win);
    REQUIRE(h.size() == 4);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(h[i] == doctest::Approx(win.g[i] - win.b[i]).epsilon(1e-12));
}

TEST_CASE("projection combines the two axes with the variance-ratio weight") {
    const std::vector<double> r{100.0, 102.0, 98.0, 101.0};
    const std::vector<double> g{90.0, 94.0, 86.0, 91.0};
    const std::vector<double> b{80.0, 79.0, 82.0, 80.0};
    const auto win = vitalscan::temporal_normalize(r, g, b);

    // image of the definition, evaluated step by step
    std::vector<double> s1(4), s2(4);
    for (int i = 0; i < 4; ++i) {
        s1[i] = win.g[i] - win.b[i];
        s2[i] = win.g[i] + win.b[i] - 2.0 * win.r[i];
    }
    const double alpha =
        vitalscan::stddev_population(s1) / vitalscan::stddev_population(s2);
    std::vector<double> expected(4);
    double mean = 0.0;
    for (int i = 0; i < 4; ++i) mean += (expected[i] = s1[i] + alpha * s2[i]);
    mean /= 4.0;

    const auto h = vitalscan::pos_project_window(win);
    double h_mean = 0.0;
    for (int i = 0; i < 4; ++i) {
        CHECK(h[i] == doctest::Approx(expected[i] - mean).epsilon(1e-12));
        h_mean += h[i];
    }
    CHECK(std::fabs(h_mean) < 1e-12);  // mean-subtracted output
}

TEST_CASE("bandpass keeps in-band tones and kills out-of-band ones") {
    const double fs = 30.0;
    const std::size_t n = 300;  // 10 s -> 0.1 Hz bins

    SUBCASE("1.5 Hz passes unchanged") {
        const auto x = tone(1.5, fs, n);
        const auto y = vitalscan::bandpass(x, fs, 0.7, 4.0);
        double diff = 0.0;
        for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::fabs(y[i] - x[i]));
        CHECK(diff < 1e-9);
    }
    SUBCASE("5 Hz and 0.2 Hz are fully rejected") {
        for (double f : {5.0, 0.2}) {
            const auto y = vitalscan::bandpass(tone(f, fs, n), fs, 0.7, 4.0);
            CHECK(vitalscan::rms(y) < 1e-10);
        }
    }
    SUBCASE("constant input maps to zero") {
        const auto y = vitalscan::bandpass(std::vector<double>(n, 42.0), fs, 0.7, 4.0);
        CHECK(vitalscan::rms(y) < 1e-10);
    }
    SUBCASE("the taper midpoint attenuates by exactly half") {
        // 20 s at fs 30 puts 4.05 Hz on bin 81, half-way into the upper taper
        const auto x = tone(4.05, fs, 600);
        const auto y = vitalscan::bandpass(x, fs, 0.7, 4.0);
        CHECK(vitalscan::rms(y) / vitalscan::rms(x) == doctest::Approx(0.5).epsilon(1e-6));
    }
}

TEST_CASE("bandpass validates band and length") {
    const auto x = tone(1.0, 30.0, 64);
    try {
        (void)vitalscan::bandpass(x, 30.0, 0.7, 15.0);  // hi == fs/2
        FAIL("expected BandOutOfRange");
    } catch (const Error& e) {
        CHECK(e.name() == "BandOutOfRange");
    }
    CHECK_THROWS_AS((void)vitalscan::bandpass(x, 30.0, 0.0, 4.0), Error);
    CHECK_THROWS_AS((void)vitalscan::bandpass(x, 30.0, 4.0, 0.7), Error);
    CHECK_THROWS_AS((void)vitalscan::bandpass({1.0, 2.0, 3.0}, 30.0, 0.7, 4.0), Error);
    CHECK_THROWS_AS((void)vitalscan::bandpass(x, -1.0, 0.7, 4.0), std::invalid_argument);
}

TEST_CASE("the full pipeline recovers the modulation frequency") {
    const auto series = series_from_synth(75.0, 30.0, 30.0);
    const auto pulse = vitalscan::pos_pipeline(series);
    REQUIRE(pulse.size() == series.size());
    CHECK(pulse.fs == series.fs);
    const double peak =
        vitalscan::dense_spectral_peak(pulse.samples, pulse.fs, 0.7, 4.0);
    CHECK(peak == doctest::Approx(1.25).epsilon(0.02));
}

TEST_CASE("the pipeline is invariant under uniform gain") {
    auto series = series_from_synth(90.0, 20.0, 30.0, 0.003);
    const auto base = vitalscan::pos_pipeline(series);
    for (auto* ch : {&series.r, &series.g, &series.b})
        for (double& v : *ch) v *= 3.7;
    const auto scaled = vitalscan::pos_pipeline(series);
    REQUIRE(scaled.size() == base.size());
    double diff_sq = 0.0, base_sq = 0.0;
    for (std::size_t i = 0; i < base.size(); ++i) {
        diff_sq += (scaled.samples[i] - base.samples[i]) * (scaled.samples[i] - base.samples[i]);
        base_sq += base.samples[i] * base.samples[i];
    }
    CHECK(std::sqrt(diff_sq) <= 1e-9 * std::sqrt(base_sq));
}

TEST_CASE("stride > 1 preserves the dominant frequency") {
    const auto series = series_from_synth(120.0, 30.0, 30.0);
    vitalscan::PosConfig cfg;
    cfg.stride_frames = 3;
    const auto pulse = vitalscan::pos_pipeline(series, cfg);
    const double peak =
        vitalscan::dense_spectral_peak(pulse.samples, pulse.fs, 0.7, 4.0);
    CHECK(peak == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("pipeline rejects short traces and short windows") {
    const auto series = series_from_synth(75.0, 30.0, 30.0);

    vitalscan::CombinedSeries stub = series;
    stub.r.resize(30);
    stub.g.resize(30);
    stub.b.resize(30);
    try {
        (void)vitalscan::pos_pipeline(stub);
        FAIL("expected TraceTooShort");
    } catch (const Error& e) {
        CHECK(e.name() == "TraceTooShort");
    }

    vitalscan::PosConfig cfg;
    cfg.window_seconds = 0.1;  // 3 frames at 30 Hz
    try {
        (void)vitalscan::pos_pipeline(series, cfg);
        FAIL("expected WindowTooShort");
    } catch (const Error& e) {
        CHECK(e.name() == "WindowTooShort");
    }
}

TEST_CASE("pulse CSV starts with the rate comment and column header") {
    vitalscan::PulseSignal pulse;
    pulse.fs = 30.0;
    pulse.t0 = 0.0;
    pulse.samples = {0.5, -0.25, 0.125};
    const std::string csv = vitalscan::serialize_pulse(pulse);
    CHECK(csv.substr(0, 16) == "# fs=30\nt,value\n");
    CHECK(csv.find("0.5") != std::string::npos);
    CHECK(csv.back() == '\n');
}
