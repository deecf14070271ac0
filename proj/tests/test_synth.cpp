#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "vitalscan/error.hpp"
#include "vitalscan/synth.hpp"
#include "vitalscan/trace.hpp"

using vitalscan::Error;

TEST_CASE("the RNG reproduces the published reference stream") {
    // PCG32 XSH-RR 64/32, seed 42 / stream 54
    vitalscan::Pcg32 rng(42, 54);
    const std::uint32_t expected[6] = {0xa15c02b7u, 0x7b47f409u, 0xba1d3330u,
                                       0x83d2f293u, 0xbfa4784bu, 0xcbed606eu};
    for (std::uint32_t want : expected) CHECK(rng.next() == want);
}

TEST_CASE("unit draws stay inside the open interval") {
    vitalscan::Pcg32 rng(7);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.next_unit();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("gaussian draws have roughly standard moments") {
    vitalscan::Pcg32 rng(11);
    const int n = 20000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = rng.next_gauss();
        sum += g;
        sq += g * g;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    CHECK(std::fabs(mean) < 0.03);       // ~4 sigma of the sample mean
    CHECK(std::fabs(var - 1.0) < 0.05);
}

TEST_CASE("synthetic traces are deterministic per seed and differ across seeds") {
    const auto [a1, t1] = vitalscan::synth_trace(75.0, 12.0, 30.0, 0.01, 0.02, 9);
    const auto [a2, t2] = vitalscan::synth_trace(75.0, 12.0, 30.0, 0.01, 0.02, 9);
    const auto [b1, t3] = vitalscan::synth_trace(75.0, 12.0, 30.0, 0.01, 0.02, 10);
    CHECK(vitalscan::serialize_trace(a1) == vitalscan::serialize_trace(a2));
    CHECK(vitalscan::serialize_trace(a1) != vitalscan::serialize_trace(b1));
}

TEST_CASE("synthetic trace shape and ground truth") {
    const auto [trace, truth] = vitalscan::synth_trace(75.0, 30.0, 30.0, 0.01, 0.0, 4);
    REQUIRE(trace.streams.size() == 1);
    const auto& s = trace.streams[0];
    CHECK(s.roi == "synthetic");
    CHECK(s.size() == 900);
    CHECK(trace.fs == 30.0);
    CHECK(s.t[1] == doctest::Approx(1.0 / 30.0).epsilon(1e-15));
    for (std::size_t i = 0; i < s.size(); i += 97) {
        CHECK(s.r[i] > 0.0);
        CHECK(s.g[i] > 0.0);
        CHECK(s.b[i] > 0.0);
    }

    CHECK(truth.pulse_hz == doctest::Approx(1.25).epsilon(1e-15));
    REQUIRE(truth.beat_times_s.size() > 30);
    for (std::size_t i = 1; i < truth.beat_times_s.size(); ++i)
        CHECK(std::fabs((truth.beat_times_s[i] - truth.beat_times_s[i - 1]) - 0.8) <= 1e-12);

    // green carries the strongest modulation by construction
    double g_spread = 0.0, r_spread = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        g_spread = std::max(g_spread, std::fabs(s.g[i] / 110.0 - 1.0));
        r_spread = std::max(r_spread, std::fabs(s.r[i] / 140.0 - 1.0));
    }
    CHECK(g_spread > r_spread);
}

TEST_CASE("the dense spectral scan finds the green-channel tone") {
    const auto [trace, truth] = vitalscan::synth_trace(75.0, 30.0, 30.0, 0.01, 0.0, 4);
    const double peak =
        vitalscan::dense_spectral_peak(trace.streams[0].g, 30.0, 0.7, 4.0);
    CHECK(std::fabs(peak - 1.25) <= 0.011);
}

TEST_CASE("synthetic RR series") {
    SUBCASE("zero jitter repeats the mean exactly") {
        const auto rr = vitalscan::synth_rr(800.0, 0.0, 10, 3);
        REQUIRE(rr.size() == 10);
        for (double v : rr.intervals_ms) CHECK(v == 800.0);
    }
    SUBCASE("deterministic per seed") {
        const auto a = vitalscan::synth_rr(800.0, 25.0, 50, 21);
        const auto b = vitalscan::synth_rr(800.0, 25.0, 50, 21);
        CHECK(a.intervals_ms == b.intervals_ms);
    }
    SUBCASE("the sample mean sits within three standard errors") {
        const auto rr = vitalscan::synth_rr(800.0, 20.0, 400, 77);
        double mean = 0.0;
        for (double v : rr.intervals_ms) mean += v;
        mean /= 400.0;
        CHECK(std::fabs(mean - 800.0) <= 3.0);
    }
    SUBCASE("values clamp into the physiological range") {
        const auto rr = vitalscan::synth_rr(300.0, 500.0, 200, 5);
        for (double v : rr.intervals_ms) {
            CHECK(v >= 250.0);
            CHECK(v <= 3000.0);
        }
    }
}

TEST_CASE("dense spectral scan fixtures") {
    const double fs = 25.0;
    const std::size_t n = 500;  // 20 s
    std::vector<double> x(n);

    SUBCASE("a single tone is localized to the grid step") {
        for (std::size_t i = 0; i < n; ++i)
            x[i] = std::sin(2.0 * std::numbers::pi * 1.25 * static_cast<double>(i) / fs);
        CHECK(std::fabs(vitalscan::dense_spectral_peak(x, fs, 0.7, 4.0) - 1.25) <= 0.011);
    }
    SUBCASE("the larger of two tones wins") {
        for (std::size_t i = 0; i < n; ++i) {
            const double t = static_cast<double>(i) / fs;
            x[i] = std::sin(2.0 * std::numbers::pi * 1.0 * t) +
                   0.5 * std::sin(2.0 * std::numbers::pi * 2.0 * t);
        }
        CHECK(std::fabs(vitalscan::dense_spectral_peak(x, fs, 0.7, 4.0) - 1.0) <= 0.011);
    }
    SUBCASE("a constant signal has no peak") {
        x.assign(n, 3.0);
        try {
            (void)vitalscan::dense_spectral_peak(x, fs, 0.7, 4.0);
            FAIL("expected FlatSpectrum");
        } catch (const Error& e) {
            CHECK(e.name() == "FlatSpectrum");
        }
    }
    SUBCASE("short signals violate the precondition") {
        x.assign(100, 1.0);  // 4 s at 25 Hz
        CHECK_THROWS_AS((void)vitalscan::dense_spectral_peak(x, fs, 0.7, 4.0),
                        std::invalid_argument);
    }
}

TEST_CASE("generator parameter ranges are enforced") {
    auto expect_range_error = [](auto&& fn) {
        try {
            fn();
            FAIL_CHECK("expected ParameterOutOfRange");
        } catch (const Error& e) {
            CHECK(e.name() == "ParameterOutOfRange");
        }
    };
    expect_range_error([] { (void)vitalscan::synth_trace(300.0, 30.0, 30.0); });
    expect_range_error([] { (void)vitalscan::synth_trace(41.0, 30.0, 30.0); });
    expect_range_error([] { (void)vitalscan::synth_trace(75.0, 5.0, 30.0); });
    expect_range_error([] { (void)vitalscan::synth_trace(75.0, 30.0, 5.0); });
    expect_range_error([] { (void)vitalscan::synth_trace(75.0, 30.0, 30.0, 0.5); });
    expect_range_error([] { (void)vitalscan::synth_trace(75.0, 30.0, 30.0, 0.01, 0.5); });
    expect_range_error([] { (void)vitalscan::synth_rr(100.0, 0.0, 10, 1); });
    expect_range_error([] { (void)vitalscan::synth_rr(800.0, -1.0, 10, 1); });
    expect_range_error([] { (void)vitalscan::synth_rr(800.0, 0.0, 1, 1); });
}

TEST_CASE("synthetic traces re-enter the parser unchanged") {
    const auto [trace, truth] = vitalscan::synth_trace(100.0, 15.0, 20.0, 0.02, 0.01, 31);
    const auto parsed = vitalscan::parse_trace(vitalscan::serialize_trace(trace));
    REQUIRE(parsed.streams.size() == 1);
    const auto& a = trace.streams[0];
    const auto& b = parsed.streams[0];
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); i += 13) {
        CHECK(a.t[i] == b.t[i]);
        CHECK(a.r[i] == b.r[i]);
        CHECK(a.g[i] == b.g[i]);
        CHECK(a.b[i] == b.b[i]);
    }
}
