#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "vitalscan/fft.hpp"

namespace {

std::vector<double> random_signal(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> x(n);
    for (auto& v : x) v = dist(rng);
    return x;
}

}  // namespace

TEST_CASE("rfft matches the direct DFT on power-of-two and awkward lengths") {
    // 17 and 31 exercise the arbitrary-length path, 48 the mixed one.
    for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{3}, std::size_t{5},
                          std::size_t{8}, std::size_t{17}, std::size_t{31}, std::size_t{48},
                          std::size_t{64}, std::size_t{100}}) {
        const auto x = random_signal(n, 1000 + static_cast<unsigned>(n));
        const auto got = vitalscan::rfft(x);
        const auto want = vitalscan::oracle::dft(x);
        REQUIRE(got.size() == n / 2 + 1);
        for (std::size_t k = 0; k < got.size(); ++k) {
            CAPTURE(n);
            CAPTURE(k);
            CHECK(std::abs(got[k] - want[k]) <= 1e-9 * (1.0 + std::abs(want[k])));
        }
    }
}

TEST_CASE("irfft undoes rfft for even and odd lengths") {
    for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{9}, std::size_t{32},
                          std::size_t{45}, std::size_t{300}}) {
        const auto x = random_signal(n, 77 + static_cast<unsigned>(n));
        const auto back = vitalscan::irfft(vitalscan::rfft(x), n);
        REQUIRE(back.size() == n);
        for (std::size_t i = 0; i < n; ++i) CHECK(back[i] == doctest::Approx(x[i]).epsilon(1e-10));
    }
}

TEST_CASE("constant signal concentrates all energy in the DC bin") {
    const std::vector<double> x(25, 3.5);
    const auto spectrum = vitalscan::rfft(x);
    CHECK(std::abs(spectrum[0] - std::complex<double>(25 * 3.5, 0.0)) < 1e-9);
    for (std::size_t k = 1; k < spectrum.size(); ++k) CHECK(std::abs(spectrum[k]) < 1e-9);
}

TEST_CASE("an integer-bin tone lands in exactly one bin") {
    const std::size_t n = 64;
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = std::cos(2.0 * std::numbers::pi * 5.0 * static_cast<double>(i) /
                        static_cast<double>(n));
    const auto spectrum = vitalscan::rfft(x);
    CHECK(std::abs(spectrum[5]) == doctest::Approx(n / 2.0).epsilon(1e-9));
    for (std::size_t k = 0; k < spectrum.size(); ++k)
        if (k != 5) CHECK(std::abs(spectrum[k]) < 1e-8);
}

TEST_CASE("degenerate inputs are rejected") {
    CHECK_THROWS_AS(vitalscan::rfft({}), std::invalid_argument);
    CHECK_THROWS_AS(vitalscan::irfft({}, 0), std::invalid_argument);
    // half-spectrum size must match the requested output length
    const auto spectrum = vitalscan::rfft(std::vector<double>{1.0, 2.0, 3.0, 4.0});
    CHECK_THROWS_AS(vitalscan::irfft(spectrum, 9), std::invalid_argument);
}
