#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "vitalscan/identity.hpp"
#include "vitalscan/pos.hpp"
#include "vitalscan/synth.hpp"
#include "vitalscan/trace.hpp"
#include "vitalscan/vitals.hpp"

namespace {

using namespace vitalscan;

const CombinedSeries& minute_series() {
    static const CombinedSeries series = [] {
        const auto [trace, truth] = synth_trace(72.0, 60.0, 30.0, 0.01, 0.005, 7);
        return combine_rois(trace);
    }();
    return series;
}

const PulseSignal& minute_pulse() {
    static const PulseSignal pulse = pos_pipeline(minute_series());
    return pulse;
}

void pulse_extraction_60s(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(pos_pipeline(minute_series()));
}
BENCHMARK(pulse_extraction_60s)->Unit(benchmark::kMillisecond);

void vitals_report_60s(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(compute_vitals(minute_series()));
}
BENCHMARK(vitals_report_60s)->Unit(benchmark::kMillisecond);

void spectral_hr_60s(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(estimate_hr(minute_pulse()));
}
BENCHMARK(spectral_hr_60s)->Unit(benchmark::kMicrosecond);

void pulse_band_filter(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<double> signal(n);
    Pcg32 rng(3);
    for (auto& v : signal) v = rng.next_gauss();
    for (auto _ : state) benchmark::DoNotOptimize(bandpass(signal, 30.0, 0.7, 4.0));
}
BENCHMARK(pulse_band_filter)->Arg(1800)->Arg(4096)->Unit(benchmark::kMicrosecond);

void gallery_identify_400(benchmark::State& state) {
    static const auto fixture = [] {
        std::mt19937 rng(99);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::normal_distribution<double> jitter(0.0, 0.02);
        EmbeddingGallery gallery(128);
        std::vector<double> probe;
        for (int subject = 0; subject < 100; ++subject) {
            std::vector<double> base(128);
            for (auto& x : base) x = gauss(rng);
            for (int copy = 0; copy < 4; ++copy) {
                std::vector<double> v = base;
                for (auto& x : v) x += jitter(rng);
                gallery.enroll("s" + std::to_string(subject), v);
            }
            if (subject == 42) probe = base;
        }
        return std::pair(std::move(gallery), normalize_embedding(probe));
    }();
    for (auto _ : state) benchmark::DoNotOptimize(fixture.first.identify(fixture.second));
}
BENCHMARK(gallery_identify_400)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
