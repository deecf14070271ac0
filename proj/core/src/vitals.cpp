#include "vitalscan/vitals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vitalscan/error.hpp"
#include "vitalscan/fft.hpp"
#include "vitalscan/stats.hpp"

namespace vitalscan {
namespace {

constexpr double kBandLoHz = 0.7;
constexpr double kBandHiHz = 4.0;
constexpr double kMinDurationS = 10.0;
constexpr double kWelchSegmentS = 10.0;
constexpr double kRrMinMs = 250.0;
constexpr double kRrMaxMs = 3000.0;

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

const char* to_string(QualityFlag flag) {
    switch (flag) {
        case QualityFlag::ok: return "ok";
        case QualityFlag::degenerate_variability: return "degenerate_variability";
        case QualityFlag::low_beat_count: return "low_beat_count";
    }
    return "unknown";
}

double estimate_hr(const PulseSignal& pulse) {
    if (pulse.duration_s() < kMinDurationS)
        throw Error("SignalTooShort", "need >= 10 s of signal for spectral HR");
    if (pulse.fs < 2.0 * kBandHiHz)
        throw Error("BandOutOfRange", "sampling rate below Nyquist for the pulse band");

    std::size_t seg_len = static_cast<std::size_t>(std::llround(kWelchSegmentS * pulse.fs));
    seg_len = std::min(seg_len, pulse.size());
    const std::size_t hop = std::max<std::size_t>(1, seg_len / 2);

    std::vector<double> taper(seg_len);
    for (std::size_t i = 0; i < seg_len; ++i)
        taper[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                         static_cast<double>(seg_len)));

    std::vector<double> power(seg_len / 2 + 1, 0.0);
    std::vector<double> buf(seg_len);
    std::size_t segments = 0;
    for (std::size_t start = 0; start + seg_len <= pulse.size(); start += hop) {
        for (std::size_t i = 0; i < seg_len; ++i) buf[i] = taper[i] * pulse.samples[start + i];
        const auto spectrum = rfft(buf);
        for (std::size_t k = 0; k < power.size(); ++k) power[k] += std::norm(spectrum[k]);
        ++segments;
    }
    for (double& p : power) p /= static_cast<double>(segments);

    const double df = pulse.fs / static_cast<double>(seg_len);
    const auto k_lo = static_cast<std::size_t>(std::ceil(kBandLoHz / df - 1e-9));
    const auto k_hi =
        std::min(power.size() - 1, static_cast<std::size_t>(std::floor(kBandHiHz / df + 1e-9)));
    if (k_lo > k_hi) throw Error("BandOutOfRange", "no spectral bins inside the pulse band");

    std::size_t k_peak = k_lo;
    std::vector<double> band;
    band.reserve(k_hi - k_lo + 1);
    for (std::size_t k = k_lo; k <= k_hi; ++k) {
        band.push_back(power[k]);
        if (power[k] > power[k_peak]) k_peak = k;
    }
    if (!(power[k_peak] > 3.0 * median_of(band)))
        throw Error("NoSpectralPeak", "spectrum is flat over the pulse band");

    double delta = 0.0;
    if (k_peak > 0 && k_peak + 1 < power.size()) {
        const double y1 = power[k_peak - 1], y2 = power[k_peak], y3 = power[k_peak + 1];
        const double den = y1 - 2.0 * y2 + y3;
        if (std::abs(den) > 1e-300) delta = std::clamp(0.5 * (y1 - y3) / den, -0.5, 0.5);
    }
    const double f_peak =
        std::clamp((static_cast<double>(k_peak) + delta) * df, kBandLoHz, kBandHiHz);
    return 60.0 * f_peak;
}

PeakDetection detect_peaks(const PulseSignal& pulse, std::optional<double> hr_hint_bpm) {
    if (pulse.duration_s() < kMinDurationS)
        throw Error("SignalTooShort", "need >= 10 s of signal for beat detection");

    const double hr = hr_hint_bpm ? *hr_hint_bpm : estimate_hr(pulse);
    if (!(hr > 0.0)) throw std::invalid_argument("detect_peaks: hr hint must be > 0");
    const double refractory_s = 0.6 * (60.0 / hr);

    const auto& x = pulse.samples;
    const double threshold = 0.3 * stddev_population(x);

    std::vector<std::size_t> kept;
    for (std::size_t i = 1; i + 1 < x.size(); ++i) {
        if (!(x[i] > x[i - 1] && x[i] > x[i + 1] && x[i] > threshold)) continue;
        if (kept.empty() ||
            static_cast<double>(i - kept.back()) / pulse.fs >= refractory_s) {
            kept.push_back(i);
        } else if (x[i] > x[kept.back()]) {
            kept.back() = i;  // larger peak wins inside the refractory window
        }
    }
    if (kept.size() < 2) throw Error("NoPeaks", "fewer than 2 peaks above threshold");

    PeakDetection out;
    out.peak_indices = kept;
    for (std::size_t i = 1; i < kept.size(); ++i) {
        const double rr_ms = 1000.0 * static_cast<double>(kept[i] - kept[i - 1]) / pulse.fs;
        if (rr_ms < kRrMinMs || rr_ms > kRrMaxMs) {
            out.outliers_dropped = true;
            continue;
        }
        out.rr.intervals_ms.push_back(rr_ms);
    }
    if (out.rr.intervals_ms.empty())
        throw Error("NoPeaks", "no physiologically plausible RR intervals survived");
    return out;
}

HrvSummary hrv_metrics(const RrSeries& rr) {
    const auto& x = rr.intervals_ms;
    if (x.size() < 2) throw Error("TooFewIntervals", "need >= 2 RR intervals");

    const std::size_t n_diffs = x.size() - 1;
    std::size_t above_50 = 0;
    double sq_sum = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double d = x[i + 1] - x[i];
        if (std::abs(d) > 50.0) ++above_50;
        sq_sum += d * d;
    }

    HrvSummary out;
    out.pnn50_pct = 100.0 * static_cast<double>(above_50) / static_cast<double>(n_diffs);
    out.rmssd_ms = std::sqrt(sq_sum / static_cast<double>(n_diffs));
    out.sdnn_ms = stddev_sample(x);
    return out;
}

BaevskyResult baevsky_si(const RrSeries& rr) {
    const auto& x = rr.intervals_ms;
    if (x.size() < 10) throw Error("TooFewIntervals", "need >= 10 RR intervals");

    // 50 ms bins spanning [0.3, 2.0] s; out-of-span intervals clip into the
    // edge bins.
    constexpr int kBins = 34;
    int counts[kBins] = {};
    for (double v : x) {
        int idx = static_cast<int>(std::floor((v - 300.0) / 50.0 + 1e-9));
        idx = std::clamp(idx, 0, kBins - 1);
        ++counts[idx];
    }
    int modal = 0;
    for (int i = 1; i < kBins; ++i)
        if (counts[i] > counts[modal]) modal = i;  // lowest bin wins ties

    const double amo_pct =
        100.0 * static_cast<double>(counts[modal]) / static_cast<double>(x.size());
    const double mo_s = (300.0 + 50.0 * modal + 25.0) / 1000.0;
    const auto [min_it, max_it] = std::minmax_element(x.begin(), x.end());
    double range_s = (*max_it - *min_it) / 1000.0;

    BaevskyResult out;
    if (range_s < 0.05) {
        range_s = 0.05;
        out.degenerate_variability = true;
    }
    out.stress_index = amo_pct / (2.0 * mo_s * range_s);
    return out;
}

VitalsReport compute_vitals(const CombinedSeries& series, const PosConfig& cfg) {
    if (series.duration_s() < kMinDurationS)
        throw Error("TraceTooShort", "need >= 10 s of trace");

    const PulseSignal pulse = pos_pipeline(series, cfg);

    double in_sq = 0.0;
    for (const auto* ch : {&series.r, &series.g, &series.b})
        for (double v : *ch) in_sq += v * v;
    const double in_rms = std::sqrt(in_sq / static_cast<double>(3 * series.size()));
    if (rms(pulse.samples) < 1e-9 * in_rms)
        throw Error("NoPulse", "pulse extraction produced a (near-)zero signal");

    VitalsReport report;
    report.hr_bpm = estimate_hr(pulse);
    const PeakDetection peaks = detect_peaks(pulse, report.hr_bpm);
    report.rr = peaks.rr;

    bool low_beat_count = peaks.outliers_dropped;
    bool degenerate = false;
    try {
        const HrvSummary hrv = hrv_metrics(report.rr);
        report.pnn50_pct = hrv.pnn50_pct;
        report.rmssd_ms = hrv.rmssd_ms;
        report.sdnn_ms = hrv.sdnn_ms;
    } catch (const Error&) {
        low_beat_count = true;
    }
    try {
        const BaevskyResult si = baevsky_si(report.rr);
        report.stress_index = si.stress_index;
        degenerate = si.degenerate_variability;
    } catch (const Error&) {
        low_beat_count = true;
    }

    if (degenerate) report.quality.push_back(QualityFlag::degenerate_variability);
    if (low_beat_count) report.quality.push_back(QualityFlag::low_beat_count);
    if (report.quality.empty()) report.quality.push_back(QualityFlag::ok);
    return report;
}

}  // namespace vitalscan
