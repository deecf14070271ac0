#include "vitalscan/report.hpp"

#include <cstdio>

namespace vitalscan {
namespace {

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

std::string quoted(const std::string& s) { return '"' + escape(s) + '"'; }

std::string opt_float(const std::optional<double>& v) {
    return v ? format_float(*v) : "null";
}

std::string float_array(const std::vector<double>& xs) {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ',';
        out += format_float(xs[i]);
    }
    out += ']';
    return out;
}

}  // namespace

std::string format_float(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    std::string s = buf;
    if (s == "-0") s = "0";
    return s;
}

std::string canonical_report_json(const VitalsReport& report) {
    std::string out = "{";
    out += "\"hr_bpm\":" + format_float(report.hr_bpm);
    out += ",\"pnn50_pct\":" + opt_float(report.pnn50_pct);
    out += ",\"quality\":[";
    for (std::size_t i = 0; i < report.quality.size(); ++i) {
        if (i) out += ',';
        out += quoted(to_string(report.quality[i]));
    }
    out += ']';
    out += ",\"rmssd_ms\":" + opt_float(report.rmssd_ms);
    out += ",\"rr\":{\"intervals_ms\":" + float_array(report.rr.intervals_ms) + '}';
    out += ",\"sdnn_ms\":" + opt_float(report.sdnn_ms);
    out += ",\"stress_index\":" + opt_float(report.stress_index);
    out += "}\n";
    return out;
}

std::string canonical_match_json(const IdentityMatch& match) {
    std::string out = "{";
    out += "\"decision\":";
    out += match.decision ? quoted(*match.decision) : "null";
    out += ",\"nearest_distance\":" + format_float(match.nearest_distance);
    out += ",\"votes\":{";
    bool first = true;
    for (const auto& [id, count] : match.votes) {
        if (!first) out += ',';
        first = false;
        out += quoted(id) + ':' + std::to_string(count);
    }
    out += "}}\n";
    return out;
}

std::string canonical_ground_truth_json(const SynthGroundTruth& truth) {
    std::string out = "{";
    out += "\"amplitude_frac\":" + format_float(truth.amplitude_frac);
    out += ",\"beat_times_s\":" + float_array(truth.beat_times_s);
    out += ",\"hr_bpm\":" + format_float(truth.hr_bpm);
    out += ",\"noise_sigma_frac\":" + format_float(truth.noise_sigma_frac);
    out += ",\"pulse_hz\":" + format_float(truth.pulse_hz);
    out += ",\"seed\":" + std::to_string(truth.seed);
    out += "}\n";
    return out;
}

std::string canonical_error_json(const std::string& error_name) {
    return "{\"error\":" + quoted(error_name) + "}\n";
}

}  // namespace vitalscan
