#include "vitalscan/trace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string_view>
#include <system_error>

#include "vitalscan/error.hpp"

namespace vitalscan {
namespace {

constexpr std::string_view kHeader = "t,roi,r,g,b";

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

bool parse_double(std::string_view token, double& out) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

std::string shortest(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return {buf, ptr};
}

// Splits one data row into the five expected fields.
bool split_row(std::string_view line, std::string_view out[5]) {
    std::size_t field = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            if (field >= 5) return false;
            out[field++] = line.substr(start, i - start);
            start = i + 1;
        }
    }
    return field == 5;
}

std::optional<double> estimate_fs(const std::vector<RoiStream>& streams) {
    double acc = 0.0;
    std::size_t n = 0;
    for (const auto& s : streams) {
        if (s.size() < 2) return std::nullopt;
        const double span = s.t.back() - s.t.front();
        if (span <= 0.0) return std::nullopt;
        acc += static_cast<double>(s.size() - 1) / span;
        ++n;
    }
    if (n == 0) return std::nullopt;
    return acc / static_cast<double>(n);
}

// Linear interpolation of (xs, ys) at query points qs; qs must lie inside
// [xs.front(), xs.back()] up to rounding slack.
std::vector<double> interp_linear(const std::vector<double>& xs, const std::vector<double>& ys,
                                  const std::vector<double>& qs) {
    std::vector<double> out(qs.size());
    std::size_t j = 0;
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const double q = qs[i];
        while (j + 2 < xs.size() && xs[j + 1] <= q) ++j;
        const double x0 = xs[j], x1 = xs[j + 1];
        double u = (q - x0) / (x1 - x0);
        u = std::clamp(u, 0.0, 1.0);
        out[i] = ys[j] + u * (ys[j + 1] - ys[j]);
    }
    return out;
}

}  // namespace

std::vector<std::string> RgbTrace::roi_set() const {
    std::vector<std::string> out;
    out.reserve(streams.size());
    for (const auto& s : streams) out.push_back(s.roi);
    return out;
}

std::size_t RgbTrace::sample_count() const {
    std::size_t n = 0;
    for (const auto& s : streams) n += s.size();
    return n;
}

const RoiStream* RgbTrace::find(const std::string& roi) const {
    for (const auto& s : streams) {
        if (s.roi == roi) return &s;
    }
    return nullptr;
}

RgbTrace parse_trace(const std::string& document) {
    RgbTrace trace;
    bool header_seen = false;
    int line_no = 0;
    std::size_t pos = 0;

    auto stream_of = [&trace](std::string_view roi) -> RoiStream& {
        for (auto& s : trace.streams) {
            if (s.roi == roi) return s;
        }
        trace.streams.emplace_back();
        trace.streams.back().roi = std::string(roi);
        return trace.streams.back();
    };

    while (pos <= document.size()) {
        if (pos == document.size()) break;
        const std::size_t eol = document.find('\n', pos);
        std::string_view line(document.data() + pos,
                              (eol == std::string::npos ? document.size() : eol) - pos);
        pos = (eol == std::string::npos) ? document.size() : eol + 1;
        ++line_no;

        line = strip_cr(line);
        if (line.empty() || line.front() == '#') continue;

        if (!header_seen) {
            if (line != kHeader)
                throw Error("MalformedRow", line_no,
                            "expected header '" + std::string(kHeader) + "'");
            header_seen = true;
            continue;
        }

        std::string_view fields[5];
        if (!split_row(line, fields))
            throw Error("MalformedRow", line_no, "expected 5 comma-separated fields");

        double t, r, g, b;
        if (!parse_double(fields[0], t) || t < 0.0)
            throw Error("MalformedRow", line_no, "bad timestamp '" + std::string(fields[0]) + "'");
        if (fields[1].empty())
            throw Error("MalformedRow", line_no, "empty roi label");
        if (!parse_double(fields[2], r) || !parse_double(fields[3], g) || !parse_double(fields[4], b))
            throw Error("MalformedRow", line_no, "bad channel value");
        if (r <= 0.0 || g <= 0.0 || b <= 0.0)
            throw Error("NonPositiveChannel", line_no, "channel values must be > 0");

        RoiStream& s = stream_of(fields[1]);
        if (!s.t.empty() && t <= s.t.back())
            throw Error("NonMonotoneTimestamps", line_no,
                        "roi '" + s.roi + "' timestamps must be strictly increasing");
        s.t.push_back(t);
        s.r.push_back(r);
        s.g.push_back(g);
        s.b.push_back(b);
    }

    if (trace.streams.empty()) throw Error("EmptyTrace", "no data rows");
    trace.fs = estimate_fs(trace.streams);
    return trace;
}

std::string serialize_trace(const RgbTrace& trace) {
    std::string out(kHeader);
    out += '\n';
    for (const auto& s : trace.streams) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            out += shortest(s.t[i]);
            out += ',';
            out += s.roi;
            out += ',';
            out += shortest(s.r[i]);
            out += ',';
            out += shortest(s.g[i]);
            out += ',';
            out += shortest(s.b[i]);
            out += '\n';
        }
    }
    return out;
}

RgbTrace resample_uniform(const RgbTrace& trace, double fs_target, double gap_limit_s) {
    if (!(fs_target > 0.0)) throw std::invalid_argument("resample_uniform: fs_target must be > 0");
    if (!(gap_limit_s > 0.0)) throw std::invalid_argument("resample_uniform: gap_limit must be > 0");
    if (trace.streams.empty()) throw Error("TooFewSamples", "trace has no ROI streams");

    double t0 = -std::numeric_limits<double>::infinity();
    double t_end = std::numeric_limits<double>::infinity();
    for (const auto& s : trace.streams) {
        if (s.size() < 2)
            throw Error("TooFewSamples", "roi '" + s.roi + "' has fewer than 2 samples");
        for (std::size_t i = 1; i < s.size(); ++i) {
            const double gap = s.t[i] - s.t[i - 1];
            if (gap > gap_limit_s)
                throw Error("GapTooLarge", "roi '" + s.roi + "' has a " + std::to_string(gap) +
                                               " s gap (limit " + std::to_string(gap_limit_s) + " s)");
        }
        t0 = std::max(t0, s.t.front());
        t_end = std::min(t_end, s.t.back());
    }

    const long long steps =
        static_cast<long long>(std::floor((t_end - t0) * fs_target + 1e-9));
    if (steps < 1) throw Error("TooFewSamples", "ROI spans leave fewer than 2 grid points");

    std::vector<double> grid(static_cast<std::size_t>(steps) + 1);
    for (std::size_t k = 0; k < grid.size(); ++k)
        grid[k] = t0 + static_cast<double>(k) / fs_target;

    RgbTrace out;
    out.fs = fs_target;
    out.streams.reserve(trace.streams.size());
    for (const auto& s : trace.streams) {
        RoiStream rs;
        rs.roi = s.roi;
        rs.t = grid;
        rs.r = interp_linear(s.t, s.r, grid);
        rs.g = interp_linear(s.t, s.g, grid);
        rs.b = interp_linear(s.t, s.b, grid);
        out.streams.push_back(std::move(rs));
    }
    return out;
}

CombinedSeries combine_rois(const RgbTrace& trace, const std::map<std::string, double>& weights) {
    if (trace.streams.empty()) throw Error("RoiGridMismatch", "trace has no ROI streams");
    const RoiStream& ref = trace.streams.front();
    if (ref.size() < 2) throw Error("RoiGridMismatch", "shared grid needs at least 2 samples");

    for (const auto& s : trace.streams) {
        if (s.size() != ref.size())
            throw Error("RoiGridMismatch", "roi '" + s.roi + "' length differs from '" + ref.roi + "'");
        for (std::size_t i = 0; i < s.size(); ++i) {
            const double tol = 1e-9 * std::max(1.0, std::abs(ref.t[i]));
            if (std::abs(s.t[i] - ref.t[i]) > tol)
                throw Error("RoiGridMismatch", "roi '" + s.roi + "' timestamps differ from '" + ref.roi + "'");
        }
    }

    // The shared grid must also be uniform.
    const double dt = (ref.t.back() - ref.t.front()) / static_cast<double>(ref.size() - 1);
    if (!(dt > 0.0)) throw Error("RoiGridMismatch", "grid spacing must be positive");
    for (std::size_t i = 1; i < ref.size(); ++i) {
        if (std::abs((ref.t[i] - ref.t[i - 1]) - dt) > 1e-9 * std::max(1.0, dt) + 1e-12)
            throw Error("RoiGridMismatch", "grid is not uniformly spaced");
    }

    std::vector<double> w(trace.streams.size(), 1.0);
    if (!weights.empty()) {
        for (std::size_t i = 0; i < trace.streams.size(); ++i) {
            const auto it = weights.find(trace.streams[i].roi);
            w[i] = (it == weights.end()) ? 0.0 : it->second;
            if (w[i] < 0.0)
                throw std::invalid_argument("combine_rois: weights must be non-negative");
        }
    }
    double w_sum = 0.0;
    for (double v : w) w_sum += v;
    if (w_sum <= 0.0) throw Error("AllZeroWeights", "ROI weights sum to zero");
    for (double& v : w) v /= w_sum;

    CombinedSeries series;
    series.t0 = ref.t.front();
    series.fs = trace.fs.value_or(1.0 / dt);
    series.r.assign(ref.size(), 0.0);
    series.g.assign(ref.size(), 0.0);
    series.b.assign(ref.size(), 0.0);
    for (std::size_t s = 0; s < trace.streams.size(); ++s) {
        const RoiStream& st = trace.streams[s];
        for (std::size_t i = 0; i < st.size(); ++i) {
            series.r[i] += w[s] * st.r[i];
            series.g[i] += w[s] * st.g[i];
            series.b[i] += w[s] * st.b[i];
        }
    }
    return series;
}

}  // namespace vitalscan
