#include "vitalscan/identity.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "vitalscan/error.hpp"

namespace vitalscan {
namespace {

std::string utc_now_iso8601() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

double euclidean(std::span<const double> a, std::span<const double> b) {
    double sq = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sq += d * d;
    }
    return std::sqrt(sq);
}

void validate_params(std::size_t dim, const GalleryParams& params) {
    if (dim < 1) throw std::invalid_argument("gallery dim must be >= 1");
    if (params.k < 1) throw std::invalid_argument("gallery k must be >= 1");
    if (!(params.tau > 0.0) || params.tau > 2.0)
        throw std::invalid_argument("gallery tau must lie in (0, 2]");
}

}  // namespace

std::vector<double> normalize_embedding(std::span<const double> v) {
    if (v.empty()) throw std::invalid_argument("embedding must have dim >= 1");
    double sq = 0.0;
    for (double x : v) sq += x * x;
    const double norm = std::sqrt(sq);
    if (norm < 1e-12) throw Error("ZeroVector", "embedding has (near-)zero L2 norm");
    std::vector<double> out(v.begin(), v.end());
    for (double& x : out) x /= norm;
    return out;
}

EmbeddingGallery::EmbeddingGallery(std::size_t dim, GalleryParams params)
    : dim_(dim), params_(params) {
    validate_params(dim, params);
}

void EmbeddingGallery::enroll(const std::string& subject_id,
                              std::span<const double> raw_vector) {
    if (subject_id.empty()) throw std::invalid_argument("subject id must be non-empty");
    if (raw_vector.size() != dim_)
        throw Error("DimensionMismatch", "vector has dim " +
                                             std::to_string(raw_vector.size()) +
                                             ", gallery expects " + std::to_string(dim_));
    records_.push_back({subject_id, normalize_embedding(raw_vector), utc_now_iso8601()});
}

void EmbeddingGallery::push_record(EmbeddingRecord record) {
    records_.push_back(std::move(record));
}

IdentityMatch EmbeddingGallery::identify(std::span<const double> raw_probe) const {
    if (records_.empty()) throw Error("EmptyGallery", "no enrolled subjects");
    if (raw_probe.size() != dim_)
        throw Error("DimensionMismatch", "probe has dim " +
                                             std::to_string(raw_probe.size()) +
                                             ", gallery expects " + std::to_string(dim_));
    const std::vector<double> probe = normalize_embedding(raw_probe);

    std::vector<std::size_t> order(records_.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> dist(records_.size());
    for (std::size_t i = 0; i < records_.size(); ++i)
        dist[i] = euclidean(probe, records_[i].vector);
    // Secondary key keeps the k-cut deterministic under record shuffles.
    const std::size_t k = std::min(params_.k, records_.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k),
                      order.end(), [&](std::size_t a, std::size_t b) {
                          if (dist[a] != dist[b]) return dist[a] < dist[b];
                          return records_[a].subject_id < records_[b].subject_id;
                      });

    IdentityMatch match;
    match.nearest_distance = dist[order[0]];
    std::map<std::string, std::pair<int, double>> tally;  // id -> {votes, dist sum}
    for (std::size_t i = 0; i < k; ++i) {
        auto& entry = tally[records_[order[i]].subject_id];
        entry.first += 1;
        entry.second += dist[order[i]];
    }
    for (const auto& [id, entry] : tally) match.votes[id] = entry.first;

    const std::string* best = nullptr;
    int best_votes = 0;
    double best_mean = 0.0;
    for (const auto& [id, entry] : tally) {  // map order breaks final ties by id
        const double mean = entry.second / entry.first;
        if (best == nullptr || entry.first > best_votes ||
            (entry.first == best_votes && mean < best_mean)) {
            best = &id;
            best_votes = entry.first;
            best_mean = mean;
        }
    }
    if (match.nearest_distance <= params_.tau) match.decision = *best;
    return match;
}

void save_gallery(const EmbeddingGallery& gallery, const std::string& path) {
    std::string body;
    {
        nlohmann::json header;
        header["dim"] = gallery.dim();
        header["k"] = gallery.params().k;
        header["tau"] = gallery.params().tau;
        body = header.dump();
        body.push_back('\n');
    }
    for (const auto& record : gallery.records()) {
        nlohmann::json line;
        line["enrolled_at"] = record.enrolled_at;
        line["subject_id"] = record.subject_id;
        line["vector"] = record.vector;
        body += line.dump();
        body.push_back('\n');
    }

    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write gallery file: " + tmp);
        out << body;
        if (!out.flush()) throw std::runtime_error("cannot write gallery file: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

EmbeddingGallery load_gallery(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open gallery file: " + path);

    std::string line;
    if (!std::getline(in, line))
        throw Error("HeaderMismatch", "gallery file is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    nlohmann::json header = nlohmann::json::parse(line, nullptr, false);
    if (!header.is_object() || !header.contains("dim") || !header.contains("k") ||
        !header.contains("tau") || !header["dim"].is_number_unsigned() ||
        !header["k"].is_number_unsigned() || !header["tau"].is_number())
        throw Error("HeaderMismatch", "first line must carry {dim, k, tau}");

    GalleryParams params;
    params.k = header["k"].get<std::size_t>();
    params.tau = header["tau"].get<double>();
    const auto dim = header["dim"].get<std::size_t>();
    std::optional<EmbeddingGallery> gallery;
    try {
        gallery.emplace(dim, params);
    } catch (const std::invalid_argument& e) {
        throw Error("HeaderMismatch", e.what());
    }

    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
        if (!obj.is_object() || !obj.contains("subject_id") ||
            !obj["subject_id"].is_string() || !obj.contains("vector") ||
            !obj["vector"].is_array())
            throw Error("CorruptLine", line_no, "record is not a valid gallery entry");

        EmbeddingRecord record;
        record.subject_id = obj["subject_id"].get<std::string>();
        if (record.subject_id.empty())
            throw Error("CorruptLine", line_no, "empty subject id");
        if (obj.contains("enrolled_at") && obj["enrolled_at"].is_string())
            record.enrolled_at = obj["enrolled_at"].get<std::string>();

        const auto& vec = obj["vector"];
        if (vec.size() != dim)
            throw Error("CorruptLine", line_no, "vector dim " + std::to_string(vec.size()) +
                                                    " != gallery dim " + std::to_string(dim));
        record.vector.reserve(dim);
        double sq = 0.0;
        for (const auto& x : vec) {
            if (!x.is_number())
                throw Error("CorruptLine", line_no, "vector holds a non-numeric entry");
            const double v = x.get<double>();
            if (!std::isfinite(v))
                throw Error("CorruptLine", line_no, "vector holds a non-finite entry");
            record.vector.push_back(v);
            sq += v * v;
        }
        if (std::abs(std::sqrt(sq) - 1.0) > 1e-6)
            throw Error("CorruptLine", line_no, "stored vector is not unit length");
        gallery->push_record(std::move(record));
    }
    return *gallery;
}

}  // namespace vitalscan
