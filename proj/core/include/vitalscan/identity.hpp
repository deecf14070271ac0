#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vitalscan {

struct GalleryParams {
    std::size_t k = 5;
    double tau = 1.0;
};

struct EmbeddingRecord {
    std::string subject_id;
    std::vector<double> vector;  // unit L2 norm
    std::string enrolled_at;     // informational ISO-8601 UTC
};

struct IdentityMatch {
    std::optional<std::string> decision;  // nullopt = unknown subject
    double nearest_distance = 0.0;
    std::map<std::string, int> votes;
};

// v / ||v||2. Throws ZeroVector when ||v||2 < 1e-12.
std::vector<double> normalize_embedding(std::span<const double> v);

class EmbeddingGallery {
  public:
    explicit EmbeddingGallery(std::size_t dim, GalleryParams params = {});

    std::size_t dim() const noexcept { return dim_; }
    const GalleryParams& params() const noexcept { return params_; }
    const std::vector<EmbeddingRecord>& records() const noexcept { return records_; }
    std::size_t size() const noexcept { return records_.size(); }
    bool empty() const noexcept { return records_.empty(); }

    // Normalizes and appends; a subject may hold any number of records.
    void enroll(const std::string& subject_id, std::span<const double> raw_vector);

    // k-NN vote over Euclidean distance; ties resolve by mean distance, then
    // subject id, so record order never matters. Safe to call concurrently.
    IdentityMatch identify(std::span<const double> raw_probe) const;

    // Used by load_gallery; the vector must already be unit length.
    void push_record(EmbeddingRecord record);

  private:
    std::size_t dim_;
    GalleryParams params_;
    std::vector<EmbeddingRecord> records_;
};

// JSON-lines file, header line first: {"dim":...,"k":...,"tau":...}, then one
// record object per line. Save writes a temp file and renames it into place.
void save_gallery(const EmbeddingGallery& gallery, const std::string& path);
EmbeddingGallery load_gallery(const std::string& path);

}  // namespace vitalscan
