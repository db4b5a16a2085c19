#include "semshift/embedding_store.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "semshift/error.hpp"

namespace semshift {
namespace {

using json = nlohmann::json;

constexpr int kFormatVersion = 1;

bool all_finite(std::span<const float> values) {
    return std::all_of(values.begin(), values.end(), [](float v) { return std::isfinite(v); });
}

double squared_norm(std::span<const float> row) {
    double s = 0.0;
    for (float v : row) {
        s += static_cast<double>(v) * static_cast<double>(v);
    }
    return s;
}

template <class T, class U>
double cosine_distance_impl(std::span<const T> u, std::span<const U> v) {
    if (u.size() != v.size()) {
        throw Error("dimension mismatch in cosine distance");
    }
    double dot = 0.0;
    double nu = 0.0;
    double nv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double a = static_cast<double>(u[i]);
        const double b = static_cast<double>(v[i]);
        dot += a * b;
        nu += a * a;
        nv += b * b;
    }
    if (!(nu > 0.0) || !(nv > 0.0)) {
        throw Error("degenerate vector");
    }
    const double d = 1.0 - dot / (std::sqrt(nu) * std::sqrt(nv));
    return std::clamp(d, 0.0, 2.0);
}

std::uint32_t to_little_endian(std::uint32_t bits) {
    if constexpr (std::endian::native == std::endian::big) {
        return ((bits & 0xFFu) << 24) | ((bits & 0xFF00u) << 8) | ((bits >> 8) & 0xFF00u) |
               (bits >> 24);
    }
    return bits;
}

std::vector<float> read_vectors(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        throw Error("cannot open " + file.string());
    }
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.size() % 4 != 0) {
        throw Error("truncated vector file: size is not a multiple of 4 bytes");
    }
    std::vector<float> values(bytes.size() / 4);
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::uint32_t bits = 0;
        std::memcpy(&bits, bytes.data() + 4 * i, 4);
        values[i] = std::bit_cast<float>(to_little_endian(bits));
    }
    return values;
}

// Checked a * b + c on element counts.
std::uint64_t checked_extent(std::uint64_t offset, std::uint64_t count, std::uint64_t dim) {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    if (dim != 0 && count > kMax / dim) {
        throw Error("offset/count overflow");
    }
    const std::uint64_t span = count * dim;
    if (offset > kMax - span) {
        throw Error("offset/count overflow");
    }
    return offset + span;
}

std::uint64_t manifest_uint(const json& obj, const char* key) {
    if (!obj.contains(key) || !obj.at(key).is_number_unsigned()) {
        throw Error(std::string("malformed manifest: '") + key + "' must be a non-negative integer");
    }
    return obj.at(key).get<std::uint64_t>();
}

std::string manifest_string(const json& obj, const char* key) {
    if (!obj.contains(key) || !obj.at(key).is_string()) {
        throw Error(std::string("malformed manifest: '") + key + "' must be a string");
    }
    return obj.at(key).get<std::string>();
}

}  // namespace

TokenCloud::TokenCloud(std::string word, std::size_t dim, std::vector<float> values)
    : word_(std::move(word)), dim_(dim), values_(std::move(values)) {
    if (dim_ == 0) {
        throw Error("token cloud '" + word_ + "' has zero dimension");
    }
    if (values_.empty()) {
        throw Error("token cloud '" + word_ + "' has no tokens");
    }
    if (values_.size() % dim_ != 0) {
        throw Error("dimension mismatch in token cloud '" + word_ + "'");
    }
    if (!all_finite(values_)) {
        throw Error("non-finite value in token cloud '" + word_ + "'");
    }
    for (std::size_t r = 0; r < rows(); ++r) {
        if (!(squared_norm(row(r)) > 0.0)) {
            throw Error("degenerate vector: zero-norm token in '" + word_ + "'");
        }
    }
}

TokenCloud TokenCloud::subset(std::span<const std::size_t> rows) const {
    std::vector<float> out;
    out.reserve(rows.size() * dim_);
    for (std::size_t r : rows) {
        const auto src = row(r);
        out.insert(out.end(), src.begin(), src.end());
    }
    return TokenCloud(word_, dim_, std::move(out));
}

EmbeddingStore::EmbeddingStore(SliceId slice, std::size_t dim,
                               std::map<std::string, TokenCloud> clouds,
                               std::optional<std::vector<float>> language_mean)
    : slice_(std::move(slice)),
      dim_(dim),
      clouds_(std::move(clouds)),
      language_mean_(std::move(language_mean)) {
    if (slice_.language.empty() || slice_.period.empty()) {
        throw Error("slice language and period must be non-empty");
    }
    if (dim_ == 0) {
        throw Error("store dimension must be positive");
    }
    for (const auto& [word, cloud] : clouds_) {
        if (word != cloud.word()) {
            throw Error("store key '" + word + "' does not match cloud word '" + cloud.word() + "'");
        }
        if (cloud.dim() != dim_) {
            throw Error("dimension mismatch: word '" + word + "' has dim " +
                        std::to_string(cloud.dim()) + ", store has " + std::to_string(dim_));
        }
    }
    if (language_mean_) {
        if (language_mean_->size() != dim_) {
            throw Error("dimension mismatch: language mean length differs from store dim");
        }
        if (!all_finite(*language_mean_)) {
            throw Error("non-finite value in language mean");
        }
    }
}

const TokenCloud& EmbeddingStore::cloud(const std::string& word) const {
    const auto it = clouds_.find(word);
    if (it == clouds_.end()) {
        throw Error("unknown word: " + word);
    }
    return it->second;
}

std::size_t EmbeddingStore::token_count() const {
    std::size_t n = 0;
    for (const auto& [_, cloud] : clouds_) {
        n += cloud.rows();
    }
    return n;
}

EmbeddingStore load_store(const std::filesystem::path& dir, const LoadOptions& options) {
    const auto manifest_path = dir / "manifest.json";
    std::ifstream in(manifest_path);
    if (!in) {
        throw Error("cannot open " + manifest_path.string());
    }
    json manifest;
    try {
        in >> manifest;
    } catch (const json::exception& e) {
        throw Error(std::string("malformed manifest: ") + e.what());
    }
    if (!manifest.is_object()) {
        throw Error("malformed manifest: top level must be an object");
    }
    if (!manifest.contains("format_version") || manifest.at("format_version") != kFormatVersion) {
        throw Error("malformed manifest: unsupported format_version");
    }
    SliceId slice{manifest_string(manifest, "language"), manifest_string(manifest, "period")};
    const std::uint64_t dim = manifest_uint(manifest, "dim");
    if (dim == 0) {
        throw Error("malformed manifest: dim must be positive");
    }
    if (!manifest.contains("words") || !manifest.at("words").is_array()) {
        throw Error("malformed manifest: 'words' must be an array");
    }

    const std::vector<float> data = read_vectors(dir / "vectors.bin");
    const std::uint64_t available = data.size();

    std::uint64_t described = 0;
    std::map<std::string, TokenCloud> clouds;
    std::string previous;
    bool first = true;
    for (const auto& entry : manifest.at("words")) {
        if (!entry.is_object()) {
            throw Error("malformed manifest: word entries must be objects");
        }
        std::string word = manifest_string(entry, "word");
        const std::uint64_t offset = manifest_uint(entry, "offset");
        const std::uint64_t count = manifest_uint(entry, "count");
        if (count == 0) {
            throw Error("malformed manifest: word '" + word + "' has zero count");
        }
        if (!first && !(previous < word)) {
            throw Error("malformed manifest: words must be unique and sorted");
        }
        first = false;
        previous = word;

        const std::uint64_t end = checked_extent(offset, count, dim);
        if (end > available) {
            throw Error("truncated vector file: word '" + word + "' extends past end of vectors.bin");
        }
        described += count * dim;
        std::vector<float> values(data.begin() + static_cast<std::ptrdiff_t>(offset),
                                  data.begin() + static_cast<std::ptrdiff_t>(end));
        if (!all_finite(values)) {
            throw Error("non-finite value in word '" + word + "'");
        }
        if (options.normalize_tokens) {
            for (std::size_t r = 0; r < count; ++r) {
                std::span<float> row(values.data() + r * dim, dim);
                const double norm = std::sqrt(squared_norm(row));
                if (norm > 0.0) {
                    for (float& v : row) {
                        v = static_cast<float>(v / norm);
                    }
                }
            }
        }
        TokenCloud cloud(word, dim, std::move(values));
        clouds.emplace(std::move(word), std::move(cloud));
    }
    if (clouds.empty()) {
        throw Error("malformed manifest: store must contain at least one word");
    }

    std::optional<std::vector<float>> mean;
    if (manifest.contains("language_mean_offset") && !manifest.at("language_mean_offset").is_null()) {
        const std::uint64_t offset = manifest_uint(manifest, "language_mean_offset");
        const std::uint64_t end = checked_extent(offset, 1, dim);
        if (end > available) {
            throw Error("truncated vector file: language mean extends past end of vectors.bin");
        }
        described += dim;
        mean.emplace(data.begin() + static_cast<std::ptrdiff_t>(offset),
                     data.begin() + static_cast<std::ptrdiff_t>(end));
    }
    if (described != available) {
        std::ostringstream msg;
        msg << "dimension mismatch: vectors.bin holds " << available << " floats, manifest describes "
            << described;
        throw Error(msg.str());
    }
    return EmbeddingStore(std::move(slice), dim, std::move(clouds), std::move(mean));
}

void save_store(const EmbeddingStore& store, const std::filesystem::path& dir) {
    if (store.clouds().empty()) {
        throw Error("store must contain at least one word");
    }
    std::filesystem::create_directories(dir);

    json words = json::array();
    std::vector<float> flat;
    flat.reserve(store.token_count() * store.dim() + store.dim());
    for (const auto& [word, cloud] : store.clouds()) {
        words.push_back({{"word", word}, {"offset", flat.size()}, {"count", cloud.rows()}});
        flat.insert(flat.end(), cloud.values().begin(), cloud.values().end());
    }
    json mean_offset = nullptr;
    if (store.language_mean()) {
        mean_offset = flat.size();
        flat.insert(flat.end(), store.language_mean()->begin(), store.language_mean()->end());
    }

    json manifest = {{"format_version", kFormatVersion},
                     {"language", store.slice().language},
                     {"period", store.slice().period},
                     {"dim", store.dim()},
                     {"language_mean_offset", mean_offset},
                     {"words", std::move(words)}};

    std::ofstream bin(dir / "vectors.bin", std::ios::binary | std::ios::trunc);
    if (!bin) {
        throw Error("cannot write " + (dir / "vectors.bin").string());
    }
    for (float v : flat) {
        const std::uint32_t bits = to_little_endian(std::bit_cast<std::uint32_t>(v));
        bin.write(reinterpret_cast<const char*>(&bits), 4);
    }
    std::ofstream man(dir / "manifest.json", std::ios::trunc);
    if (!man) {
        throw Error("cannot write " + (dir / "manifest.json").string());
    }
    man << manifest.dump(2) << '\n';
    if (!bin || !man) {
        throw Error("I/O failure writing store to " + dir.string());
    }
}

Vector centroid(const TokenCloud& cloud) {
    Vector mean(cloud.dim(), 0.0);
    for (std::size_t r = 0; r < cloud.rows(); ++r) {
        const auto row = cloud.row(r);
        for (std::size_t c = 0; c < mean.size(); ++c) {
            mean[c] += row[c];
        }
    }
    for (double& v : mean) {
        v /= static_cast<double>(cloud.rows());
    }
    return mean;
}

Vector centroid(const TokenCloud& cloud, std::span<const std::size_t> rows) {
    if (rows.empty()) {
        throw Error("centroid of an empty row set");
    }
    Vector mean(cloud.dim(), 0.0);
    for (std::size_t r : rows) {
        const auto row = cloud.row(r);
        for (std::size_t c = 0; c < mean.size(); ++c) {
            mean[c] += row[c];
        }
    }
    for (double& v : mean) {
        v /= static_cast<double>(rows.size());
    }
    return mean;
}

double cosine_distance(std::span<const double> u, std::span<const double> v) {
    return cosine_distance_impl(u, v);
}

double cosine_distance(std::span<const float> u, std::span<const float> v) {
    return cosine_distance_impl(u, v);
}

double cosine_distance(std::span<const double> u, std::span<const float> v) {
    return cosine_distance_impl(u, v);
}

Vector representative_embedding(const EmbeddingStore& store, const std::string& word) {
    return centroid(store.cloud(word));
}

Vector token_mean(const EmbeddingStore& store) {
    Vector sum(store.dim(), 0.0);
    std::size_t n = 0;
    for (const auto& [_, cloud] : store.clouds()) {
        for (std::size_t r = 0; r < cloud.rows(); ++r) {
            const auto row = cloud.row(r);
            for (std::size_t c = 0; c < sum.size(); ++c) {
                sum[c] += row[c];
            }
        }
        n += cloud.rows();
    }
    if (n == 0) {
        throw Error("store has no tokens");
    }
    for (double& v : sum) {
        v /= static_cast<double>(n);
    }
    return sum;
}

}  // namespace semshift
