#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace semshift {

using Vector = std::vector<double>;

// Identifies one corpus slice: a language at a time period.
struct SliceId {
    std::string language;
    std::string period;

    bool operator==(const SliceId&) const = default;
    auto operator<=>(const SliceId&) const = default;
};

// All occurrences of one word in a slice, one float32 row per token.
class TokenCloud {
public:
    TokenCloud() = default;
    // values is row-major rows x dim. Throws on empty, ragged, or non-finite input.
    TokenCloud(std::string word, std::size_t dim, std::vector<float> values);

    const std::string& word() const { return word_; }
    std::size_t rows() const { return dim_ == 0 ? 0 : values_.size() / dim_; }
    std::size_t dim() const { return dim_; }
    std::span<const float> row(std::size_t i) const {
        return {values_.data() + i * dim_, dim_};
    }
    const std::vector<float>& values() const { return values_; }

    // Copy restricted to the given rows, in the given order.
    TokenCloud subset(std::span<const std::size_t> rows) const;

    bool operator==(const TokenCloud&) const = default;

private:
    std::string word_;
    std::size_t dim_ = 0;
    std::vector<float> values_;
};

struct LoadOptions {
    // L2-normalize every token row after reading.
    bool normalize_tokens = false;
};

// Immutable collection of token clouds for one slice.
class EmbeddingStore {
public:
    EmbeddingStore() = default;
    EmbeddingStore(SliceId slice, std::size_t dim, std::map<std::string, TokenCloud> clouds,
                   std::optional<std::vector<float>> language_mean = std::nullopt);

    const SliceId& slice() const { return slice_; }
    std::size_t dim() const { return dim_; }
    const std::map<std::string, TokenCloud>& clouds() const { return clouds_; }
    const std::optional<std::vector<float>>& language_mean() const { return language_mean_; }

    bool contains(const std::string& word) const { return clouds_.count(word) != 0; }
    // Throws Error("unknown word: ...") when absent.
    const TokenCloud& cloud(const std::string& word) const;
    std::size_t token_count() const;

    bool operator==(const EmbeddingStore&) const = default;

private:
    SliceId slice_;
    std::size_t dim_ = 0;
    std::map<std::string, TokenCloud> clouds_;
    std::optional<std::vector<float>> language_mean_;
};

// Reads manifest.json + vectors.bin. Validates counts, offsets, finiteness and norms.
EmbeddingStore load_store(const std::filesystem::path& dir, const LoadOptions& options = {});

// Writes the store so that load_store reproduces it bit-exactly.
void save_store(const EmbeddingStore& store, const std::filesystem::path& dir);

// Arithmetic mean of the cloud's rows, accumulated in double.
Vector centroid(const TokenCloud& cloud);

// Mean of the given rows only.
Vector centroid(const TokenCloud& cloud, std::span<const std::size_t> rows);

// 1 - cos(u, v), clamped to [0, 2]. Throws Error("degenerate vector") on zero norm.
double cosine_distance(std::span<const double> u, std::span<const double> v);
double cosine_distance(std::span<const float> u, std::span<const float> v);
double cosine_distance(std::span<const double> u, std::span<const float> v);

// The single vector standing for a word in a slice: the centroid of its cloud.
Vector representative_embedding(const EmbeddingStore& store, const std::string& word);

// Token-weighted mean of every token in the store.
Vector token_mean(const EmbeddingStore& store);

}  // namespace semshift
