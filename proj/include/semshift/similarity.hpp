#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "semshift/embedding_store.hpp"

namespace semshift {

struct Neighbor {
    std::string word;
    Vector embedding;
};

// The k nearest neighboring words of a sense centroid, nearest first.
struct NeighborSet {
    Vector anchor;
    std::vector<Neighbor> neighbors;

    std::size_t k() const { return neighbors.size(); }
};

// n x m matrix of sense-to-sense similarities, row-major.
class SimilarityMatrix {
public:
    SimilarityMatrix() = default;
    SimilarityMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);
    static SimilarityMatrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }
    const std::vector<double>& values() const { return values_; }
    SimilarityMatrix transposed() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

// Representative embeddings of every word in a store, computed once for repeated
// neighbor queries.
class NeighborIndex {
public:
    explicit NeighborIndex(const EmbeddingStore& store);

    // Exact full scan. Candidates need at least min_tokens occurrences and must not
    // be excluded. Ordered by cosine distance to the anchor, ties by word.
    NeighborSet knn(const Vector& anchor, std::size_t k, const std::set<std::string>& exclude,
                    std::size_t min_tokens) const;

private:
    struct Entry {
        std::string word;
        Vector embedding;
        std::size_t tokens = 0;
    };
    std::vector<Entry> entries_;
};

inline constexpr std::size_t kDefaultNeighbors = 14;
inline constexpr std::size_t kDefaultMinTokens = 5;

NeighborSet knn(const EmbeddingStore& store, const Vector& anchor, std::size_t k,
                const std::set<std::string>& exclude, std::size_t min_tokens = kDefaultMinTokens);

// 1 - (optimal matching cost between the two neighbor sets) / k, with cosine
// distance as the cost. When given, offset is added to every embedding of u.
double sense_similarity(const NeighborSet& u, const NeighborSet& v,
                        const std::optional<Vector>& offset = std::nullopt);

SimilarityMatrix similarity_matrix(const std::vector<NeighborSet>& senses_a,
                                   const std::vector<NeighborSet>& senses_b,
                                   const std::optional<Vector>& offset = std::nullopt);

}  // namespace semshift
