#include "semshift/similarity.hpp"

#include <algorithm>

#include "semshift/assignment.hpp"
#include "semshift/error.hpp"
#include "semshift/parallel.hpp"

namespace semshift {

SimilarityMatrix::SimilarityMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (values_.size() != rows_ * cols_) {
        throw Error("similarity matrix shape mismatch");
    }
}

SimilarityMatrix SimilarityMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    std::vector<double> flat;
    for (const auto& r : rows) {
        if (r.size() != cols) throw Error("similarity matrix rows must have equal length");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return SimilarityMatrix(rows.size(), cols, std::move(flat));
}

SimilarityMatrix SimilarityMatrix::transposed() const {
    std::vector<double> t(values_.size());
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) t[c * rows_ + r] = values_[r * cols_ + c];
    }
    return SimilarityMatrix(cols_, rows_, std::move(t));
}

NeighborIndex::NeighborIndex(const EmbeddingStore& store) {
    entries_.reserve(store.clouds().size());
    for (const auto& [word, cloud] : store.clouds()) {
        entries_.push_back({word, centroid(cloud), cloud.rows()});
    }
}

NeighborSet NeighborIndex::knn(const Vector& anchor, std::size_t k,
                               const std::set<std::string>& exclude,
                               std::size_t min_tokens) const {
    if (k == 0) {
        throw Error("knn needs k >= 1");
    }
    std::vector<std::pair<double, const Entry*>> scored;
    for (const auto& e : entries_) {
        if (e.tokens < min_tokens || exclude.count(e.word) != 0) continue;
        scored.emplace_back(cosine_distance(anchor, e.embedding), &e);
    }
    if (scored.size() < k) {
        throw Error("knn: only " + std::to_string(scored.size()) + " eligible words, need " +
                    std::to_string(k));
    }
    // entries_ is sorted by word, so a stable sort on distance breaks ties by word.
    std::stable_sort(scored.begin(), scored.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    NeighborSet out;
    out.anchor = anchor;
    for (std::size_t i = 0; i < k; ++i) {
        out.neighbors.push_back({scored[i].second->word, scored[i].second->embedding});
    }
    return out;
}

NeighborSet knn(const EmbeddingStore& store, const Vector& anchor, std::size_t k,
                const std::set<std::string>& exclude, std::size_t min_tokens) {
    return NeighborIndex(store).knn(anchor, k, exclude, min_tokens);
}

double sense_similarity(const NeighborSet& u, const NeighborSet& v, const std::optional<Vector>& offset) {
    const std::size_t k = u.k();
    if (k == 0 || v.k() != k) {
        throw Error("sense similarity needs two neighbor sets of equal, positive size");
    }
    std::vector<double> cost(k * k);
    Vector shifted;
    for (std::size_t a = 0; a < k; ++a) {
        const Vector* left = &u.neighbors[a].embedding;
        if (offset) {
            if (offset->size() != left->size()) throw Error("offset dimension mismatch");
            shifted = *left;
            for (std::size_t c = 0; c < shifted.size(); ++c) shifted[c] += (*offset)[c];
            left = &shifted;
        }
        for (std::size_t b = 0; b < k; ++b) {
            cost[a * k + b] = cosine_distance(*left, v.neighbors[b].embedding);
        }
    }
    const Matching m = solve(CostMatrix(k, std::move(cost)));
    return 1.0 - m.total_cost / static_cast<double>(k);
}

SimilarityMatrix similarity_matrix(const std::vector<NeighborSet>& senses_a,
                                   const std::vector<NeighborSet>& senses_b,
                                   const std::optional<Vector>& offset) {
    if (senses_a.empty() || senses_b.empty()) {
        throw Error("similarity matrix needs non-empty sense lists");
    }
    const std::size_t k = senses_a.front().k();
    for (const auto* list : {&senses_a, &senses_b}) {
        for (const auto& s : *list) {
            if (s.k() != k) throw Error("neighbor sets must share one k");
        }
    }
    const std::size_t rows = senses_a.size();
    const std::size_t cols = senses_b.size();
    std::vector<double> values(rows * cols);
    parallel_for(rows, [&](std::size_t r) {
        for (std::size_t c = 0; c < cols; ++c) {
            values[r * cols + c] = sense_similarity(senses_a[r], senses_b[c], offset);
        }
    });
    return SimilarityMatrix(rows, cols, std::move(values));
}

}  // namespace semshift
