#include "semshift/detection.hpp"

#include <cmath>

#include "semshift/error.hpp"

namespace semshift {
namespace {

Vector unit(const Vector& v) {
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (!(norm > 0.0)) throw Error("degenerate vector");
    Vector out(v);
    for (double& x : out) x /= norm;
    return out;
}

}  // namespace

ChangeReport detect(const SimilarityMatrix& s, double t_sc) {
    ChangeReport report;
    for (std::size_t i = 0; i < s.rows(); ++i) {
        bool all_below = true;
        for (std::size_t j = 0; j < s.cols() && all_below; ++j) all_below = s(i, j) < t_sc;
        if (all_below) report.lost.push_back(i);
    }
    for (std::size_t j = 0; j < s.cols(); ++j) {
        bool all_below = true;
        for (std::size_t i = 0; i < s.rows() && all_below; ++i) all_below = s(i, j) < t_sc;
        if (all_below) report.gained.push_back(j);
    }
    report.changed = !report.lost.empty() || !report.gained.empty();
    return report;
}

std::vector<std::size_t> frequency_gains(const ClusterSet& pooled,
                                         std::span<const int> slice_of_token) {
    std::vector<std::size_t> gains;
    for (std::size_t c = 0; c < pooled.clusters.size(); ++c) {
        std::size_t early = 0;
        std::size_t late = 0;
        for (std::size_t m : pooled.clusters[c].members) {
            if (m >= slice_of_token.size()) throw Error("token without slice provenance");
            (slice_of_token[m] == 0 ? early : late) += 1;
        }
        if (early < 2 && late > 5) gains.push_back(c);
    }
    return gains;
}

bool frequency_criterion(const ClusterSet& pooled, std::span<const int> slice_of_token) {
    return !frequency_gains(pooled, slice_of_token).empty();
}

SliceSenses induce_senses(const std::string& word, const EmbeddingStore& store,
                          const NeighborIndex& index, const TwoPassParams& params, std::size_t k,
                          std::size_t min_tokens) {
    SliceSenses out;
    out.clusters = two_pass(store.cloud(word), params);
    out.clusters.slice = store.slice();
    const std::set<std::string> exclude{word};
    for (const auto& c : out.clusters.clusters) {
        out.neighbors.push_back(index.knn(c.centroid, k, exclude, min_tokens));
    }
    return out;
}

SimilarityMatrix centroid_similarity(const ClusterSet& a, const ClusterSet& b, Metric metric) {
    std::vector<double> values;
    values.reserve(a.clusters.size() * b.clusters.size());
    for (const auto& p : a.clusters) {
        for (const auto& q : b.clusters) {
            if (metric == Metric::centroid_cosine) {
                values.push_back(1.0 - cosine_distance(p.centroid, q.centroid));
            } else if (metric == Metric::centroid_euclidean) {
                const Vector u = unit(p.centroid);
                const Vector v = unit(q.centroid);
                double d2 = 0.0;
                for (std::size_t c = 0; c < u.size(); ++c) d2 += (u[c] - v[c]) * (u[c] - v[c]);
                values.push_back(1.0 - std::sqrt(d2));
            } else {
                throw Error("centroid similarity requires a centroid metric");
            }
        }
    }
    return SimilarityMatrix(a.clusters.size(), b.clusters.size(), std::move(values));
}

Detector::Detector(const EmbeddingStore& earlier, const EmbeddingStore& later, DetectionConfig config)
    : earlier_(earlier),
      later_(later),
      config_(config),
      earlier_index_(earlier),
      later_index_(later) {
    if (earlier.dim() != later.dim()) {
        throw Error("dimension mismatch between slices");
    }
}

WordAnalysis Detector::analyze(const std::string& word) const {
    if (!earlier_.contains(word)) throw Error("word missing from earlier slice: " + word);
    if (!later_.contains(word)) throw Error("word missing from later slice: " + word);

    WordAnalysis out;
    out.report.word = word;
    if (config_.strategy == Strategy::time_independent) {
        const TokenCloud& a = earlier_.cloud(word);
        const TokenCloud& b = later_.cloud(word);
        std::vector<float> values(a.values());
        values.insert(values.end(), b.values().begin(), b.values().end());
        const TokenCloud pooled(word, a.dim(), std::move(values));
        out.pooled = two_pass(pooled, config_.cluster_params);
        out.pooled_slices.assign(a.rows(), 0);
        out.pooled_slices.insert(out.pooled_slices.end(), b.rows(), 1);
        out.report.gained = frequency_gains(out.pooled, out.pooled_slices);
        out.report.changed = !out.report.gained.empty();
        return out;
    }

    const bool neighbors = config_.metric == Metric::neighbor_based;
    if (neighbors) {
        out.earlier = induce_senses(word, earlier_, earlier_index_, config_.cluster_params, config_.k,
                                    config_.min_tokens);
        out.later = induce_senses(word, later_, later_index_, config_.cluster_params, config_.k,
                                  config_.min_tokens);
        out.similarity = similarity_matrix(out.earlier.neighbors, out.later.neighbors);
    } else {
        out.earlier.clusters = two_pass(earlier_.cloud(word), config_.cluster_params);
        out.earlier.clusters.slice = earlier_.slice();
        out.later.clusters = two_pass(later_.cloud(word), config_.cluster_params);
        out.later.clusters.slice = later_.slice();
        out.similarity = centroid_similarity(out.earlier.clusters, out.later.clusters, config_.metric);
    }
    out.report = detect(out.similarity, config_.t_sc);
    out.report.word = word;
    return out;
}

ChangeReport classify_word(const std::string& word, const EmbeddingStore& store_t0,
                           const EmbeddingStore& store_t1, const DetectionConfig& config) {
    return Detector(store_t0, store_t1, config).classify(word);
}

}  // namespace semshift
