#include "semshift/xlingual.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "semshift/assignment.hpp"
#include "semshift/error.hpp"

namespace semshift {
namespace {

Vector language_mean(const EmbeddingStore& store) {
    if (store.language_mean()) {
        return Vector(store.language_mean()->begin(), store.language_mean()->end());
    }
    if (store.clouds().empty()) {
        throw Error("rectification needs a non-empty store");
    }
    return token_mean(store);
}

void check_shape(const SimilarityMatrix& m, std::size_t rows, std::size_t cols, const char* what) {
    // An empty side may be passed as a 0x0 matrix.
    if ((rows == 0 || cols == 0) && m.values().empty()) return;
    if (m.rows() != rows || m.cols() != cols) {
        throw Error(std::string("shape mismatch: ") + what + " similarity matrix");
    }
}

std::vector<std::pair<std::size_t, std::size_t>> pair_greedy(const SimilarityMatrix& s, double t_cs) {
    std::vector<std::tuple<double, std::size_t, std::size_t>> candidates;
    for (std::size_t i = 0; i < s.rows(); ++i) {
        for (std::size_t j = 0; j < s.cols(); ++j) {
            if (s(i, j) > t_cs) candidates.emplace_back(s(i, j), i, j);
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
        if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
        return std::make_pair(std::get<1>(a), std::get<2>(a)) <
               std::make_pair(std::get<1>(b), std::get<2>(b));
    });
    std::vector<bool> row_used(s.rows(), false);
    std::vector<bool> col_used(s.cols(), false);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& [sim, i, j] : candidates) {
        if (row_used[i] || col_used[j]) continue;
        row_used[i] = col_used[j] = true;
        pairs.emplace_back(i, j);
    }
    return pairs;
}

// Square embedding: real rows x (real cols + one dummy per row) and dummy rows
// for every real column. Pairing (i, j) costs 1 - s, leaving a sense unpaired costs 1.
std::vector<std::pair<std::size_t, std::size_t>> pair_optimal(const SimilarityMatrix& s, double t_cs) {
    const std::size_t n = s.rows();
    const std::size_t m = s.cols();
    const std::size_t size = n + m;
    constexpr double kForbidden = 4.0;
    std::vector<double> cost(size * size, 0.0);
    for (std::size_t r = 0; r < size; ++r) {
        for (std::size_t c = 0; c < size; ++c) {
            double v = 0.0;
            if (r < n && c < m) {
                v = s(r, c) > t_cs ? std::clamp(1.0 - s(r, c), 0.0, 2.0) : kForbidden;
            } else if (r < n || c < m) {
                v = 1.0;
            }
            cost[r * size + c] = v;
        }
    }
    const Matching matching = solve(CostMatrix(size, std::move(cost)));
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t c = matching.perm[r];
        if (c < m && s(r, c) > t_cs) pairs.emplace_back(r, c);
    }
    return pairs;
}

void bucket(const std::vector<std::size_t>& senses_l1, const std::vector<std::size_t>& senses_l2,
            const SimilarityMatrix& sims, double t_cs, Pairing pairing,
            std::vector<SensePair>& consistent, std::vector<std::size_t>& divergent_l1,
            std::vector<std::size_t>& divergent_l2) {
    std::vector<bool> used_l1(senses_l1.size(), false);
    std::vector<bool> used_l2(senses_l2.size(), false);
    if (!senses_l1.empty() && !senses_l2.empty()) {
        const auto pairs = pairing == Pairing::greedy ? pair_greedy(sims, t_cs) : pair_optimal(sims, t_cs);
        for (const auto& [i, j] : pairs) {
            used_l1[i] = used_l2[j] = true;
            consistent.push_back({senses_l1[i], senses_l2[j], sims(i, j)});
        }
    }
    for (std::size_t i = 0; i < senses_l1.size(); ++i) {
        if (!used_l1[i]) divergent_l1.push_back(senses_l1[i]);
    }
    for (std::size_t j = 0; j < senses_l2.size(); ++j) {
        if (!used_l2[j]) divergent_l2.push_back(senses_l2[j]);
    }
}

std::vector<NeighborSet> pick(const std::vector<NeighborSet>& sets,
                              const std::vector<std::size_t>& indices) {
    std::vector<NeighborSet> out;
    for (std::size_t i : indices) out.push_back(sets.at(i));
    return out;
}

SimilarityMatrix offset_similarity(const std::vector<NeighborSet>& a,
                                   const std::vector<NeighborSet>& b, const Vector& offset) {
    if (a.empty() || b.empty()) return {};
    return similarity_matrix(a, b, offset);
}

}  // namespace

RectifiedVector rectification_vector(const EmbeddingStore& store_l1, const EmbeddingStore& store_l2) {
    if (store_l1.dim() != store_l2.dim()) {
        throw Error("dimension mismatch between languages");
    }
    const Vector m1 = language_mean(store_l1);
    const Vector m2 = language_mean(store_l2);
    RectifiedVector out{Vector(m1.size()), store_l1.slice(), store_l2.slice()};
    for (std::size_t c = 0; c < m1.size(); ++c) out.b[c] = m2[c] - m1[c];
    return out;
}

XlingComparison compare_changes(const ChangeReport& report_l1, const ChangeReport& report_l2,
                                const SimilarityMatrix& sims_gain, const SimilarityMatrix& sims_loss,
                                double t_cs, Pairing pairing) {
    check_shape(sims_gain, report_l1.gained.size(), report_l2.gained.size(), "gain");
    check_shape(sims_loss, report_l1.lost.size(), report_l2.lost.size(), "loss");
    XlingComparison out;
    out.word_pair = {report_l1.word, report_l2.word};
    out.t_cs = t_cs;
    bucket(report_l1.gained, report_l2.gained, sims_gain, t_cs, pairing, out.consistent_gains,
           out.divergent_gains_l1, out.divergent_gains_l2);
    bucket(report_l1.lost, report_l2.lost, sims_loss, t_cs, pairing, out.consistent_losses,
           out.divergent_losses_l1, out.divergent_losses_l2);
    return out;
}

double topology_score(const Vector& e, const TokenCloud& cloud) {
    if (cloud.rows() == 0) throw Error("topology score of an empty cloud");
    double total = 0.0;
    for (std::size_t r = 0; r < cloud.rows(); ++r) {
        total += 1.0 - cosine_distance(e, cloud.row(r));
    }
    return total / static_cast<double>(cloud.rows());
}

TokenCloud shift_cloud(const TokenCloud& cloud, const Vector& v) {
    if (v.size() != cloud.dim()) throw Error("shift dimension mismatch");
    std::vector<float> values(cloud.values());
    for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = static_cast<float>(values[i] + v[i % cloud.dim()]);
    }
    return TokenCloud(cloud.word(), cloud.dim(), std::move(values));
}

XlingResult compare_word_pair(const Detector& l1, const Detector& l2, const std::string& word_l1,
                              const std::string& word_l2, double t_cs, Pairing pairing) {
    if (l1.config().strategy != Strategy::time_dependent ||
        l2.config().strategy != Strategy::time_dependent ||
        l1.config().metric != Metric::neighbor_based || l2.config().metric != Metric::neighbor_based) {
        throw Error("cross-lingual comparison needs time-dependent, neighbor-based detection");
    }
    XlingResult out;
    out.l1 = l1.analyze(word_l1);
    out.l2 = l2.analyze(word_l2);
    out.b_earlier = rectification_vector(l1.earlier(), l2.earlier());
    out.b_later = rectification_vector(l1.later(), l2.later());
    const auto& r1 = out.l1.report;
    const auto& r2 = out.l2.report;
    out.sims_gain = offset_similarity(pick(out.l1.later.neighbors, r1.gained),
                                      pick(out.l2.later.neighbors, r2.gained), out.b_later.b);
    out.sims_loss = offset_similarity(pick(out.l1.earlier.neighbors, r1.lost),
                                      pick(out.l2.earlier.neighbors, r2.lost), out.b_earlier.b);
    out.comparison = compare_changes(r1, r2, out.sims_gain, out.sims_loss, t_cs, pairing);
    return out;
}

}  // namespace semshift
