#include "semshift/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "semshift/error.hpp"
#include "semshift/parallel.hpp"

namespace semshift {
namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

SenseRef ref_of(std::size_t flat, std::size_t n_earlier) {
    return flat < n_earlier ? SenseRef{0, flat} : SenseRef{1, flat - n_earlier};
}

double kl_to_mixture(const std::vector<double>& p, const std::vector<double>& m) {
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) total += p[i] * std::log2(p[i] / m[i]);
    }
    return total;
}

}  // namespace

std::vector<SenseGroup> group_senses(const SimilarityMatrix& all_pairs, std::size_t n_earlier,
                                     double t_sc, GroupingMode mode) {
    const std::size_t n = all_pairs.rows();
    if (all_pairs.cols() != n || n_earlier > n) {
        throw Error("sense grouping needs a square matrix over both periods");
    }
    auto linked = [&](std::size_t a, std::size_t b) {
        return all_pairs(a, b) > t_sc && all_pairs(b, a) > t_sc;
    };

    std::vector<std::vector<std::size_t>> groups;
    if (mode == GroupingMode::single_link) {
        std::vector<std::size_t> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a + 1; b < n; ++b) {
                if (!linked(a, b)) continue;
                const std::size_t ra = find_root(parent, a);
                const std::size_t rb = find_root(parent, b);
                if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
            }
        }
        std::vector<std::size_t> slot(n, n);
        for (std::size_t a = 0; a < n; ++a) {
            const std::size_t r = find_root(parent, a);
            if (slot[r] == n) {
                slot[r] = groups.size();
                groups.emplace_back();
            }
            groups[slot[r]].push_back(a);
        }
    } else {
        for (std::size_t a = 0; a < n; ++a) {
            auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) {
                return std::all_of(g.begin(), g.end(), [&](std::size_t b) { return linked(a, b); });
            });
            if (it == groups.end()) {
                groups.push_back({a});
            } else {
                it->push_back(a);
            }
        }
    }

    std::vector<SenseGroup> out;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        SenseGroup group{g, {}};
        for (std::size_t flat : groups[g]) group.members.push_back(ref_of(flat, n_earlier));
        out.push_back(std::move(group));
    }
    return out;
}

std::vector<SenseGroup> group_senses(const SliceSenses& earlier, const SliceSenses& later,
                                     double t_sc, GroupingMode mode) {
    std::vector<NeighborSet> all(earlier.neighbors);
    all.insert(all.end(), later.neighbors.begin(), later.neighbors.end());
    if (all.empty()) return {};
    return group_senses(similarity_matrix(all, all), earlier.neighbors.size(), t_sc, mode);
}

FreqDist freq_dist(const std::vector<SenseGroup>& groups, const ClusterSet& clusters, int period) {
    FreqDist out{std::vector<double>(groups.size(), 0.0)};
    double total = 0.0;
    std::vector<bool> covered(clusters.clusters.size(), false);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        for (const auto& ref : groups[g].members) {
            if (ref.period != period) continue;
            if (ref.index >= clusters.clusters.size()) {
                throw Error("sense group references a missing cluster");
            }
            const auto size = static_cast<double>(clusters.clusters[ref.index].members.size());
            out.weights[g] += size;
            total += size;
            covered[ref.index] = true;
        }
    }
    if (std::find(covered.begin(), covered.end(), false) != covered.end()) {
        throw Error("sense groups do not cover every sense of the period");
    }
    if (!(total > 0.0)) {
        throw Error("frequency distribution over zero tokens");
    }
    for (double& w : out.weights) w /= total;
    return out;
}

double jsd(const FreqDist& p, const FreqDist& q) {
    if (p.weights.size() != q.weights.size()) {
        throw Error("jsd: distributions differ in length");
    }
    std::vector<double> m(p.weights.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = 0.5 * (p.weights[i] + q.weights[i]);
    const double divergence = 0.5 * (kl_to_mixture(p.weights, m) + kl_to_mixture(q.weights, m));
    return std::sqrt(std::clamp(divergence, 0.0, 1.0));
}

Ranking rank_words(const std::vector<std::string>& words, const EmbeddingStore& store_t0,
                   const EmbeddingStore& store_t1, const DetectionConfig& config, GroupingMode mode) {
    DetectionConfig cfg = config;
    cfg.cluster_params.pass0.t_low = 0;
    cfg.cluster_params.pass1.t_low = 0;
    cfg.strategy = Strategy::time_dependent;
    cfg.metric = Metric::neighbor_based;
    const Detector detector(store_t0, store_t1, cfg);

    std::vector<std::optional<double>> scores(words.size());
    std::vector<std::string> errors(words.size());
    parallel_for(words.size(), [&](std::size_t i) {
        try {
            const WordAnalysis a = detector.analyze(words[i]);
            const auto groups = group_senses(a.earlier, a.later, cfg.t_sc, mode);
            scores[i] = jsd(freq_dist(groups, a.earlier.clusters, 0),
                            freq_dist(groups, a.later.clusters, 1));
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });

    Ranking out;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (scores[i]) {
            out.entries.push_back({words[i], *scores[i]});
        } else {
            out.failures.push_back({words[i], errors[i]});
        }
    }
    std::sort(out.entries.begin(), out.entries.end(), [](const RankEntry& a, const RankEntry& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.word < b.word;
    });
    std::sort(out.failures.begin(), out.failures.end(),
              [](const RankFailure& a, const RankFailure& b) { return a.word < b.word; });
    return out;
}

}  // namespace semshift
