#pragma once

#include <string>
#include <vector>

#include "semshift/detection.hpp"

namespace semshift {

// A sense in a two-period comparison: period 0 is the earlier slice.
struct SenseRef {
    int period = 0;
    std::size_t index = 0;

    bool operator==(const SenseRef&) const = default;
    auto operator<=>(const SenseRef&) const = default;
};

// Senses from both periods treated as one meaning.
struct SenseGroup {
    std::size_t id = 0;
    std::vector<SenseRef> members;
};

struct FreqDist {
    std::vector<double> weights;
};

enum class GroupingMode {
    single_link,  // connected components of the similarity graph
    clique,       // a sense joins the first group it is similar to in full
};

// `all_pairs` is the (n0 + n1) square similarity matrix over the concatenated
// earlier and later senses. Senses are linked when similarity exceeds t_sc.
// Groups are ordered by their smallest member.
std::vector<SenseGroup> group_senses(const SimilarityMatrix& all_pairs, std::size_t n_earlier,
                                     double t_sc, GroupingMode mode = GroupingMode::single_link);

std::vector<SenseGroup> group_senses(const SliceSenses& earlier, const SliceSenses& later,
                                     double t_sc, GroupingMode mode = GroupingMode::single_link);

// Share of the period's clustered tokens falling in each group.
FreqDist freq_dist(const std::vector<SenseGroup>& groups, const ClusterSet& clusters, int period);

// Jensen-Shannon distance with base-2 logarithms; lies in [0, 1].
double jsd(const FreqDist& p, const FreqDist& q);

struct RankEntry {
    std::string word;
    double score = 0.0;
};

struct RankFailure {
    std::string word;
    std::string reason;
};

struct Ranking {
    std::vector<RankEntry> entries;  // descending score, ties by word
    std::vector<RankFailure> failures;
};

// Scores every word by the JSD of its sense distributions. Noise pruning is
// disabled regardless of the configured t_low values.
Ranking rank_words(const std::vector<std::string>& words, const EmbeddingStore& store_t0,
                   const EmbeddingStore& store_t1, const DetectionConfig& config,
                   GroupingMode mode = GroupingMode::single_link);

}  // namespace semshift
