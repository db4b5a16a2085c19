#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "semshift/clustering.hpp"
#include "semshift/similarity.hpp"

namespace semshift {

// Gained and lost senses of one word between two slices.
struct ChangeReport {
    std::string word;
    std::vector<std::size_t> lost;    // earlier-slice senses with no similar later sense
    std::vector<std::size_t> gained;  // later-slice senses with no similar earlier sense
    bool changed = false;

    bool operator==(const ChangeReport&) const = default;
};

enum class Metric { neighbor_based, centroid_cosine, centroid_euclidean };
enum class Strategy { time_dependent, time_independent };

struct DetectionConfig {
    double t_sc = 0.40;
    Metric metric = Metric::neighbor_based;
    Strategy strategy = Strategy::time_dependent;
    TwoPassParams cluster_params;
    std::size_t k = kDefaultNeighbors;
    std::size_t min_tokens = kDefaultMinTokens;
};

// Row rule: a row entirely below t_sc is a lost sense. Column rule: a column
// entirely below t_sc is a gained sense. Comparisons are strict.
ChangeReport detect(const SimilarityMatrix& s, double t_sc);

// True iff some pooled cluster has fewer than 2 earlier tokens and more than 5
// later tokens. slice_of_token[row] is 0 for the earlier slice, 1 for the later.
bool frequency_criterion(const ClusterSet& pooled, std::span<const int> slice_of_token);

// Pooled-cluster indices satisfying the frequency criterion.
std::vector<std::size_t> frequency_gains(const ClusterSet& pooled,
                                         std::span<const int> slice_of_token);

// Sense clusters of a word in one slice with the neighbor set of every sense.
struct SliceSenses {
    ClusterSet clusters;
    std::vector<NeighborSet> neighbors;
};

SliceSenses induce_senses(const std::string& word, const EmbeddingStore& store,
                          const NeighborIndex& index, const TwoPassParams& params, std::size_t k,
                          std::size_t min_tokens);

// Everything computed while classifying one word.
struct WordAnalysis {
    SliceSenses earlier;
    SliceSenses later;
    SimilarityMatrix similarity;  // empty under the time-independent strategy
    ClusterSet pooled;            // filled under the time-independent strategy
    std::vector<int> pooled_slices;
    ChangeReport report;
};

// Binds two slices of one language and caches their neighbor indices.
class Detector {
public:
    Detector(const EmbeddingStore& earlier, const EmbeddingStore& later, DetectionConfig config);

    WordAnalysis analyze(const std::string& word) const;
    ChangeReport classify(const std::string& word) const { return analyze(word).report; }

    const DetectionConfig& config() const { return config_; }
    const EmbeddingStore& earlier() const { return earlier_; }
    const EmbeddingStore& later() const { return later_; }
    const NeighborIndex& earlier_index() const { return earlier_index_; }
    const NeighborIndex& later_index() const { return later_index_; }

private:
    const EmbeddingStore& earlier_;
    const EmbeddingStore& later_;
    DetectionConfig config_;
    NeighborIndex earlier_index_;
    NeighborIndex later_index_;
};

ChangeReport classify_word(const std::string& word, const EmbeddingStore& store_t0,
                           const EmbeddingStore& store_t1, const DetectionConfig& config);

// Similarity of centroids under the centroid ablation metrics.
SimilarityMatrix centroid_similarity(const ClusterSet& a, const ClusterSet& b, Metric metric);

}  // namespace semshift
