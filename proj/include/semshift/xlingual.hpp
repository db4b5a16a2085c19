#pragma once

#include <string>
#include <utility>
#include <vector>

#include "semshift/detection.hpp"

namespace semshift {

// Translation taking the first language's embedding space onto the second's.
struct RectifiedVector {
    Vector b;
    SliceId from;
    SliceId to;
};

// b = mean(l2) - mean(l1) over all tokens. Uses the stored language mean when
// present, otherwise the token-weighted mean of every cloud.
RectifiedVector rectification_vector(const EmbeddingStore& store_l1, const EmbeddingStore& store_l2);

struct SensePair {
    std::size_t l1 = 0;  // sense index in the first language
    std::size_t l2 = 0;  // sense index in the second language
    double similarity = 0.0;

    bool operator==(const SensePair&) const = default;
};

struct XlingComparison {
    std::pair<std::string, std::string> word_pair;
    std::vector<SensePair> consistent_gains;
    std::vector<std::size_t> divergent_gains_l1;
    std::vector<std::size_t> divergent_gains_l2;
    std::vector<SensePair> consistent_losses;
    std::vector<std::size_t> divergent_losses_l1;
    std::vector<std::size_t> divergent_losses_l2;
    double t_cs = 0.40;
};

enum class Pairing {
    greedy,   // repeatedly take the most similar unused pair above t_cs
    optimal,  // assignment maximizing the number of pairs, then their similarity
};

// sims_gain is |gained_l1| x |gained_l2|, sims_loss is |lost_l1| x |lost_l2|.
// Sense indices in the result are those of the reports, not matrix positions.
XlingComparison compare_changes(const ChangeReport& report_l1, const ChangeReport& report_l2,
                                const SimilarityMatrix& sims_gain, const SimilarityMatrix& sims_loss,
                                double t_cs, Pairing pairing = Pairing::greedy);

// Mean cosine similarity between e and every row of the cloud.
double topology_score(const Vector& e, const TokenCloud& cloud);

// Copy of the cloud with v added to every row.
TokenCloud shift_cloud(const TokenCloud& cloud, const Vector& v);

// Full cross-lingual pipeline for one translation pair.
struct XlingResult {
    WordAnalysis l1;
    WordAnalysis l2;
    RectifiedVector b_earlier;
    RectifiedVector b_later;
    SimilarityMatrix sims_gain;
    SimilarityMatrix sims_loss;
    XlingComparison comparison;
};

XlingResult compare_word_pair(const Detector& l1, const Detector& l2, const std::string& word_l1,
                              const std::string& word_l2, double t_cs,
                              Pairing pairing = Pairing::greedy);

}  // namespace semshift
