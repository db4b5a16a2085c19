#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "semshift/clustering.hpp"

namespace semshift {

double accuracy(const std::map<std::string, int>& pred, const std::map<std::string, int>& gold);

// Pearson correlation of average ranks.
double spearman(const std::vector<double>& pred, const std::vector<double>& gold);

// Aligns two word->score maps on their keys (which must match), then spearman.
double spearman(const std::map<std::string, double>& pred, const std::map<std::string, double>& gold);

// Fraction of tokens whose cluster's majority gold sense equals their own.
double purity(const std::vector<int>& pred_clusters, const std::vector<int>& gold_senses);

// Adjusted mutual information with the arithmetic-mean normalizer and expected
// mutual information under the permutation model. 0 when the denominator is 0.
double ami(const std::vector<int>& labels_a, const std::vector<int>& labels_b);

// Mutual information (nats) of two labelings.
double mutual_information(const std::vector<int>& labels_a, const std::vector<int>& labels_b);

struct DevWord {
    std::string word;
    std::vector<int> labels;
    TokenCloud cloud;
};

struct DevSet {
    std::vector<DevWord> words;
};

// JSON object word -> {"labels": [...], "store_ref": dir}; store_ref is resolved
// relative to the devset file.
DevSet load_devset(const std::filesystem::path& file);

struct GridAxis {
    double min = 0.10;  // exclusive
    double max = 0.35;  // exclusive
    double step = 0.01;

    std::vector<double> values() const;
};

struct TuneGrid {
    GridAxis pass0{0.10, 0.35, 0.01};
    GridAxis pass1{0.10, 0.45, 0.01};
};

struct TuneFixed {
    std::size_t k = 14;
    std::size_t t0_low = 5;
    std::size_t t1_low = 0;
};

struct GridPoint {
    double t0_sc = 0.0;
    double t1_sc = 0.0;
    double score = 0.0;  // sum of AMI over dev words
};

struct TuneResult {
    double t0_sc = 0.0;
    double t1_sc = 0.0;
    double score = 0.0;
    std::vector<GridPoint> surface;  // t0-major
};

// Grid search maximizing the summed AMI between gold and two-pass labels. A word
// whose tokens are all pruned contributes 0. Ties go to the smallest (t0, t1).
TuneResult tune(const DevSet& devset, const TuneGrid& grid, const TuneFixed& fixed);

std::string tune_report_json(const TuneResult& result, const TuneFixed& fixed);

}  // namespace semshift
