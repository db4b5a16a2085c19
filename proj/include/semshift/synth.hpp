#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "semshift/embedding_store.hpp"

namespace semshift {

// One planted component of a synthetic cloud.
struct SynthComponent {
    Vector direction;
    std::size_t count = 1;
    // Standard deviation of the isotropic Gaussian added to the unit direction
    // before re-normalizing. 0 gives identical rows.
    double spread = 0.0;
};

// Unit-normalized perturbations of each direction, rows grouped contiguously
// per component in the order given. Deterministic for a fixed seed.
TokenCloud synth_cloud(const std::string& word, const std::vector<SynthComponent>& components,
                       std::uint64_t seed);

// Ground-truth component label of every row produced by synth_cloud.
std::vector<int> synth_labels(const std::vector<SynthComponent>& components);

// Random unit vector drawn from an isotropic Gaussian.
Vector random_direction(std::size_t dim, std::uint64_t seed);

// Parameters of the planted-change benchmark: target words whose sense
// inventories are planted per period, surrounded by neighbor words placed
// around every sense direction so that k-NN sets are meaningful.
struct BenchmarkOptions {
    std::string language = "en";
    std::size_t dim = 64;
    std::size_t words = 20;
    // The first `changed` targets get a planted change, alternating gain and loss.
    std::size_t changed = 10;
    std::size_t neighbors_per_sense = 16;
    std::size_t neighbor_tokens = 6;
    std::size_t sense_tokens = 60;
    std::size_t new_sense_tokens = 30;
    double token_spread = 0.07;
    std::uint64_t seed = 1;
};

struct Benchmark {
    EmbeddingStore t0;
    EmbeddingStore t1;
    std::vector<std::string> targets;
    std::map<std::string, int> gold_binary;
    // Planted Jensen-Shannon distance between the sense distributions.
    std::map<std::string, double> gold_graded;
};

Benchmark make_benchmark(const BenchmarkOptions& options);

// Planted sense inventory for a single target word in a graded fixture:
// period t-1 uses `base` only; period t mixes in `new_fraction` of a new sense.
struct GradedWordSpec {
    std::string word;
    double new_fraction = 0.0;
};

// Two-period stores with one target per spec, each built from a dedicated
// base sense and new sense plus neighbor vocabularies.
Benchmark make_graded_benchmark(const std::vector<GradedWordSpec>& words,
                                const BenchmarkOptions& options);

}  // namespace semshift
