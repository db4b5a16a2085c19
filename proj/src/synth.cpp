#include "semshift/synth.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "semshift/error.hpp"
#include "semshift/ranking.hpp"

namespace semshift {
namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    // splitmix64 finalizer
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (salt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::string numbered(const char* prefix, std::size_t i, std::size_t j) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s%03zu_%02zu", prefix, i, j);
    return buf;
}

std::string numbered(const char* prefix, std::size_t i) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s%03zu", prefix, i);
    return buf;
}

struct PlantedSense {
    Vector direction;
    std::size_t id = 0;
};

// Builds the shared neighbor vocabulary around every planted sense for both periods.
class StoreBuilder {
public:
    StoreBuilder(const BenchmarkOptions& options) : options_(options) {}

    PlantedSense new_sense() {
        PlantedSense s{random_direction(options_.dim, mix_seed(options_.seed, 1000 + next_id_)),
                       next_id_};
        ++next_id_;
        for (std::size_t m = 0; m < options_.neighbors_per_sense; ++m) {
            const std::uint64_t salt = 500000 + s.id * 1000 + m;
            Vector jitter = random_direction(options_.dim, mix_seed(options_.seed, salt));
            Vector dir(options_.dim);
            for (std::size_t c = 0; c < dir.size(); ++c) {
                dir[c] = s.direction[c] + 0.15 * jitter[c];
            }
            const std::string word = numbered("nb", s.id, m);
            for (int period = 0; period < 2; ++period) {
                const std::uint64_t seed = mix_seed(options_.seed, salt * 2 + period + 7);
                clouds_[period].emplace(
                    word, synth_cloud(word, {{dir, options_.neighbor_tokens, options_.token_spread}},
                                      seed));
            }
        }
        return s;
    }

    void add_target(const std::string& word, int period,
                    const std::vector<std::pair<PlantedSense, std::size_t>>& senses) {
        std::vector<SynthComponent> comps;
        for (const auto& [sense, count] : senses) {
            if (count > 0) {
                comps.push_back({sense.direction, count, options_.token_spread});
            }
        }
        const std::uint64_t seed = mix_seed(options_.seed, 9000000 + 2 * (target_salt_++) + period);
        clouds_[period].emplace(word, synth_cloud(word, comps, seed));
    }

    EmbeddingStore build(int period) const {
        EmbeddingStore draft(SliceId{options_.language, period == 0 ? "t0" : "t1"}, options_.dim,
                             clouds_[period]);
        const Vector mean = token_mean(draft);
        return EmbeddingStore(draft.slice(), options_.dim, clouds_[period],
                              std::vector<float>(mean.begin(), mean.end()));
    }

private:
    const BenchmarkOptions& options_;
    std::size_t next_id_ = 0;
    std::size_t target_salt_ = 0;
    std::map<std::string, TokenCloud> clouds_[2];
};

double planted_jsd(const std::vector<double>& before, const std::vector<double>& after) {
    auto normalize = [](std::vector<double> v) {
        double total = 0.0;
        for (double x : v) total += x;
        for (double& x : v) x /= total;
        return FreqDist{std::move(v)};
    };
    return jsd(normalize(before), normalize(after));
}

}  // namespace

Vector random_direction(std::size_t dim, std::uint64_t seed) {
    if (dim == 0) {
        throw Error("random direction needs a positive dimension");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector v(dim);
    double norm = 0.0;
    while (!(norm > 1e-12)) {
        norm = 0.0;
        for (double& x : v) {
            x = gauss(rng);
            norm += x * x;
        }
    }
    norm = std::sqrt(norm);
    for (double& x : v) {
        x /= norm;
    }
    return v;
}

TokenCloud synth_cloud(const std::string& word, const std::vector<SynthComponent>& components,
                       std::uint64_t seed) {
    if (components.empty()) {
        throw Error("synth_cloud needs at least one component");
    }
    const std::size_t dim = components.front().direction.size();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<float> values;
    Vector row(dim);
    for (const auto& comp : components) {
        if (comp.direction.size() != dim || dim == 0) {
            throw Error("synth_cloud: component dimension mismatch");
        }
        if (comp.count == 0) {
            throw Error("synth_cloud: component count must be at least 1");
        }
        double norm = 0.0;
        for (double x : comp.direction) norm += x * x;
        if (!(norm > 0.0)) {
            throw Error("degenerate vector: zero direction in synth_cloud");
        }
        norm = std::sqrt(norm);
        for (std::size_t t = 0; t < comp.count; ++t) {
            double row_norm = 0.0;
            for (std::size_t c = 0; c < dim; ++c) {
                row[c] = comp.direction[c] / norm;
                if (comp.spread > 0.0) {
                    row[c] += comp.spread * gauss(rng);
                }
                row_norm += row[c] * row[c];
            }
            row_norm = std::sqrt(row_norm);
            for (std::size_t c = 0; c < dim; ++c) {
                values.push_back(static_cast<float>(row[c] / row_norm));
            }
        }
    }
    return TokenCloud(word, dim, std::move(values));
}

std::vector<int> synth_labels(const std::vector<SynthComponent>& components) {
    std::vector<int> labels;
    for (std::size_t k = 0; k < components.size(); ++k) {
        labels.insert(labels.end(), components[k].count, static_cast<int>(k));
    }
    return labels;
}

Benchmark make_benchmark(const BenchmarkOptions& options) {
    if (options.changed > options.words) {
        throw Error("benchmark: more changed words than words");
    }
    StoreBuilder builder(options);
    Benchmark bench;
    const std::size_t major = options.sense_tokens;
    const std::size_t minor = options.new_sense_tokens;

    for (std::size_t i = 0; i < options.words; ++i) {
        const std::string word = numbered("target", i);
        bench.targets.push_back(word);
        const PlantedSense a = builder.new_sense();
        const bool changed = i < options.changed;
        std::vector<double> before;
        std::vector<double> after;
        if (changed && i % 2 == 0) {
            // gain: a new sense appears at t
            const PlantedSense fresh = builder.new_sense();
            if (i % 4 == 2) {
                const PlantedSense b = builder.new_sense();
                builder.add_target(word, 0, {{a, major}, {b, minor}});
                builder.add_target(word, 1, {{a, major}, {b, minor}, {fresh, minor}});
                before = {double(major), double(minor), 0.0};
                after = {double(major), double(minor), double(minor)};
            } else {
                builder.add_target(word, 0, {{a, major}});
                builder.add_target(word, 1, {{a, major}, {fresh, minor}});
                before = {double(major), 0.0};
                after = {double(major), double(minor)};
            }
        } else if (changed) {
            // loss: a sense present at t-1 disappears at t
            const PlantedSense b = builder.new_sense();
            builder.add_target(word, 0, {{a, major}, {b, minor}});
            builder.add_target(word, 1, {{a, major}});
            before = {double(major), double(minor)};
            after = {double(major), 0.0};
        } else if (i % 2 == 0) {
            const std::size_t later = major + (i % 3) * 5;
            builder.add_target(word, 0, {{a, major}});
            builder.add_target(word, 1, {{a, later}});
            before = {double(major)};
            after = {double(later)};
        } else {
            const PlantedSense b = builder.new_sense();
            const std::size_t later = minor + (i % 3) * 5;
            builder.add_target(word, 0, {{a, major}, {b, minor}});
            builder.add_target(word, 1, {{a, major}, {b, later}});
            before = {double(major), double(minor)};
            after = {double(major), double(later)};
        }
        bench.gold_binary[word] = changed ? 1 : 0;
        bench.gold_graded[word] = planted_jsd(before, after);
    }
    bench.t0 = builder.build(0);
    bench.t1 = builder.build(1);
    return bench;
}

Benchmark make_graded_benchmark(const std::vector<GradedWordSpec>& words,
                                const BenchmarkOptions& options) {
    StoreBuilder builder(options);
    Benchmark bench;
    const std::size_t total = options.sense_tokens;
    for (const auto& spec : words) {
        if (!(spec.new_fraction >= 0.0 && spec.new_fraction <= 1.0)) {
            throw Error("graded benchmark: new_fraction must lie in [0, 1]");
        }
        const PlantedSense base = builder.new_sense();
        const PlantedSense fresh = builder.new_sense();
        const auto fresh_tokens =
            static_cast<std::size_t>(std::lround(spec.new_fraction * static_cast<double>(total)));
        builder.add_target(spec.word, 0, {{base, total}});
        builder.add_target(spec.word, 1, {{base, total - fresh_tokens}, {fresh, fresh_tokens}});
        bench.targets.push_back(spec.word);
        bench.gold_binary[spec.word] = fresh_tokens > 0 ? 1 : 0;
        bench.gold_graded[spec.word] =
            planted_jsd({double(total), 0.0}, {double(total - fresh_tokens), double(fresh_tokens)});
    }
    bench.t0 = builder.build(0);
    bench.t1 = builder.build(1);
    return bench;
}

}  // namespace semshift
