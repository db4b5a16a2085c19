#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "semshift/detection.hpp"

namespace semshift {

enum class Task { binary, ranking };

// Tuned per-language thresholds. Binary detection prunes clusters below 5 tokens
// in the first pass; ranking keeps every token.
struct LanguagePreset {
    double t0_sc = 0.34;
    double t1_sc = 0.40;
    std::size_t k = 14;
    std::size_t t0_low = 5;
    std::size_t t1_low = 0;
};

// en, de, la, sv. Throws for anything else.
LanguagePreset language_preset(const std::string& language, Task task = Task::binary);

// Cross-lingual threshold shared by every language pair: the English t1_sc.
inline constexpr double kCrossLingualThreshold = 0.40;

struct RunConfig {
    std::string language = "en";
    double t0_sc = 0.34;
    double t1_sc = 0.40;
    double t_sc_detect = 0.40;
    double t_cs = kCrossLingualThreshold;
    std::size_t k = 14;
    std::size_t t0_low = 5;
    std::size_t t1_low = 0;
    std::size_t min_tokens = kDefaultMinTokens;
    Metric metric = Metric::neighbor_based;
    Strategy strategy = Strategy::time_dependent;

    static RunConfig for_language(const std::string& language, Task task = Task::binary);

    // Overwrites the fields present in a JSON object file; a "language" key
    // first resets every threshold to that language's preset.
    void merge_json_file(const std::filesystem::path& file, Task task = Task::binary);
    void merge_json(const nlohmann::json& doc, Task task = Task::binary);

    DetectionConfig detection() const;
    void validate() const;
};

Metric parse_metric(const std::string& name);
Strategy parse_strategy(const std::string& name);
std::string to_string(Metric metric);
std::string to_string(Strategy strategy);

}  // namespace semshift
