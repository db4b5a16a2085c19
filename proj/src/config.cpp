#include "semshift/config.hpp"

#include <fstream>

#include <json.hpp>

#include "semshift/error.hpp"

namespace semshift {

LanguagePreset language_preset(const std::string& language, Task task) {
    LanguagePreset p;
    if (language == "en") {
        p.t0_sc = 0.34;
        p.t1_sc = 0.40;
    } else if (language == "de") {
        p.t0_sc = 0.22;
        p.t1_sc = 0.38;
    } else if (language == "la") {
        p.t0_sc = 0.16;
        p.t1_sc = 0.16;
    } else if (language == "sv") {
        p.t0_sc = 0.28;
        p.t1_sc = 0.32;
    } else {
        throw Error("no preset for language '" + language + "' (expected en, de, la or sv)");
    }
    p.t0_low = task == Task::binary ? 5 : 0;
    return p;
}

RunConfig RunConfig::for_language(const std::string& language, Task task) {
    const LanguagePreset p = language_preset(language, task);
    RunConfig c;
    c.language = language;
    c.t0_sc = p.t0_sc;
    c.t1_sc = p.t1_sc;
    c.t_sc_detect = p.t1_sc;
    c.k = p.k;
    c.t0_low = p.t0_low;
    c.t1_low = p.t1_low;
    return c;
}

void RunConfig::merge_json_file(const std::filesystem::path& file, Task task) {
    std::ifstream in(file);
    if (!in) throw Error("cannot open config " + file.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed config: ") + e.what());
    }
    merge_json(doc, task);
}

void RunConfig::merge_json(const nlohmann::json& doc, Task task) {
    if (!doc.is_object()) throw Error("malformed config: expected an object");
    try {
        if (doc.contains("language")) *this = for_language(doc.at("language").get<std::string>(), task);
        if (doc.contains("t0_sc")) t0_sc = doc.at("t0_sc").get<double>();
        if (doc.contains("t1_sc")) {
            t1_sc = doc.at("t1_sc").get<double>();
            t_sc_detect = t1_sc;
        }
        if (doc.contains("t_sc_detect")) t_sc_detect = doc.at("t_sc_detect").get<double>();
        if (doc.contains("t_cs")) t_cs = doc.at("t_cs").get<double>();
        if (doc.contains("k")) k = doc.at("k").get<std::size_t>();
        if (doc.contains("t0_low")) t0_low = doc.at("t0_low").get<std::size_t>();
        if (doc.contains("t1_low")) t1_low = doc.at("t1_low").get<std::size_t>();
        if (doc.contains("min_tokens")) min_tokens = doc.at("min_tokens").get<std::size_t>();
        if (doc.contains("metric")) metric = parse_metric(doc.at("metric").get<std::string>());
        if (doc.contains("strategy")) strategy = parse_strategy(doc.at("strategy").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed config: ") + e.what());
    }
}

DetectionConfig RunConfig::detection() const {
    validate();
    DetectionConfig d;
    d.t_sc = t_sc_detect;
    d.metric = metric;
    d.strategy = strategy;
    d.cluster_params.pass0 = {t0_sc, t0_low, CentroidUpdate::member_mean};
    d.cluster_params.pass1 = {t1_sc, t1_low, CentroidUpdate::member_mean};
    d.k = k;
    d.min_tokens = min_tokens;
    return d;
}

void RunConfig::validate() const {
    if (!(t0_sc > 0.0 && t0_sc < 2.0) || !(t1_sc > 0.0 && t1_sc < 2.0)) {
        throw Error("clustering thresholds must lie in (0, 2)");
    }
    if (!(t_sc_detect >= -1.0 && t_sc_detect <= 1.0) || !(t_cs >= -1.0 && t_cs <= 1.0)) {
        throw Error("similarity thresholds must lie in [-1, 1]");
    }
    if (k == 0) throw Error("k must be positive");
}

Metric parse_metric(const std::string& name) {
    if (name == "neighbor_based") return Metric::neighbor_based;
    if (name == "centroid_cosine") return Metric::centroid_cosine;
    if (name == "centroid_euclidean") return Metric::centroid_euclidean;
    throw Error("unknown metric '" + name + "'");
}

Strategy parse_strategy(const std::string& name) {
    if (name == "time_dependent") return Strategy::time_dependent;
    if (name == "time_independent") return Strategy::time_independent;
    throw Error("unknown strategy '" + name + "'");
}

std::string to_string(Metric metric) {
    switch (metric) {
        case Metric::centroid_cosine: return "centroid_cosine";
        case Metric::centroid_euclidean: return "centroid_euclidean";
        case Metric::neighbor_based: break;
    }
    return "neighbor_based";
}

std::string to_string(Strategy strategy) {
    return strategy == Strategy::time_independent ? "time_independent" : "time_dependent";
}

}  // namespace semshift
