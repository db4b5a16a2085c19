#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "semshift/semshift.hpp"

namespace fs = std::filesystem;
using namespace semshift;

namespace {

struct RunOptions {
    std::string config;
    std::string lang;
    std::optional<double> t0_sc;
    std::optional<double> t1_sc;
    std::optional<double> t_sc;
    std::optional<double> t_cs;
    std::optional<std::size_t> k;
    std::optional<std::size_t> t0_low;
    std::optional<std::size_t> t1_low;
    std::optional<std::size_t> min_tokens;
    std::string metric;
    std::string strategy;
    bool normalize = false;
};

void add_run_options(CLI::App* cmd, RunOptions& o) {
    cmd->add_option("--lang", o.lang, "Language preset")->check(CLI::IsMember({"en", "de", "la", "sv"}));
    cmd->add_option("--t0-sc", o.t0_sc, "First-pass clustering threshold");
    cmd->add_option("--t1-sc", o.t1_sc, "Second-pass clustering threshold");
    cmd->add_option("--t-sc", o.t_sc, "Detection threshold");
    cmd->add_option("--t-cs", o.t_cs, "Cross-lingual threshold");
    cmd->add_option("--k", o.k, "Neighbors per sense");
    cmd->add_option("--t0-low", o.t0_low, "First-pass minimum cluster size");
    cmd->add_option("--t1-low", o.t1_low, "Second-pass minimum cluster size");
    cmd->add_option("--min-tokens", o.min_tokens, "Minimum occurrences of a neighbor word");
    cmd->add_option("--metric", o.metric, "Sense similarity metric")
        ->check(CLI::IsMember({"neighbor_based", "centroid_cosine", "centroid_euclidean"}));
    cmd->add_option("--strategy", o.strategy, "Detection strategy")
        ->check(CLI::IsMember({"time_dependent", "time_independent"}));
    cmd->add_flag("--normalize", o.normalize, "L2-normalize token rows on load");
}

// Preset, then config file, then explicit flags.
RunConfig resolve(const RunOptions& o, Task task) {
    RunConfig cfg = RunConfig::for_language(o.lang.empty() ? "en" : o.lang, task);
    if (!o.config.empty()) {
        std::ifstream in(o.config);
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (const nlohmann::json::exception& e) {
            throw Error(std::string("malformed config: ") + e.what());
        }
        if (!o.lang.empty() && doc.is_object()) doc.erase("language");
        cfg.merge_json(doc, task);
    }
    if (o.t0_sc) cfg.t0_sc = *o.t0_sc;
    if (o.t1_sc) {
        cfg.t1_sc = *o.t1_sc;
        cfg.t_sc_detect = *o.t1_sc;
    }
    if (o.t_sc) cfg.t_sc_detect = *o.t_sc;
    if (o.t_cs) cfg.t_cs = *o.t_cs;
    if (o.k) cfg.k = *o.k;
    if (o.t0_low) cfg.t0_low = *o.t0_low;
    if (o.t1_low) cfg.t1_low = *o.t1_low;
    if (o.min_tokens) cfg.min_tokens = *o.min_tokens;
    if (!o.metric.empty()) cfg.metric = parse_metric(o.metric);
    if (!o.strategy.empty()) cfg.strategy = parse_strategy(o.strategy);
    cfg.validate();
    return cfg;
}

EmbeddingStore load(const std::string& dir, const RunOptions& o) {
    return load_store(dir, LoadOptions{o.normalize});
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path);
    out << text;
    if (!out) throw Error("I/O failure writing " + path);
}

std::vector<std::string> read_word_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::vector<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto tab = line.find('\t');
        if (tab != std::string::npos) line.resize(tab);
        if (!line.empty()) words.push_back(line);
    }
    return words;
}

std::vector<std::string> target_words(const std::vector<std::string>& given, const std::string& file,
                                      const EmbeddingStore& a, const EmbeddingStore& b) {
    std::vector<std::string> words = given;
    if (!file.empty()) {
        const auto more = read_word_list(file);
        words.insert(words.end(), more.begin(), more.end());
    }
    if (words.empty()) {
        for (const auto& [word, _] : a.clouds()) {
            if (b.contains(word)) words.push_back(word);
        }
    }
    return words;
}

void warn(const std::string& word, const std::string& reason) {
    std::fprintf(stderr, "warning: skipped '%s': %s\n", word.c_str(), reason.c_str());
}

struct TargetOptions {
    std::vector<std::string> words;
    std::string targets;
};

void add_target_options(CLI::App* cmd, TargetOptions& t) {
    cmd->add_option("--word", t.words, "Target word (repeatable)");
    cmd->add_option("--targets", t.targets, "File with one target word per line")->check(CLI::ExistingFile);
}

int run_detect(const RunOptions& o, const std::string& t0, const std::string& t1, const TargetOptions& t,
               const std::string& out_path) {
    const RunConfig cfg = resolve(o, Task::binary);
    const EmbeddingStore s0 = load(t0, o);
    const EmbeddingStore s1 = load(t1, o);
    const Detector det(s0, s1, cfg.detection());
    const auto words = target_words(t.words, t.targets, s0, s1);
    std::vector<std::optional<ChangeReport>> results(words.size());
    std::vector<std::string> errors(words.size());
    parallel_for(words.size(), [&](std::size_t i) {
        try {
            results[i] = det.classify(words[i]);
        } catch (const Error& e) {
            errors[i] = e.what();
        }
    });
    std::vector<ChangeReport> reports;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (results[i]) {
            reports.push_back(*results[i]);
        } else {
            warn(words[i], errors[i]);
        }
    }
    write_output(out_path, reports_tsv(reports));
    return 0;
}

int run_rank(const RunOptions& o, const std::string& t0, const std::string& t1, const TargetOptions& t,
             bool clique, const std::string& out_path) {
    const RunConfig cfg = resolve(o, Task::ranking);
    const EmbeddingStore s0 = load(t0, o);
    const EmbeddingStore s1 = load(t1, o);
    const Ranking r = rank_words(target_words(t.words, t.targets, s0, s1), s0, s1, cfg.detection(),
                                 clique ? GroupingMode::clique : GroupingMode::single_link);
    for (const auto& f : r.failures) warn(f.word, f.reason);
    write_output(out_path, ranking_tsv(r.entries));
    return 0;
}

struct PairOptions {
    std::string l1_t0;
    std::string l1_t1;
    std::string l2_t0;
    std::string l2_t1;
    std::string lang2;
    std::vector<std::string> pair;
    std::string pairs_file;
    std::string pairing = "greedy";
};

void add_pair_options(CLI::App* cmd, PairOptions& p) {
    cmd->add_option("--l1-t0", p.l1_t0, "First language, earlier store")->required()->check(CLI::ExistingDirectory);
    cmd->add_option("--l1-t1", p.l1_t1, "First language, later store")->required()->check(CLI::ExistingDirectory);
    cmd->add_option("--l2-t0", p.l2_t0, "Second language, earlier store")->required()->check(CLI::ExistingDirectory);
    cmd->add_option("--l2-t1", p.l2_t1, "Second language, later store")->required()->check(CLI::ExistingDirectory);
    cmd->add_option("--lang2", p.lang2, "Preset for the second language (defaults to its store)");
    cmd->add_option("--pairing", p.pairing, "Cross-lingual pairing")->check(CLI::IsMember({"greedy", "optimal"}));
}

struct CrossLingual {
    EmbeddingStore a0;
    EmbeddingStore a1;
    EmbeddingStore b0;
    EmbeddingStore b1;
    RunConfig cfg1;
    RunConfig cfg2;
};

std::unique_ptr<CrossLingual> load_cross(const RunOptions& o, const PairOptions& p) {
    auto x = std::make_unique<CrossLingual>();
    x->a0 = load(p.l1_t0, o);
    x->a1 = load(p.l1_t1, o);
    x->b0 = load(p.l2_t0, o);
    x->b1 = load(p.l2_t1, o);
    RunOptions o1 = o;
    if (o1.lang.empty() && o1.config.empty()) o1.lang = x->a0.slice().language;
    RunOptions o2 = o1;
    o2.lang = p.lang2.empty() ? x->b0.slice().language : p.lang2;
    auto preset_or_default = [](RunOptions& r) {
        try {
            language_preset(r.lang);
        } catch (const Error&) {
            r.lang.clear();
        }
    };
    preset_or_default(o1);
    preset_or_default(o2);
    x->cfg1 = resolve(o1, Task::binary);
    x->cfg2 = resolve(o2, Task::binary);
    return x;
}

int run_compare(const RunOptions& o, const PairOptions& p, const std::string& out_path) {
    auto x = load_cross(o, p);
    std::vector<std::pair<std::string, std::string>> pairs;
    if (p.pair.size() == 2) pairs.emplace_back(p.pair[0], p.pair[1]);
    if (!p.pairs_file.empty()) {
        for (const auto& [w1, w2] : read_tsv_column(p.pairs_file, 1)) pairs.emplace_back(w1, w2);
    }
    if (pairs.empty()) throw CLI::ValidationError("compare needs --pair W1 W2 or --pairs FILE");
    const Detector d1(x->a0, x->a1, x->cfg1.detection());
    const Detector d2(x->b0, x->b1, x->cfg2.detection());
    const Pairing pairing = p.pairing == "optimal" ? Pairing::optimal : Pairing::greedy;
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& [w1, w2] : pairs) {
        try {
            const XlingResult r = compare_word_pair(d1, d2, w1, w2, x->cfg1.t_cs, pairing);
            nlohmann::ordered_json entry = to_json(r.comparison);
            entry["report_l1"] = to_json(r.l1.report);
            entry["report_l2"] = to_json(r.l2.report);
            doc.push_back(entry);
        } catch (const Error& e) {
            warn(w1 + "/" + w2, e.what());
        }
    }
    write_output(out_path, doc.dump(2) + "\n");
    return 0;
}

SemanticGraph tree_for(const std::string& word, const EmbeddingStore& store, const SliceSenses& senses) {
    return build_tree(word, representative_embedding(store, word), senses.clusters, senses.neighbors);
}

SemanticGraph temporal_for(const Detector& det, const std::string& word) {
    const WordAnalysis a = det.analyze(word);
    return build_temporal(word, tree_for(word, det.earlier(), a.earlier),
                          tree_for(word, det.later(), a.later), a.report);
}

int run_graph(const RunOptions& o, const std::string& kind, const std::string& format, const std::string& word,
              const std::string& store, const std::string& t0, const std::string& t1, const PairOptions& p,
              const std::string& out_path) {
    const GraphFormat fmt = format == "dot" ? GraphFormat::dot : GraphFormat::json;
    SemanticGraph g;
    if (kind == "tree") {
        if (store.empty() || word.empty()) throw CLI::ValidationError("tree graph needs --store and --word");
        const RunConfig cfg = resolve(o, Task::binary);
        const EmbeddingStore s = load(store, o);
        const NeighborIndex index(s);
        const DetectionConfig d = cfg.detection();
        g = tree_for(word, s, induce_senses(word, s, index, d.cluster_params, d.k, d.min_tokens));
    } else if (kind == "temporal") {
        if (t0.empty() || t1.empty() || word.empty()) {
            throw CLI::ValidationError("temporal graph needs --store-t0, --store-t1 and --word");
        }
        const RunConfig cfg = resolve(o, Task::binary);
        const EmbeddingStore s0 = load(t0, o);
        const EmbeddingStore s1 = load(t1, o);
        g = temporal_for(Detector(s0, s1, cfg.detection()), word);
    } else {
        if (p.pair.size() != 2 || p.l1_t0.empty() || p.l1_t1.empty() || p.l2_t0.empty() || p.l2_t1.empty()) {
            throw CLI::ValidationError("spatiotemporal graph needs the four --l*-t* stores and --pair");
        }
        auto x = load_cross(o, p);
        const Detector d1(x->a0, x->a1, x->cfg1.detection());
        const Detector d2(x->b0, x->b1, x->cfg2.detection());
        const Pairing pairing = p.pairing == "optimal" ? Pairing::optimal : Pairing::greedy;
        const XlingResult r = compare_word_pair(d1, d2, p.pair[0], p.pair[1], x->cfg1.t_cs, pairing);
        const SemanticGraph g1 = build_temporal(
            p.pair[0], tree_for(p.pair[0], x->a0, r.l1.earlier),
            tree_for(p.pair[0], x->a1, r.l1.later), r.l1.report);
        const SemanticGraph g2 = build_temporal(
            p.pair[1], tree_for(p.pair[1], x->b0, r.l2.earlier),
            tree_for(p.pair[1], x->b1, r.l2.later), r.l2.report);
        g = build_spatiotemporal({p.pair[0], p.pair[1]}, g1, g2, r.comparison);
    }
    write_output(out_path, emit(g, fmt));
    return 0;
}

int run_tune(const std::string& devset, const TuneGrid& grid, const TuneFixed& fixed, const std::string& out_path) {
    const TuneResult r = tune(load_devset(devset), grid, fixed);
    write_output(out_path, tune_report_json(r, fixed));
    return 0;
}

double parse_number(const std::string& s, const std::string& where) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || !std::isfinite(v)) {
        throw Error(where + ": not a number: '" + s + "'");
    }
    return v;
}

int run_eval(const std::string& pred_path, const std::string& gold_path, std::string measure) {
    const auto pred_raw = read_tsv_column(pred_path, 1);
    const auto gold_raw = read_tsv_column(gold_path, 1);
    if (measure == "auto") {
        measure = "accuracy";
        for (const auto* m : {&pred_raw, &gold_raw}) {
            for (const auto& [w, v] : *m) {
                if (v != "0" && v != "1") measure = "spearman";
            }
        }
    }
    char buf[64];
    if (measure == "accuracy") {
        std::map<std::string, int> pred;
        std::map<std::string, int> gold;
        for (const auto& [w, v] : pred_raw) pred[w] = parse_number(v, pred_path) != 0.0 ? 1 : 0;
        for (const auto& [w, v] : gold_raw) gold[w] = parse_number(v, gold_path) != 0.0 ? 1 : 0;
        std::snprintf(buf, sizeof(buf), "accuracy\t%.6f\n", accuracy(pred, gold));
    } else {
        std::map<std::string, double> pred;
        std::map<std::string, double> gold;
        for (const auto& [w, v] : pred_raw) pred[w] = parse_number(v, pred_path);
        for (const auto& [w, v] : gold_raw) gold[w] = parse_number(v, gold_path);
        std::snprintf(buf, sizeof(buf), "spearman\t%.6f\n", spearman(pred, gold));
    }
    write_output("", buf);
    return 0;
}

int run_synth(const std::string& out_dir, const std::string& kind, const BenchmarkOptions& opts,
              const std::vector<double>& fractions) {
    Benchmark bench;
    if (kind == "graded") {
        std::vector<GradedWordSpec> specs;
        for (std::size_t i = 0; i < fractions.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof(name), "graded%03zu", i);
            specs.push_back({name, fractions[i]});
        }
        bench = make_graded_benchmark(specs, opts);
    } else {
        bench = make_benchmark(opts);
    }
    fs::create_directories(out_dir);
    save_store(bench.t0, fs::path(out_dir) / "t0");
    save_store(bench.t1, fs::path(out_dir) / "t1");
    std::string targets;
    std::string binary;
    std::string graded;
    char buf[64];
    for (const auto& w : bench.targets) {
        targets += w + "\n";
        binary += w + "\t" + std::to_string(bench.gold_binary.at(w)) + "\n";
        std::snprintf(buf, sizeof(buf), "%.6f", bench.gold_graded.at(w));
        graded += w + "\t" + buf + "\n";
    }
    write_output((fs::path(out_dir) / "targets.txt").string(), targets);
    write_output((fs::path(out_dir) / "gold_binary.tsv").string(), binary);
    write_output((fs::path(out_dir) / "gold_graded.tsv").string(), graded);
    return 0;
}

int run_validate(const std::string& dir, bool normalize) {
    const EmbeddingStore s = load_store(dir, LoadOptions{normalize});
    std::printf("ok\t%s\t%s\twords=%zu\ttokens=%zu\tdim=%zu\tlanguage_mean=%s\n", s.slice().language.c_str(),
                s.slice().period.c_str(), s.clouds().size(), s.token_count(), s.dim(),
                s.language_mean() ? "yes" : "no");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lexical semantic change detection over token embedding stores"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "semshift 1.0.0");
    std::optional<std::size_t> threads;
    app.add_option("--threads", threads, "Worker threads (default: SEMSHIFT_THREADS or 1)")
        ->check(CLI::PositiveNumber);
    RunOptions run;
    app.add_option("--config", run.config, "JSON run configuration; explicit flags take precedence")
        ->check(CLI::ExistingFile);
    app.fallthrough();

    TargetOptions targets;
    std::string store_t0;
    std::string store_t1;
    std::string out;

    auto* detect = app.add_subcommand("detect", "Binary change decision per word (TSV)");
    add_run_options(detect, run);
    add_target_options(detect, targets);
    detect->add_option("--store-t0", store_t0, "Earlier store")->required()->check(CLI::ExistingDirectory);
    detect->add_option("--store-t1", store_t1, "Later store")->required()->check(CLI::ExistingDirectory);
    detect->add_option("--out", out, "Output file (default stdout)");

    bool clique = false;
    auto* rank = app.add_subcommand("rank", "Graded change score per word (TSV)");
    add_run_options(rank, run);
    add_target_options(rank, targets);
    rank->add_option("--store-t0", store_t0, "Earlier store")->required()->check(CLI::ExistingDirectory);
    rank->add_option("--store-t1", store_t1, "Later store")->required()->check(CLI::ExistingDirectory);
    rank->add_flag("--clique", clique, "First-fit clique grouping instead of single link");
    rank->add_option("--out", out, "Output file (default stdout)");

    PairOptions pair;
    auto* compare = app.add_subcommand("compare", "Cross-lingual change comparison (JSON)");
    add_run_options(compare, run);
    add_pair_options(compare, pair);
    compare->add_option("--pair", pair.pair, "Translation pair W1 W2")->expected(2);
    compare->add_option("--pairs", pair.pairs_file, "TSV of translation pairs")->check(CLI::ExistingFile);
    compare->add_option("--out", out, "Output file (default stdout)");

    std::string kind = "temporal";
    std::string format = "json";
    std::string word;
    std::string store;
    PairOptions gpair;
    auto* graph = app.add_subcommand("graph", "Semantic graph export (JSON or DOT)");
    add_run_options(graph, run);
    graph->add_option("--kind", kind, "Graph kind")->check(CLI::IsMember({"tree", "temporal", "spatiotemporal"}));
    graph->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "dot"}));
    graph->add_option("--word", word, "Target word");
    graph->add_option("--store", store, "Store for a tree graph")->check(CLI::ExistingDirectory);
    graph->add_option("--store-t0", store_t0, "Earlier store")->check(CLI::ExistingDirectory);
    graph->add_option("--store-t1", store_t1, "Later store")->check(CLI::ExistingDirectory);
    graph->add_option("--l1-t0", gpair.l1_t0, "First language, earlier store")->check(CLI::ExistingDirectory);
    graph->add_option("--l1-t1", gpair.l1_t1, "First language, later store")->check(CLI::ExistingDirectory);
    graph->add_option("--l2-t0", gpair.l2_t0, "Second language, earlier store")->check(CLI::ExistingDirectory);
    graph->add_option("--l2-t1", gpair.l2_t1, "Second language, later store")->check(CLI::ExistingDirectory);
    graph->add_option("--lang2", gpair.lang2, "Preset for the second language");
    graph->add_option("--pair", gpair.pair, "Translation pair W1 W2")->expected(2);
    graph->add_option("--pairing", gpair.pairing, "Cross-lingual pairing")
        ->check(CLI::IsMember({"greedy", "optimal"}));
    graph->add_option("--out", out, "Output file (default stdout)");

    std::string devset;
    TuneGrid grid;
    TuneFixed fixed;
    auto* tune_cmd = app.add_subcommand("tune", "Grid search of clustering thresholds on a dev set");
    tune_cmd->add_option("--devset", devset, "Dev set JSON")->required()->check(CLI::ExistingFile);
    tune_cmd->add_option("--t0-min", grid.pass0.min, "Exclusive lower bound of the first-pass grid");
    tune_cmd->add_option("--t0-max", grid.pass0.max, "Exclusive upper bound of the first-pass grid");
    tune_cmd->add_option("--t1-min", grid.pass1.min, "Exclusive lower bound of the second-pass grid");
    tune_cmd->add_option("--t1-max", grid.pass1.max, "Exclusive upper bound of the second-pass grid");
    double step = 0.01;
    tune_cmd->add_option("--step", step, "Grid step")->check(CLI::PositiveNumber);
    tune_cmd->add_option("--lang", run.lang, "Language preset for the fixed parameters")
        ->check(CLI::IsMember({"en", "de", "la", "sv"}));
    tune_cmd->add_option("--k", run.k, "Neighbors per sense");
    tune_cmd->add_option("--t0-low", run.t0_low, "First-pass minimum cluster size");
    tune_cmd->add_option("--t1-low", run.t1_low, "Second-pass minimum cluster size");
    tune_cmd->add_option("--out", out, "Output file (default stdout)");

    std::string pred;
    std::string gold;
    std::string measure = "auto";
    auto* eval = app.add_subcommand("eval", "Score predictions against gold labels");
    eval->add_option("--pred", pred, "Predicted TSV")->required()->check(CLI::ExistingFile);
    eval->add_option("--gold", gold, "Gold TSV")->required()->check(CLI::ExistingFile);
    eval->add_option("--measure", measure, "accuracy, spearman or auto")
        ->check(CLI::IsMember({"auto", "accuracy", "spearman"}));

    std::optional<std::uint64_t> seed;
    BenchmarkOptions bopts;
    std::string synth_kind = "binary";
    std::vector<double> fractions{0.0, 0.1, 0.25, 0.5, 1.0};
    std::string synth_out;
    auto* synth = app.add_subcommand("synth", "Generate planted-change fixture stores");
    synth->add_option("--seed", seed, "Random seed")->required();
    synth->add_option("--out", synth_out, "Output directory")->required();
    synth->add_option("--kind", synth_kind, "binary or graded")->check(CLI::IsMember({"binary", "graded"}));
    synth->add_option("--language", bopts.language, "Language tag of the stores (default: config language or en)");
    synth->add_option("--dim", bopts.dim, "Embedding dimension")->check(CLI::PositiveNumber);
    synth->add_option("--words", bopts.words, "Number of target words");
    synth->add_option("--changed", bopts.changed, "Targets with a planted change");
    synth->add_option("--spread", bopts.token_spread, "Token noise")->check(CLI::NonNegativeNumber);
    synth->add_option("--fractions", fractions, "New-sense fractions for graded fixtures");

    std::string validate_dir;
    bool validate_normalize = false;
    auto* validate = app.add_subcommand("validate", "Check store integrity");
    validate->add_option("store", validate_dir, "Store directory")->required();
    validate->add_flag("--normalize", validate_normalize, "Also check rows after L2 normalization");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (threads) set_thread_count(*threads);
        if (*detect) return run_detect(run, store_t0, store_t1, targets, out);
        if (*rank) return run_rank(run, store_t0, store_t1, targets, clique, out);
        if (*compare) return run_compare(run, pair, out);
        if (*graph) return run_graph(run, kind, format, word, store, store_t0, store_t1, gpair, out);
        if (*tune_cmd) {
            grid.pass0.step = step;
            grid.pass1.step = step;
            const RunConfig cfg = resolve(run, Task::binary);
            fixed = TuneFixed{cfg.k, cfg.t0_low, cfg.t1_low};
            return run_tune(devset, grid, fixed, out);
        }
        if (*eval) {
            resolve(run, Task::binary);
            return run_eval(pred, gold, measure);
        }
        if (*synth) {
            bopts.seed = *seed;
            if (synth->count("--language") == 0) bopts.language = resolve(run, Task::binary).language;
            return run_synth(synth_out, synth_kind, bopts, fractions);
        }
        if (*validate) {
            resolve(run, Task::binary);
            return run_validate(validate_dir, validate_normalize);
        }
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 1;
}
