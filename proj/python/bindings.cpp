#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "semshift/semshift.hpp"

namespace py = pybind11;
using namespace semshift;

namespace {

using FloatArray = py::array_t<float, py::array::c_style | py::array::forcecast>;
using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

TokenCloud cloud_from(const std::string& word, const FloatArray& a) {
    if (a.ndim() != 2) throw Error("token cloud must be a 2-D array");
    const auto rows = static_cast<std::size_t>(a.shape(0));
    const auto dim = static_cast<std::size_t>(a.shape(1));
    return TokenCloud(word, dim, std::vector<float>(a.data(), a.data() + rows * dim));
}

py::array_t<float> to_array(const TokenCloud& c) {
    py::array_t<float> out({c.rows(), c.dim()});
    std::copy(c.values().begin(), c.values().end(), out.mutable_data());
    return out;
}

std::vector<Vector> rows_of(const DoubleArray& a) {
    if (a.ndim() != 2) throw Error("expected a 2-D array");
    std::vector<Vector> rows(static_cast<std::size_t>(a.shape(0)));
    const auto cols = static_cast<std::size_t>(a.shape(1));
    for (std::size_t r = 0; r < rows.size(); ++r) rows[r].assign(a.data() + r * cols, a.data() + (r + 1) * cols);
    return rows;
}

py::dict cluster_dict(const ClusterSet& set) {
    py::list clusters;
    for (const auto& c : set.clusters) {
        py::dict d;
        d["centroid"] = c.centroid;
        d["members"] = c.members;
        clusters.append(d);
    }
    py::dict out;
    out["clusters"] = clusters;
    out["pruned"] = set.pruned;
    return out;
}

py::dict report_dict(const ChangeReport& r) {
    py::dict d;
    d["word"] = r.word;
    d["changed"] = r.changed;
    d["gained"] = r.gained;
    d["lost"] = r.lost;
    return d;
}

DetectionConfig detection_config(const std::string& language, const std::string& metric,
                                 const std::string& strategy, Task task) {
    RunConfig cfg = RunConfig::for_language(language, task);
    cfg.metric = parse_metric(metric);
    cfg.strategy = parse_strategy(strategy);
    return cfg.detection();
}

// Keeps both stores alive for as long as the detector that references them.
struct PyDetector {
    std::shared_ptr<const EmbeddingStore> t0;
    std::shared_ptr<const EmbeddingStore> t1;
    std::unique_ptr<Detector> detector;
};

}  // namespace

PYBIND11_MODULE(_semshift, m) {
    m.doc() = "Lexical semantic change detection over token embedding stores";
    py::register_exception<Error>(m, "SemshiftError", PyExc_ValueError);

    m.def("set_thread_count", &set_thread_count, py::arg("n"));
    m.def("thread_count", &thread_count);

    py::class_<EmbeddingStore, std::shared_ptr<EmbeddingStore>>(m, "Store")
        .def(py::init([](const std::string& language, const std::string& period,
                         const std::map<std::string, FloatArray>& clouds, std::optional<FloatArray> mean) {
                 std::map<std::string, TokenCloud> built;
                 std::size_t dim = 0;
                 for (const auto& [word, a] : clouds) {
                     TokenCloud c = cloud_from(word, a);
                     dim = c.dim();
                     built.emplace(word, std::move(c));
                 }
                 std::optional<std::vector<float>> lm;
                 if (mean) lm = std::vector<float>(mean->data(), mean->data() + mean->size());
                 return std::make_shared<EmbeddingStore>(SliceId{language, period}, dim, std::move(built),
                                                         std::move(lm));
             }),
             py::arg("language"), py::arg("period"), py::arg("clouds"), py::arg("language_mean") = py::none())
        .def_property_readonly("language", [](const EmbeddingStore& s) { return s.slice().language; })
        .def_property_readonly("period", [](const EmbeddingStore& s) { return s.slice().period; })
        .def_property_readonly("dim", &EmbeddingStore::dim)
        .def_property_readonly("token_count", &EmbeddingStore::token_count)
        .def("words",
             [](const EmbeddingStore& s) {
                 std::vector<std::string> w;
                 for (const auto& [word, _] : s.clouds()) w.push_back(word);
                 return w;
             })
        .def("cloud", [](const EmbeddingStore& s, const std::string& w) { return to_array(s.cloud(w)); })
        .def("__contains__", &EmbeddingStore::contains)
        .def("__len__", [](const EmbeddingStore& s) { return s.clouds().size(); })
        .def("save", [](const EmbeddingStore& s, const std::filesystem::path& dir) { save_store(s, dir); });

    m.def(
        "load_store",
        [](const std::filesystem::path& dir, bool normalize) {
            return std::make_shared<EmbeddingStore>(load_store(dir, LoadOptions{normalize}));
        },
        py::arg("path"), py::arg("normalize") = false);

    m.def(
        "agglomerate",
        [](const FloatArray& tokens, double t_sc, std::size_t t_low) {
            return cluster_dict(agglomerate(cloud_from("w", tokens), {t_sc, t_low}));
        },
        py::arg("tokens"), py::arg("t_sc"), py::arg("t_low") = 0);
    m.def(
        "two_pass",
        [](const FloatArray& tokens, double t0_sc, double t1_sc, std::size_t t0_low, std::size_t t1_low) {
            return cluster_dict(two_pass(cloud_from("w", tokens), {{t0_sc, t0_low}, {t1_sc, t1_low}}));
        },
        py::arg("tokens"), py::arg("t0_sc") = 0.34, py::arg("t1_sc") = 0.40, py::arg("t0_low") = 5,
        py::arg("t1_low") = 0);
    m.def(
        "token_labels",
        [](const FloatArray& tokens, double t0_sc, double t1_sc, std::size_t t0_low, std::size_t t1_low) {
            const TokenCloud c = cloud_from("w", tokens);
            return token_labels(two_pass(c, {{t0_sc, t0_low}, {t1_sc, t1_low}}), c);
        },
        py::arg("tokens"), py::arg("t0_sc") = 0.34, py::arg("t1_sc") = 0.40, py::arg("t0_low") = 5,
        py::arg("t1_low") = 0);

    m.def(
        "solve_assignment",
        [](const DoubleArray& cost) {
            const auto rows = rows_of(cost);
            const Matching r = solve(CostMatrix::from_rows(rows));
            return py::make_tuple(r.perm, r.total_cost);
        },
        py::arg("cost"));

    m.def(
        "detect",
        [](const DoubleArray& sims, double t_sc) {
            return report_dict(detect(SimilarityMatrix::from_rows(rows_of(sims)), t_sc));
        },
        py::arg("similarity"), py::arg("t_sc") = 0.40);

    py::class_<PyDetector>(m, "Detector")
        .def(py::init([](std::shared_ptr<EmbeddingStore> t0, std::shared_ptr<EmbeddingStore> t1,
                         const std::string& language, const std::string& metric, const std::string& strategy) {
                 auto d = std::make_unique<PyDetector>();
                 d->t0 = t0;
                 d->t1 = t1;
                 d->detector = std::make_unique<Detector>(*t0, *t1,
                                                          detection_config(language, metric, strategy, Task::binary));
                 return d;
             }),
             py::arg("store_t0"), py::arg("store_t1"), py::arg("language") = "en",
             py::arg("metric") = "neighbor_based", py::arg("strategy") = "time_dependent")
        .def("classify", [](const PyDetector& d, const std::string& w) { return report_dict(d.detector->classify(w)); })
        .def("similarity",
             [](const PyDetector& d, const std::string& w) {
                 const SimilarityMatrix s = d.detector->analyze(w).similarity;
                 py::array_t<double> out({s.rows(), s.cols()});
                 std::copy(s.values().begin(), s.values().end(), out.mutable_data());
                 return out;
             })
        .def(
            "graph",
            [](const PyDetector& d, const std::string& w, const std::string& format) {
                const WordAnalysis a = d.detector->analyze(w);
                const auto tree = [&](const EmbeddingStore& s, const SliceSenses& senses) {
                    return build_tree(w, representative_embedding(s, w), senses.clusters, senses.neighbors);
                };
                const SemanticGraph g =
                    build_temporal(w, tree(*d.t0, a.earlier), tree(*d.t1, a.later), a.report);
                return emit(g, format == "dot" ? GraphFormat::dot : GraphFormat::json);
            },
            py::arg("word"), py::arg("format") = "json");

    m.def(
        "rank_words",
        [](const std::vector<std::string>& words, const EmbeddingStore& t0, const EmbeddingStore& t1,
           const std::string& language) {
            const Ranking r = rank_words(words, t0, t1, detection_config(language, "neighbor_based",
                                                                         "time_dependent", Task::ranking));
            std::vector<std::pair<std::string, double>> out;
            for (const auto& e : r.entries) out.emplace_back(e.word, e.score);
            return out;
        },
        py::arg("words"), py::arg("store_t0"), py::arg("store_t1"), py::arg("language") = "en");

    m.def(
        "jsd", [](const std::vector<double>& p, const std::vector<double>& q) { return jsd({p}, {q}); },
        py::arg("p"), py::arg("q"));
    m.def(
        "rectification_vector",
        [](const EmbeddingStore& l1, const EmbeddingStore& l2) { return rectification_vector(l1, l2).b; },
        py::arg("store_l1"), py::arg("store_l2"));
    m.def(
        "pca2",
        [](const DoubleArray& x) {
            const auto coords = pca2(rows_of(x));
            py::array_t<double> out({coords.size(), std::size_t{2}});
            auto v = out.mutable_unchecked<2>();
            for (std::size_t i = 0; i < coords.size(); ++i) {
                v(i, 0) = coords[i][0];
                v(i, 1) = coords[i][1];
            }
            return out;
        },
        py::arg("x"));

    m.def("ami", &ami, py::arg("labels_a"), py::arg("labels_b"));
    m.def("purity", &purity, py::arg("pred"), py::arg("gold"));
    m.def(
        "spearman",
        [](const std::vector<double>& a, const std::vector<double>& b) { return spearman(a, b); }, py::arg("pred"),
        py::arg("gold"));
    m.def(
        "tune",
        [](const std::filesystem::path& devset) {
            const TuneFixed fixed;
            return tune_report_json(tune(load_devset(devset), TuneGrid{}, fixed), fixed);
        },
        py::arg("devset"));

    m.def(
        "make_benchmark",
        [](std::uint64_t seed, std::size_t words, std::size_t changed, std::size_t dim, const std::string& language) {
            BenchmarkOptions o;
            o.seed = seed;
            o.words = words;
            o.changed = changed;
            o.dim = dim;
            o.language = language;
            Benchmark b = make_benchmark(o);
            return py::make_tuple(std::make_shared<EmbeddingStore>(std::move(b.t0)),
                                  std::make_shared<EmbeddingStore>(std::move(b.t1)), b.targets, b.gold_binary,
                                  b.gold_graded);
        },
        py::arg("seed"), py::arg("words") = 20, py::arg("changed") = 10, py::arg("dim") = 64,
        py::arg("language") = "en");
}
