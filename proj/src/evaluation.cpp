#include "semshift/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "semshift/error.hpp"
#include "semshift/parallel.hpp"

namespace semshift {
namespace {

std::vector<double> average_ranks(const std::vector<double>& values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
        const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = rank;
        i = j + 1;
    }
    return ranks;
}

// Dense relabeling to 0..k-1 in order of first appearance.
std::vector<std::size_t> compact(const std::vector<int>& labels, std::size_t& classes) {
    std::map<int, std::size_t> ids;
    std::vector<std::size_t> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out[i] = ids.emplace(labels[i], ids.size()).first->second;
    }
    classes = ids.size();
    return out;
}

struct Contingency {
    std::vector<std::vector<double>> table;
    std::vector<double> rows;
    std::vector<double> cols;
    double n = 0.0;
};

Contingency contingency(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw Error("label vectors differ in length");
    std::size_t ka = 0;
    std::size_t kb = 0;
    const auto ca = compact(a, ka);
    const auto cb = compact(b, kb);
    Contingency t;
    t.table.assign(ka, std::vector<double>(kb, 0.0));
    t.rows.assign(ka, 0.0);
    t.cols.assign(kb, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        t.table[ca[i]][cb[i]] += 1.0;
        t.rows[ca[i]] += 1.0;
        t.cols[cb[i]] += 1.0;
    }
    t.n = static_cast<double>(a.size());
    return t;
}

double entropy(const std::vector<double>& counts, double n) {
    double h = 0.0;
    for (double c : counts) {
        if (c > 0.0) h -= (c / n) * std::log(c / n);
    }
    return h;
}

double mi_of(const Contingency& t) {
    double mi = 0.0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        for (std::size_t j = 0; j < t.cols.size(); ++j) {
            const double nij = t.table[i][j];
            if (nij > 0.0) mi += (nij / t.n) * std::log(t.n * nij / (t.rows[i] * t.cols[j]));
        }
    }
    return mi;
}

// Expected mutual information under the hypergeometric (permutation) model.
double expected_mi(const Contingency& t) {
    const double n = t.n;
    double emi = 0.0;
    for (double a : t.rows) {
        for (double b : t.cols) {
            const double lo = std::max(1.0, a + b - n);
            const double hi = std::min(a, b);
            for (double nij = lo; nij <= hi; nij += 1.0) {
                const double log_p = std::lgamma(a + 1) + std::lgamma(b + 1) +
                                     std::lgamma(n - a + 1) + std::lgamma(n - b + 1) -
                                     std::lgamma(n + 1) - std::lgamma(nij + 1) -
                                     std::lgamma(a - nij + 1) - std::lgamma(b - nij + 1) -
                                     std::lgamma(n - a - b + nij + 1);
                emi += (nij / n) * std::log(n * nij / (a * b)) * std::exp(log_p);
            }
        }
    }
    return emi;
}

}  // namespace

double accuracy(const std::map<std::string, int>& pred, const std::map<std::string, int>& gold) {
    if (pred.size() != gold.size()) throw Error("accuracy: prediction and gold keys differ");
    if (gold.empty()) throw Error("accuracy: empty gold labels");
    std::size_t correct = 0;
    for (const auto& [word, label] : gold) {
        const auto it = pred.find(word);
        if (it == pred.end()) throw Error("accuracy: missing prediction for " + word);
        if (it->second == label) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(gold.size());
}

double spearman(const std::vector<double>& pred, const std::vector<double>& gold) {
    if (pred.size() != gold.size()) throw Error("spearman: inputs differ in length");
    if (pred.size() < 2) throw Error("spearman: need at least 2 items");
    const auto rp = average_ranks(pred);
    const auto rg = average_ranks(gold);
    const double n = static_cast<double>(rp.size());
    const double mp = std::accumulate(rp.begin(), rp.end(), 0.0) / n;
    const double mg = std::accumulate(rg.begin(), rg.end(), 0.0) / n;
    double cov = 0.0;
    double vp = 0.0;
    double vg = 0.0;
    for (std::size_t i = 0; i < rp.size(); ++i) {
        cov += (rp[i] - mp) * (rg[i] - mg);
        vp += (rp[i] - mp) * (rp[i] - mp);
        vg += (rg[i] - mg) * (rg[i] - mg);
    }
    if (vp == 0.0 || vg == 0.0) throw Error("undefined correlation: constant input");
    return std::clamp(cov / std::sqrt(vp * vg), -1.0, 1.0);
}

double spearman(const std::map<std::string, double>& pred, const std::map<std::string, double>& gold) {
    if (pred.size() != gold.size()) throw Error("spearman: prediction and gold keys differ");
    std::vector<double> p;
    std::vector<double> g;
    for (const auto& [word, score] : gold) {
        const auto it = pred.find(word);
        if (it == pred.end()) throw Error("spearman: missing prediction for " + word);
        p.push_back(it->second);
        g.push_back(score);
    }
    return spearman(p, g);
}

double purity(const std::vector<int>& pred_clusters, const std::vector<int>& gold_senses) {
    if (pred_clusters.size() != gold_senses.size()) throw Error("purity: token sets differ");
    if (pred_clusters.empty()) throw Error("purity: no tokens");
    const Contingency t = contingency(pred_clusters, gold_senses);
    double hits = 0.0;
    for (const auto& row : t.table) hits += *std::max_element(row.begin(), row.end());
    return hits / t.n;
}

double mutual_information(const std::vector<int>& labels_a, const std::vector<int>& labels_b) {
    return mi_of(contingency(labels_a, labels_b));
}

double ami(const std::vector<int>& labels_a, const std::vector<int>& labels_b) {
    if (labels_a.size() != labels_b.size()) throw Error("ami: label vectors differ in length");
    if (labels_a.empty()) throw Error("ami: no labels");
    const Contingency t = contingency(labels_a, labels_b);
    const double mi = mi_of(t);
    const double emi = expected_mi(t);
    const double mean_h = 0.5 * (entropy(t.rows, t.n) + entropy(t.cols, t.n));
    const double denom = mean_h - emi;
    if (std::abs(denom) < 1e-15) return 0.0;
    return (mi - emi) / denom;
}

DevSet load_devset(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw Error("cannot open devset " + file.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed devset: ") + e.what());
    }
    if (!doc.is_object() || doc.empty()) throw Error("malformed devset: expected a non-empty object");
    std::map<std::filesystem::path, EmbeddingStore> stores;
    DevSet out;
    for (const auto& [word, entry] : doc.items()) {
        if (!entry.contains("labels") || !entry.contains("store_ref")) {
            throw Error("malformed devset: entry '" + word + "' needs labels and store_ref");
        }
        const auto dir = file.parent_path() / entry.at("store_ref").get<std::string>();
        auto it = stores.find(dir);
        if (it == stores.end()) it = stores.emplace(dir, load_store(dir)).first;
        DevWord dw{word, entry.at("labels").get<std::vector<int>>(), it->second.cloud(word)};
        if (dw.labels.size() != dw.cloud.rows()) {
            throw Error("devset word '" + word + "': label count differs from token count");
        }
        out.words.push_back(std::move(dw));
    }
    return out;
}

std::vector<double> GridAxis::values() const {
    if (!(step > 0.0)) throw Error("grid step must be positive");
    std::vector<double> out;
    const long first = std::lround(std::floor(min / step + 1e-9)) + 1;
    for (long i = first;; ++i) {
        const double v = static_cast<double>(i) * step;
        if (!(v < max - 1e-9)) break;
        out.push_back(std::round(v * 1e6) / 1e6);
    }
    return out;
}

TuneResult tune(const DevSet& devset, const TuneGrid& grid, const TuneFixed& fixed) {
    const auto t0_values = grid.pass0.values();
    const auto t1_values = grid.pass1.values();
    if (t0_values.empty() || t1_values.empty()) throw Error("empty tuning grid");
    if (devset.words.empty()) throw Error("empty devset");

    TuneResult result;
    result.surface.resize(t0_values.size() * t1_values.size());
    parallel_for(result.surface.size(), [&](std::size_t idx) {
        GridPoint& p = result.surface[idx];
        p.t0_sc = t0_values[idx / t1_values.size()];
        p.t1_sc = t1_values[idx % t1_values.size()];
        TwoPassParams params{{p.t0_sc, fixed.t0_low, CentroidUpdate::member_mean},
                             {p.t1_sc, fixed.t1_low, CentroidUpdate::member_mean}};
        for (const auto& w : devset.words) {
            try {
                const ClusterSet clusters = two_pass(w.cloud, params);
                p.score += ami(w.labels, token_labels(clusters, w.cloud));
            } catch (const Error&) {
                // all tokens pruned: no usable clustering
            }
        }
    });

    // first strict maximum in t0-major order is the lexicographically smallest tie
    const GridPoint* best = &result.surface.front();
    for (const auto& p : result.surface) {
        if (p.score > best->score) best = &p;
    }
    result.t0_sc = best->t0_sc;
    result.t1_sc = best->t1_sc;
    result.score = best->score;
    return result;
}

std::string tune_report_json(const TuneResult& result, const TuneFixed& fixed) {
    using ojson = nlohmann::ordered_json;
    ojson surface = ojson::array();
    for (const auto& p : result.surface) {
        surface.push_back({{"t0_sc", p.t0_sc},
                           {"t1_sc", p.t1_sc},
                           {"ami_sum", p.score}});
    }
    ojson doc = {{"best",
                  {{"t0_sc", result.t0_sc},
                   {"t1_sc", result.t1_sc},
                   {"ami_sum", result.score}}},
                 {"fixed", {{"k", fixed.k}, {"t0_low", fixed.t0_low}, {"t1_low", fixed.t1_low}}},
                 {"grid", surface}};
    return doc.dump(2) + "\n";
}

}  // namespace semshift
