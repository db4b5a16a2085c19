#pragma once

// Independent reference implementations used only by the test suites.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "semshift/semshift.hpp"

namespace semshift::testing {

inline TokenCloud random_cloud(const std::string& word, std::size_t rows, std::size_t dim,
                               std::mt19937_64& rng) {
    std::normal_distribution<float> g(0.0f, 1.0f);
    std::vector<float> v(rows * dim);
    for (auto& x : v) x = g(rng);
    return TokenCloud(word, dim, std::move(v));
}

inline Vector random_vector(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vector v(dim);
    for (auto& x : v) x = g(rng);
    return v;
}

// Column mean by a plain double loop.
inline Vector naive_mean(const TokenCloud& cloud) {
    Vector m(cloud.dim(), 0.0);
    for (std::size_t c = 0; c < cloud.dim(); ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < cloud.rows(); ++r) s += cloud.row(r)[c];
        m[c] = s / static_cast<double>(cloud.rows());
    }
    return m;
}

using Partition = std::vector<std::vector<std::size_t>>;

inline Partition partition_of(const ClusterSet& set) {
    Partition p;
    for (const auto& c : set.clusters) p.push_back(c.members);
    std::sort(p.begin(), p.end());
    return p;
}

// Rescans every pair of clusters at every step and recomputes the average
// linkage from scratch.
inline Partition naive_agglomerate(const TokenCloud& cloud, double t_sc, std::size_t t_low) {
    std::vector<std::vector<std::size_t>> clusters;
    for (std::size_t i = 0; i < cloud.rows(); ++i) clusters.push_back({i});
    std::vector<bool> alive(clusters.size(), true);
    for (;;) {
        double best = INFINITY;
        std::size_t bi = 0;
        std::size_t bj = 0;
        for (std::size_t i = 0; i < clusters.size(); ++i) {
            if (!alive[i]) continue;
            for (std::size_t j = i + 1; j < clusters.size(); ++j) {
                if (!alive[j]) continue;
                double sum = 0.0;
                for (std::size_t a : clusters[i]) {
                    for (std::size_t b : clusters[j]) sum += cosine_distance(cloud.row(a), cloud.row(b));
                }
                const double d = sum / static_cast<double>(clusters[i].size() * clusters[j].size());
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (!(best < t_sc)) break;
        clusters[bi].insert(clusters[bi].end(), clusters[bj].begin(), clusters[bj].end());
        std::sort(clusters[bi].begin(), clusters[bi].end());
        alive[bj] = false;
    }
    Partition out;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        if (alive[i] && clusters[i].size() >= t_low) out.push_back(clusters[i]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, descending.
inline std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
    const std::size_t n = a.size();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-26) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p];
                    const double akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k];
                    const double aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
    std::sort(ev.rbegin(), ev.rend());
    return ev;
}

inline std::vector<std::vector<double>> sample_covariance(const std::vector<Vector>& rows) {
    const std::size_t n = rows.size();
    const std::size_t d = rows.front().size();
    Vector mean(d, 0.0);
    for (const auto& r : rows)
        for (std::size_t c = 0; c < d; ++c) mean[c] += r[c] / static_cast<double>(n);
    std::vector<std::vector<double>> cov(d, std::vector<double>(d, 0.0));
    for (const auto& r : rows)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                cov[i][j] += (r[i] - mean[i]) * (r[j] - mean[j]) / static_cast<double>(n - 1);
    return cov;
}

inline double sample_variance(const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) mean += x / static_cast<double>(xs.size());
    double v = 0.0;
    for (double x : xs) v += (x - mean) * (x - mean);
    return v / static_cast<double>(xs.size() - 1);
}

// Expected mutual information as the average MI over every permutation of b.
inline double permutation_ami(const std::vector<int>& a, std::vector<int> b) {
    const double mi = mutual_information(a, b);
    std::vector<std::size_t> idx(b.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    const std::vector<int> original = b;
    double total = 0.0;
    double count = 0.0;
    do {
        for (std::size_t i = 0; i < idx.size(); ++i) b[i] = original[idx[i]];
        total += mutual_information(a, b);
        count += 1.0;
    } while (std::next_permutation(idx.begin(), idx.end()));
    const double emi = total / count;
    auto entropy = [](const std::vector<int>& labels) {
        std::map<int, double> counts;
        for (int l : labels) counts[l] += 1.0;
        double h = 0.0;
        for (const auto& [_, c] : counts) {
            const double p = c / static_cast<double>(labels.size());
            h -= p * std::log(p);
        }
        return h;
    };
    const double denom = 0.5 * (entropy(a) + entropy(original)) - emi;
    if (std::abs(denom) < 1e-15) return 0.0;
    return (mi - emi) / denom;
}

// Minimal parser for the DOT subset: digraph ID { (attr_stmt | node_stmt | edge_stmt) ;* }.
struct ParsedDot {
    std::string name;
    std::map<std::string, std::map<std::string, std::string>> nodes;
    std::vector<std::pair<std::string, std::string>> edges;
};

class DotParser {
public:
    explicit DotParser(std::string text) : s_(std::move(text)) {}

    ParsedDot parse() {
        ParsedDot out;
        expect_keyword("digraph");
        out.name = identifier();
        expect('{');
        for (;;) {
            skip_ws();
            if (peek() == '}') {
                ++pos_;
                break;
            }
            const std::string first = identifier();
            skip_ws();
            if (first == "graph" || first == "node" || first == "edge") {
                attributes();
            } else if (s_.compare(pos_, 2, "->") == 0) {
                pos_ += 2;
                const std::string second = identifier();
                out.edges.emplace_back(first, second);
                skip_ws();
                if (peek() == '[') attributes();
            } else {
                auto& attrs = out.nodes[first];
                skip_ws();
                if (peek() == '[') attrs = attributes();
            }
            skip_ws();
            if (peek() == ';') ++pos_;
        }
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return out;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw std::runtime_error("DOT parse error at " + std::to_string(pos_) + ": " + what);
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    void expect_keyword(const std::string& kw) {
        skip_ws();
        if (s_.compare(pos_, kw.size(), kw) != 0) fail("expected " + kw);
        pos_ += kw.size();
    }
    std::string identifier() {
        skip_ws();
        std::string out;
        if (peek() == '"') {
            ++pos_;
            while (pos_ < s_.size() && s_[pos_] != '"') {
                if (s_[pos_] == '\\' && pos_ + 1 < s_.size()) {
                    ++pos_;
                    out += s_[pos_] == 'n' ? '\n' : s_[pos_];
                } else {
                    out += s_[pos_];
                }
                ++pos_;
            }
            if (peek() != '"') fail("unterminated string");
            ++pos_;
            return out;
        }
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
                s_[pos_] == '.' || s_[pos_] == '-')) {
            if (s_[pos_] == '-' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '>') break;
            out += s_[pos_++];
        }
        if (out.empty()) fail("expected identifier");
        return out;
    }
    std::map<std::string, std::string> attributes() {
        std::map<std::string, std::string> attrs;
        expect('[');
        for (;;) {
            skip_ws();
            if (peek() == ']') {
                ++pos_;
                return attrs;
            }
            const std::string key = identifier();
            expect('=');
            attrs[key] = identifier();
            skip_ws();
            if (peek() == ',' || peek() == ';') ++pos_;
        }
    }

    std::string s_;
    std::size_t pos_ = 0;
};

}  // namespace semshift::testing
