#include "semshift/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "semshift/error.hpp"
#include "semshift/parallel.hpp"

namespace semshift {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Upper-triangular storage of per-pair sums of token distances.
class PairSums {
public:
    explicit PairSums(std::size_t n) : n_(n), data_(n < 2 ? 0 : n * (n - 1) / 2, 0.0) {}

    double& at(std::size_t i, std::size_t j) {
        if (i > j) std::swap(i, j);
        return data_[index(i, j)];
    }

private:
    std::size_t index(std::size_t i, std::size_t j) const {
        return i * n_ - i * (i + 1) / 2 + (j - i - 1);
    }

    std::size_t n_;
    std::vector<double> data_;
};

std::vector<std::size_t> merge_sorted(const std::vector<std::size_t>& a,
                                      const std::vector<std::size_t>& b) {
    std::vector<std::size_t> out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

class Agglomerator {
public:
    Agglomerator(const TokenCloud& cloud, const ClusterParams& params)
        : cloud_(cloud),
          params_(params),
          n_(cloud.rows()),
          sums_(n_),
          size_(n_, 1),
          active_(n_, true),
          members_(n_),
          nn_dist_(n_, kInf),
          nn_idx_(n_, n_) {}

    ClusterSet run() {
        init_distances();
        if (params_.centroid_update == CentroidUpdate::midpoint) {
            midpoints_.resize(n_);
            for (std::size_t i = 0; i < n_; ++i) {
                const auto row = cloud_.row(i);
                midpoints_[i].assign(row.begin(), row.end());
            }
        }
        for (std::size_t i = 0; i < n_; ++i) {
            members_[i] = {i};
            refresh_row(i);
        }

        for (;;) {
            std::size_t best = n_;
            double best_dist = kInf;
            for (std::size_t i = 0; i < n_; ++i) {
                if (active_[i] && nn_dist_[i] < best_dist) {
                    best_dist = nn_dist_[i];
                    best = i;
                }
            }
            if (best == n_ || !(best_dist < params_.t_sc)) {
                break;
            }
            merge(best, nn_idx_[best]);
        }
        return collect();
    }

private:
    double linkage(std::size_t i, std::size_t j) {
        return sums_.at(i, j) / (static_cast<double>(size_[i]) * static_cast<double>(size_[j]));
    }

    void init_distances() {
        const std::size_t dim = cloud_.dim();
        std::vector<double> norms(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            double s = 0.0;
            for (float v : cloud_.row(i)) s += static_cast<double>(v) * static_cast<double>(v);
            norms[i] = std::sqrt(s);
        }
        // Same arithmetic as cosine_distance, so values match it bit for bit.
        parallel_for(n_, [&](std::size_t i) {
            const auto u = cloud_.row(i);
            for (std::size_t j = i + 1; j < n_; ++j) {
                const auto v = cloud_.row(j);
                double dot = 0.0;
                for (std::size_t c = 0; c < dim; ++c) {
                    dot += static_cast<double>(u[c]) * static_cast<double>(v[c]);
                }
                sums_.at(i, j) = std::clamp(1.0 - dot / (norms[i] * norms[j]), 0.0, 2.0);
            }
        });
    }

    // Nearest active partner with a larger id; ties keep the smallest id.
    void refresh_row(std::size_t i) {
        nn_dist_[i] = kInf;
        nn_idx_[i] = n_;
        for (std::size_t j = i + 1; j < n_; ++j) {
            if (!active_[j]) continue;
            const double d = linkage(i, j);
            if (d < nn_dist_[i]) {
                nn_dist_[i] = d;
                nn_idx_[i] = j;
            }
        }
    }

    void merge(std::size_t a, std::size_t b) {
        for (std::size_t k = 0; k < n_; ++k) {
            if (active_[k] && k != a && k != b) {
                sums_.at(a, k) += sums_.at(b, k);
            }
        }
        active_[b] = false;
        size_[a] += size_[b];
        members_[a] = merge_sorted(members_[a], members_[b]);
        members_[b].clear();
        if (!midpoints_.empty()) {
            for (std::size_t c = 0; c < midpoints_[a].size(); ++c) {
                midpoints_[a][c] = 0.5 * (midpoints_[a][c] + midpoints_[b][c]);
            }
        }

        refresh_row(a);
        for (std::size_t k = 0; k < b; ++k) {
            if (!active_[k] || k == a) continue;
            if (nn_idx_[k] == a || nn_idx_[k] == b) {
                refresh_row(k);
            } else if (k < a) {
                const double d = linkage(k, a);
                if (d < nn_dist_[k] || (d == nn_dist_[k] && a < nn_idx_[k])) {
                    nn_dist_[k] = d;
                    nn_idx_[k] = a;
                }
            }
        }
    }

    ClusterSet collect() {
        ClusterSet out;
        out.word = cloud_.word();
        for (std::size_t i = 0; i < n_; ++i) {
            if (!active_[i]) continue;
            if (members_[i].size() < params_.t_low) {
                out.pruned.insert(out.pruned.end(), members_[i].begin(), members_[i].end());
                continue;
            }
            SenseCluster cluster;
            cluster.centroid = midpoints_.empty() ? centroid(cloud_, members_[i]) : midpoints_[i];
            cluster.members = std::move(members_[i]);
            out.clusters.push_back(std::move(cluster));
        }
        std::sort(out.pruned.begin(), out.pruned.end());
        return out;
    }

    const TokenCloud& cloud_;
    const ClusterParams& params_;
    std::size_t n_;
    PairSums sums_;
    std::vector<std::size_t> size_;
    std::vector<bool> active_;
    std::vector<std::vector<std::size_t>> members_;
    std::vector<Vector> midpoints_;
    std::vector<double> nn_dist_;
    std::vector<std::size_t> nn_idx_;
};

void check_params(const ClusterParams& params) {
    if (!(params.t_sc > 0.0) || !std::isfinite(params.t_sc)) {
        throw Error("clustering threshold t_sc must be positive");
    }
}

Vector unit(std::span<const float> row) {
    Vector v(row.begin(), row.end());
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
    return v;
}

double squared_distance(const Vector& a, const Vector& b) {
    double s = 0.0;
    for (std::size_t c = 0; c < a.size(); ++c) {
        const double d = a[c] - b[c];
        s += d * d;
    }
    return s;
}

}  // namespace

std::size_t ClusterSet::token_count() const {
    std::size_t n = 0;
    for (const auto& c : clusters) n += c.members.size();
    return n;
}

double cluster_link_distance(const SenseCluster& a, const SenseCluster& b, const TokenCloud& cloud) {
    if (a.members.empty() || b.members.empty()) {
        throw Error("link distance of an empty cluster");
    }
    double sum = 0.0;
    for (std::size_t i : a.members) {
        for (std::size_t j : b.members) {
            sum += cosine_distance(cloud.row(i), cloud.row(j));
        }
    }
    return sum / (static_cast<double>(a.members.size()) * static_cast<double>(b.members.size()));
}

ClusterSet agglomerate(const TokenCloud& cloud, const ClusterParams& params) {
    check_params(params);
    if (cloud.rows() == 0) {
        throw Error("cannot cluster an empty cloud");
    }
    return Agglomerator(cloud, params).run();
}

ClusterSet two_pass(const TokenCloud& cloud, const TwoPassParams& params) {
    check_params(params.pass0);
    check_params(params.pass1);
    const ClusterSet first = agglomerate(cloud, params.pass0);

    std::vector<std::size_t> survivors;
    for (const auto& c : first.clusters) {
        survivors.insert(survivors.end(), c.members.begin(), c.members.end());
    }
    if (survivors.empty()) {
        throw Error("all tokens pruned as noise");
    }
    std::sort(survivors.begin(), survivors.end());

    const ClusterSet second = agglomerate(cloud.subset(survivors), params.pass1);
    ClusterSet out;
    out.word = cloud.word();
    for (const auto& c : second.clusters) {
        SenseCluster mapped;
        mapped.members.reserve(c.members.size());
        for (std::size_t m : c.members) mapped.members.push_back(survivors[m]);
        mapped.centroid = params.pass1.centroid_update == CentroidUpdate::member_mean
                              ? centroid(cloud, mapped.members)
                              : c.centroid;
        out.clusters.push_back(std::move(mapped));
    }
    out.pruned = first.pruned;
    for (std::size_t m : second.pruned) out.pruned.push_back(survivors[m]);
    std::sort(out.pruned.begin(), out.pruned.end());
    return out;
}

ClusterSet kmeans_baseline(const TokenCloud& cloud, std::size_t k, std::uint64_t seed) {
    const std::size_t n = cloud.rows();
    if (k == 0) {
        throw Error("k-means needs k >= 1");
    }
    if (k > n) {
        throw Error("k-means: k exceeds the number of tokens");
    }
    std::vector<Vector> points(n);
    for (std::size_t i = 0; i < n; ++i) points[i] = unit(cloud.row(i));

    // k-means++ seeding
    std::mt19937_64 rng(seed);
    std::vector<Vector> centers;
    std::vector<bool> chosen(n, false);
    std::size_t first = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    centers.push_back(points[first]);
    chosen[first] = true;
    std::vector<double> d2(n, kInf);
    while (centers.size() < k) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            d2[i] = std::min(d2[i], squared_distance(points[i], centers.back()));
            total += d2[i];
        }
        std::size_t pick = n;
        if (total > 0.0) {
            double target = std::uniform_real_distribution<double>(0.0, total)(rng);
            for (std::size_t i = 0; i < n; ++i) {
                if (d2[i] <= 0.0) continue;
                pick = i;
                target -= d2[i];
                if (target < 0.0) break;
            }
        }
        if (pick == n) {
            // every remaining point coincides with a center
            pick = static_cast<std::size_t>(
                std::find(chosen.begin(), chosen.end(), false) - chosen.begin());
        }
        chosen[pick] = true;
        centers.push_back(points[pick]);
    }

    std::vector<std::size_t> assign(n, 0);
    auto assign_points = [&] {
        for (std::size_t i = 0; i < n; ++i) {
            double best = kInf;
            for (std::size_t c = 0; c < k; ++c) {
                const double d = squared_distance(points[i], centers[c]);
                if (d < best) {
                    best = d;
                    assign[i] = c;
                }
            }
        }
    };

    const std::size_t dim = cloud.dim();
    for (int iter = 0; iter < 100; ++iter) {
        assign_points();
        std::vector<Vector> sums(k, Vector(dim, 0.0));
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t c = 0; c < dim; ++c) sums[assign[i]][c] += points[i][c];
            ++counts[assign[i]];
        }
        double movement = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] == 0) continue;
            for (double& v : sums[c]) v /= static_cast<double>(counts[c]);
            movement = std::max(movement, std::sqrt(squared_distance(sums[c], centers[c])));
            centers[c] = std::move(sums[c]);
        }
        if (movement < 1e-6) break;
    }
    assign_points();

    std::vector<std::vector<std::size_t>> groups(k);
    for (std::size_t i = 0; i < n; ++i) groups[assign[i]].push_back(i);
    std::sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) {
        if (a.empty() || b.empty()) return !a.empty() && b.empty();
        return a.front() < b.front();
    });
    ClusterSet out;
    out.word = cloud.word();
    for (auto& g : groups) {
        if (g.empty()) continue;
        SenseCluster c;
        c.centroid = centroid(cloud, g);
        c.members = std::move(g);
        out.clusters.push_back(std::move(c));
    }
    return out;
}

std::vector<int> token_labels(const ClusterSet& clusters, const TokenCloud& cloud) {
    if (clusters.clusters.empty()) {
        throw Error("token labels need at least one cluster");
    }
    std::vector<int> labels(cloud.rows(), -1);
    for (std::size_t c = 0; c < clusters.clusters.size(); ++c) {
        for (std::size_t m : clusters.clusters[c].members) {
            if (m >= labels.size()) throw Error("cluster member outside the cloud");
            labels[m] = static_cast<int>(c);
        }
    }
    for (std::size_t r = 0; r < labels.size(); ++r) {
        if (labels[r] >= 0) continue;
        double best = kInf;
        for (std::size_t c = 0; c < clusters.clusters.size(); ++c) {
            const double d = cosine_distance(clusters.clusters[c].centroid, cloud.row(r));
            if (d < best) {
                best = d;
                labels[r] = static_cast<int>(c);
            }
        }
    }
    return labels;
}

}  // namespace semshift
