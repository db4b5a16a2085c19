#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semshift/embedding_store.hpp"

namespace semshift {

// One sense cluster: a centroid and the cloud rows it owns.
struct SenseCluster {
    Vector centroid;
    std::vector<std::size_t> members;  // strictly increasing row indices

    bool operator==(const SenseCluster&) const = default;
};

// The sense inventory of one word in one slice. Rows removed as noise are kept in `pruned`.
struct ClusterSet {
    std::string word;
    SliceId slice;
    std::vector<SenseCluster> clusters;
    std::vector<std::size_t> pruned;

    std::size_t token_count() const;
};

enum class CentroidUpdate {
    member_mean,  // mean of all member tokens
    midpoint,     // (p_i + p_j) / 2 at every merge
};

struct ClusterParams {
    double t_sc = 0.4;          // merge while the closest pair is nearer than this
    std::size_t t_low = 0;      // clusters smaller than this are pruned
    CentroidUpdate centroid_update = CentroidUpdate::member_mean;
};

struct TwoPassParams {
    ClusterParams pass0;
    ClusterParams pass1;
};

// Mean pairwise cosine distance between the members of a and b.
double cluster_link_distance(const SenseCluster& a, const SenseCluster& b, const TokenCloud& cloud);

// Average-linkage agglomeration under cosine distance. Starts from singletons and
// merges the closest pair while its distance is below t_sc. Ties go to the
// lexicographically smallest (id_a, id_b) pair; the merged cluster keeps the
// smaller id. Clusters are returned ordered by their smallest member.
ClusterSet agglomerate(const TokenCloud& cloud, const ClusterParams& params);

// Pass 0 over-segments and prunes small clusters as noise; pass 1 re-clusters the
// surviving tokens from singletons. Indices refer to the original cloud rows.
ClusterSet two_pass(const TokenCloud& cloud, const TwoPassParams& params);

// Lloyd's k-means on unit-normalized rows with k-means++ seeding. Centroids in the
// result are member means of the raw rows. Empty clusters are dropped.
ClusterSet kmeans_baseline(const TokenCloud& cloud, std::size_t k, std::uint64_t seed);

// Cluster id of every cloud row. Pruned rows go to the cluster with the nearest
// centroid (cosine), so every row gets a label.
std::vector<int> token_labels(const ClusterSet& clusters, const TokenCloud& cloud);

}  // namespace semshift
