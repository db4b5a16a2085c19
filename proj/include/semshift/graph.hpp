#pragma once

#include <array>
#include <string>
#include <vector>

#include "semshift/detection.hpp"
#include "semshift/xlingual.hpp"

namespace semshift {

// Top-2 principal-component coordinates of the centered rows. Each component's
// largest-magnitude loading is made positive so output is sign-stable.
std::vector<std::array<double, 2>> pca2(const std::vector<Vector>& vectors);

enum class NodeLayer { root = 0, sense = 1, neighbor = 2 };
enum class NodeStatus { unchanged, gained, lost, consistent_xling };
enum class GraphKind { tree, temporal, spatiotemporal };
enum class EdgeStyle { tree, time, language };

struct GraphNode {
    std::string id;  // language_period_layer_index
    std::string label;
    NodeLayer layer = NodeLayer::root;
    std::array<double, 2> coords{0.0, 0.0};
    NodeStatus status = NodeStatus::unchanged;
    SliceId slice;
    std::size_t index = 0;  // sense index for sense nodes
    Vector embedding;       // not exported; used for joint projection
};

struct GraphEdge {
    std::string from;
    std::string to;
    EdgeStyle style = EdgeStyle::tree;
};

struct SemanticGraph {
    GraphKind kind = GraphKind::tree;
    std::string title;
    std::vector<GraphNode> nodes;
    std::vector<GraphEdge> edges;

    const GraphNode* find(const std::string& id) const;
};

// Root word -> sense centroids -> each sense's neighbor words.
SemanticGraph build_tree(const std::string& word, const Vector& word_embedding,
                         const ClusterSet& clusters, const std::vector<NeighborSet>& neighbor_sets);

// Two trees joined root to root, senses marked from the report.
SemanticGraph build_temporal(const std::string& word, const SemanticGraph& tree_t0,
                             const SemanticGraph& tree_t1, const ChangeReport& report);

// Two temporal graphs joined by a language edge between their later roots;
// consistent senses marked.
SemanticGraph build_spatiotemporal(const std::pair<std::string, std::string>& pair,
                                   const SemanticGraph& temporal_l1, const SemanticGraph& temporal_l2,
                                   const XlingComparison& comparison);

enum class GraphFormat { json, dot };

std::string emit(const SemanticGraph& graph, GraphFormat format);

std::string to_string(NodeStatus status);
std::string to_string(GraphKind kind);
std::string to_string(EdgeStyle style);

}  // namespace semshift
