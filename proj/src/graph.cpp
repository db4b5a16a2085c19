#include "semshift/graph.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include <Eigen/Dense>
#include <json.hpp>

#include "semshift/error.hpp"

namespace semshift {
namespace {

std::string node_id(const SliceId& slice, NodeLayer layer, std::size_t index) {
    return slice.language + "_" + slice.period + "_" + std::to_string(static_cast<int>(layer)) + "_" +
           std::to_string(index);
}

void project(SemanticGraph& graph) {
    std::vector<Vector> embeddings;
    embeddings.reserve(graph.nodes.size());
    for (const auto& n : graph.nodes) embeddings.push_back(n.embedding);
    const auto coords = pca2(embeddings);
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) graph.nodes[i].coords = coords[i];
}

void check_unique_ids(const SemanticGraph& graph) {
    std::set<std::string> seen;
    for (const auto& n : graph.nodes) {
        if (!seen.insert(n.id).second) {
            throw Error("duplicate graph node id " + n.id + " (slices must differ)");
        }
    }
}

// Root of the slice that the time edge points to.
const GraphNode& later_root(const SemanticGraph& temporal) {
    for (const auto& e : temporal.edges) {
        if (e.style == EdgeStyle::time) {
            if (const GraphNode* n = temporal.find(e.to)) return *n;
        }
    }
    throw Error("temporal graph has no time edge");
}

const GraphNode& earlier_root(const SemanticGraph& temporal) {
    for (const auto& e : temporal.edges) {
        if (e.style == EdgeStyle::time) {
            if (const GraphNode* n = temporal.find(e.from)) return *n;
        }
    }
    throw Error("temporal graph has no time edge");
}

GraphNode& sense_node(SemanticGraph& graph, const SliceId& slice, std::size_t index) {
    for (auto& n : graph.nodes) {
        if (n.layer == NodeLayer::sense && n.slice == slice && n.index == index) return n;
    }
    throw Error("index mismatch: no sense " + std::to_string(index) + " in " + slice.language + "/" +
                slice.period);
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
            out += c;
        } else if (c == '\n') {
            out += "\\n";
        } else {
            out += c;
        }
    }
    return out;
}

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v == 0.0 ? 0.0 : v);
    return buf;
}

std::string dot_node_style(NodeStatus status) {
    switch (status) {
        case NodeStatus::gained: return "color=\"blue\", fontcolor=\"blue\"";
        case NodeStatus::lost: return "color=\"gray\", fontcolor=\"gray\", style=\"dashed\"";
        case NodeStatus::consistent_xling: return "color=\"black\", fontcolor=\"orange\"";
        case NodeStatus::unchanged: break;
    }
    return "color=\"black\"";
}

std::string dot_edge_style(EdgeStyle style) {
    switch (style) {
        case EdgeStyle::time: return "style=\"bold\"";
        case EdgeStyle::language: return "style=\"dotted\", dir=\"none\"";
        case EdgeStyle::tree: break;
    }
    return "style=\"solid\"";
}

std::string emit_json(const SemanticGraph& graph) {
    using ojson = nlohmann::ordered_json;
    ojson nodes = ojson::array();
    for (const auto& n : graph.nodes) {
        nodes.push_back({{"id", n.id},
                         {"label", n.label},
                         {"layer", static_cast<int>(n.layer)},
                         {"x", n.coords[0]},
                         {"y", n.coords[1]},
                         {"status", to_string(n.status)},
                         {"language", n.slice.language},
                         {"period", n.slice.period}});
    }
    ojson edges = ojson::array();
    for (const auto& e : graph.edges) {
        edges.push_back({{"from", e.from}, {"to", e.to}, {"style", to_string(e.style)}});
    }
    ojson doc = {{"kind", to_string(graph.kind)}, {"nodes", nodes}, {"edges", edges}};
    return doc.dump(2) + "\n";
}

std::string emit_dot(const SemanticGraph& graph) {
    std::ostringstream out;
    out << "digraph \"" << dot_escape(graph.title) << "\" {\n";
    out << "  graph [kind=\"" << to_string(graph.kind) << "\"];\n";
    out << "  node [shape=\"ellipse\"];\n";
    for (const auto& n : graph.nodes) {
        out << "  \"" << dot_escape(n.id) << "\" [label=\"" << dot_escape(n.label) << "\", pos=\""
            << fixed6(n.coords[0]) << "," << fixed6(n.coords[1]) << "!\", "
            << dot_node_style(n.status) << "];\n";
    }
    for (const auto& e : graph.edges) {
        out << "  \"" << dot_escape(e.from) << "\" -> \"" << dot_escape(e.to) << "\" ["
            << dot_edge_style(e.style) << "];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace

const GraphNode* SemanticGraph::find(const std::string& id) const {
    for (const auto& n : nodes) {
        if (n.id == id) return &n;
    }
    return nullptr;
}

std::vector<std::array<double, 2>> pca2(const std::vector<Vector>& vectors) {
    if (vectors.size() < 2) {
        throw Error("pca2 needs at least 2 vectors");
    }
    const std::size_t n = vectors.size();
    const std::size_t d = vectors.front().size();
    if (d == 0) throw Error("pca2 needs a positive dimension");
    Eigen::MatrixXd x(n, d);
    for (std::size_t i = 0; i < n; ++i) {
        if (vectors[i].size() != d) throw Error("pca2: dimension mismatch");
        for (std::size_t c = 0; c < d; ++c) x(i, c) = vectors[i][c];
    }
    const Eigen::RowVectorXd mean = x.colwise().mean();
    x.rowwise() -= mean;
    const Eigen::MatrixXd cov = (x.transpose() * x) / static_cast<double>(n - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) {
        throw Error("pca2: eigendecomposition failed");
    }

    std::vector<std::array<double, 2>> out(n, {0.0, 0.0});
    const std::size_t components = std::min<std::size_t>(2, d);
    for (std::size_t k = 0; k < components; ++k) {
        // eigenvalues are ascending
        Eigen::VectorXd axis = solver.eigenvectors().col(static_cast<Eigen::Index>(d - 1 - k));
        Eigen::Index lead = 0;
        for (Eigen::Index c = 1; c < axis.size(); ++c) {
            if (std::abs(axis(c)) > std::abs(axis(lead))) lead = c;
        }
        if (axis(lead) < 0.0) axis = -axis;
        const Eigen::VectorXd coords = x * axis;
        for (std::size_t i = 0; i < n; ++i) out[i][k] = coords(static_cast<Eigen::Index>(i));
    }
    return out;
}

SemanticGraph build_tree(const std::string& word, const Vector& word_embedding,
                         const ClusterSet& clusters, const std::vector<NeighborSet>& neighbor_sets) {
    if (clusters.clusters.empty()) {
        throw Error("semantic tree needs at least one sense");
    }
    if (neighbor_sets.size() != clusters.clusters.size()) {
        throw Error("semantic tree needs one neighbor set per sense");
    }
    SemanticGraph g;
    g.kind = GraphKind::tree;
    g.title = word;
    const SliceId& slice = clusters.slice;

    GraphNode root;
    root.id = node_id(slice, NodeLayer::root, 0);
    root.label = word;
    root.layer = NodeLayer::root;
    root.slice = slice;
    root.embedding = word_embedding;
    g.nodes.push_back(root);

    std::size_t neighbor_counter = 0;
    for (std::size_t i = 0; i < clusters.clusters.size(); ++i) {
        GraphNode sense;
        sense.id = node_id(slice, NodeLayer::sense, i);
        sense.label = word + "#" + std::to_string(i);
        sense.layer = NodeLayer::sense;
        sense.slice = slice;
        sense.index = i;
        sense.embedding = clusters.clusters[i].centroid;
        g.edges.push_back({root.id, sense.id, EdgeStyle::tree});
        g.nodes.push_back(sense);
        for (const auto& nb : neighbor_sets[i].neighbors) {
            GraphNode leaf;
            leaf.id = node_id(slice, NodeLayer::neighbor, neighbor_counter);
            leaf.label = nb.word;
            leaf.layer = NodeLayer::neighbor;
            leaf.slice = slice;
            leaf.index = neighbor_counter++;
            leaf.embedding = nb.embedding;
            g.edges.push_back({sense.id, leaf.id, EdgeStyle::tree});
            g.nodes.push_back(std::move(leaf));
        }
    }
    project(g);
    return g;
}

SemanticGraph build_temporal(const std::string& word, const SemanticGraph& tree_t0,
                             const SemanticGraph& tree_t1, const ChangeReport& report) {
    if (tree_t0.nodes.empty() || tree_t1.nodes.empty()) {
        throw Error("temporal graph needs two non-empty trees");
    }
    SemanticGraph g;
    g.kind = GraphKind::temporal;
    g.title = word;
    g.nodes = tree_t0.nodes;
    g.nodes.insert(g.nodes.end(), tree_t1.nodes.begin(), tree_t1.nodes.end());
    g.edges = tree_t0.edges;
    g.edges.insert(g.edges.end(), tree_t1.edges.begin(), tree_t1.edges.end());
    check_unique_ids(g);

    const GraphNode& root0 = tree_t0.nodes.front();
    const GraphNode& root1 = tree_t1.nodes.front();
    g.edges.push_back({root0.id, root1.id, EdgeStyle::time});
    for (std::size_t i : report.lost) sense_node(g, root0.slice, i).status = NodeStatus::lost;
    for (std::size_t j : report.gained) sense_node(g, root1.slice, j).status = NodeStatus::gained;
    project(g);
    return g;
}

SemanticGraph build_spatiotemporal(const std::pair<std::string, std::string>& pair,
                                   const SemanticGraph& temporal_l1, const SemanticGraph& temporal_l2,
                                   const XlingComparison& comparison) {
    SemanticGraph g;
    g.kind = GraphKind::spatiotemporal;
    g.title = pair.first + "/" + pair.second;
    g.nodes = temporal_l1.nodes;
    g.nodes.insert(g.nodes.end(), temporal_l2.nodes.begin(), temporal_l2.nodes.end());
    g.edges = temporal_l1.edges;
    g.edges.insert(g.edges.end(), temporal_l2.edges.begin(), temporal_l2.edges.end());
    check_unique_ids(g);

    const SliceId late1 = later_root(temporal_l1).slice;
    const SliceId late2 = later_root(temporal_l2).slice;
    const SliceId early1 = earlier_root(temporal_l1).slice;
    const SliceId early2 = earlier_root(temporal_l2).slice;
    g.edges.push_back({later_root(temporal_l1).id, later_root(temporal_l2).id, EdgeStyle::language});
    for (const auto& p : comparison.consistent_gains) {
        sense_node(g, late1, p.l1).status = NodeStatus::consistent_xling;
        sense_node(g, late2, p.l2).status = NodeStatus::consistent_xling;
    }
    for (const auto& p : comparison.consistent_losses) {
        sense_node(g, early1, p.l1).status = NodeStatus::consistent_xling;
        sense_node(g, early2, p.l2).status = NodeStatus::consistent_xling;
    }
    project(g);
    return g;
}

std::string emit(const SemanticGraph& graph, GraphFormat format) {
    return format == GraphFormat::json ? emit_json(graph) : emit_dot(graph);
}

std::string to_string(NodeStatus status) {
    switch (status) {
        case NodeStatus::gained: return "gained";
        case NodeStatus::lost: return "lost";
        case NodeStatus::consistent_xling: return "consistent_xling";
        case NodeStatus::unchanged: break;
    }
    return "unchanged";
}

std::string to_string(GraphKind kind) {
    switch (kind) {
        case GraphKind::temporal: return "temporal";
        case GraphKind::spatiotemporal: return "spatiotemporal";
        case GraphKind::tree: break;
    }
    return "tree";
}

std::string to_string(EdgeStyle style) {
    switch (style) {
        case EdgeStyle::time: return "time";
        case EdgeStyle::language: return "language";
        case EdgeStyle::tree: break;
    }
    return "tree";
}

}  // namespace semshift
