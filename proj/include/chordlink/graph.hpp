#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace chordlink {

using NodeIndex = std::size_t;
using EdgeIndex = std::size_t;
using ClusterId = std::uint32_t;

/// Attributes that are carried through import/export without interpretation.
/// Each entry is a key and the raw GML text of its value.
using PassThrough = std::vector<std::pair<std::string, std::string>>;

struct Node {
    std::string id;
    std::string label;
    PassThrough extra;
};

struct Edge {
    NodeIndex source = 0;
    NodeIndex target = 0;
    double weight = 1.0;
    std::string label;
    PassThrough extra;

    NodeIndex other(NodeIndex n) const { return n == source ? target : source; }
};

/// Immutable undirected simple graph with positive edge weights.
class Graph {
public:
    Graph() = default;

    /// Rejects duplicate node ids, self-loops, duplicate edges and non-positive weights.
    Graph(std::vector<Node> nodes, std::vector<Edge> edges);

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Node& node(NodeIndex n) const { return nodes_.at(n); }
    const Edge& edge(EdgeIndex e) const { return edges_.at(e); }

    /// Edge indices incident to n, ascending.
    const std::vector<EdgeIndex>& incident(NodeIndex n) const { return incident_.at(n); }
    std::size_t degree(NodeIndex n) const { return incident_.at(n).size(); }

    /// Throws InputError for unknown ids.
    NodeIndex index_of(const std::string& id) const;
    bool contains(const std::string& id) const { return by_id_.contains(id); }

    friend bool operator==(const Graph& a, const Graph& b);

private:
    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeIndex>> incident_;
    std::unordered_map<std::string, NodeIndex> by_id_;
};

/// Accumulates nodes and edges from looser input; parallel edges are merged by summing weights.
class GraphBuilder {
public:
    /// Returns false if the id already exists.
    bool add_node(std::string id, std::string label, PassThrough extra = {});
    bool has_node(const std::string& id) const { return by_id_.contains(id); }

    /// Both endpoints must already be declared. A repeated pair adds its weight to the first edge.
    void add_edge(const std::string& source, const std::string& target, double weight,
                  std::string label = {}, PassThrough extra = {});

    Graph build() &&;

private:
    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    std::unordered_map<std::string, NodeIndex> by_id_;
    std::unordered_map<std::uint64_t, EdgeIndex> by_pair_;
};

enum class NodeRole { Extrovert, Introvert };

struct Cluster {
    ClusterId id = 0;
    std::vector<NodeIndex> members;  // sorted, unique

    bool contains(NodeIndex n) const;
    friend bool operator==(const Cluster&, const Cluster&) = default;
};

/// Throws InputError if `node` is not a member.
NodeRole classify_node(const Graph& graph, const Cluster& cluster, NodeIndex node);

/// Edges of the subgraph induced by the cluster, ascending by index.
std::vector<EdgeIndex> induced_edges(const Graph& graph, const Cluster& cluster);

}  // namespace chordlink
