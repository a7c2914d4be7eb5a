#include "chordlink/graph.hpp"

#include <algorithm>
#include <cmath>

#include "chordlink/error.hpp"

namespace chordlink {

namespace {

std::uint64_t pair_key(NodeIndex a, NodeIndex b)
{
    if (a > b)
        std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

}  // namespace

Graph::Graph(std::vector<Node> nodes, std::vector<Edge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), incident_(nodes_.size())
{
    for (NodeIndex i = 0; i < nodes_.size(); ++i) {
        if (!by_id_.emplace(nodes_[i].id, i).second)
            throw InputError("duplicate node id '" + nodes_[i].id + "'");
    }
    std::unordered_map<std::uint64_t, EdgeIndex> seen;
    for (EdgeIndex e = 0; e < edges_.size(); ++e) {
        const Edge& edge = edges_[e];
        if (edge.source >= nodes_.size() || edge.target >= nodes_.size())
            throw InputError("edge endpoint out of range");
        if (edge.source == edge.target)
            throw InputError("self-loop on node '" + nodes_[edge.source].id + "'");
        if (!(edge.weight > 0.0) || !std::isfinite(edge.weight))
            throw InputError("edge weight must be positive and finite");
        if (!seen.emplace(pair_key(edge.source, edge.target), e).second)
            throw InputError("duplicate edge '" + nodes_[edge.source].id + "' -- '" +
                             nodes_[edge.target].id + "'");
        incident_[edge.source].push_back(e);
        incident_[edge.target].push_back(e);
    }
}

NodeIndex Graph::index_of(const std::string& id) const
{
    auto it = by_id_.find(id);
    if (it == by_id_.end())
        throw InputError("unknown node id '" + id + "'");
    return it->second;
}

bool operator==(const Graph& a, const Graph& b)
{
    auto node_eq = [](const Node& x, const Node& y) {
        return x.id == y.id && x.label == y.label && x.extra == y.extra;
    };
    auto edge_eq = [](const Edge& x, const Edge& y) {
        return x.source == y.source && x.target == y.target && x.weight == y.weight &&
               x.label == y.label && x.extra == y.extra;
    };
    return std::equal(a.nodes_.begin(), a.nodes_.end(), b.nodes_.begin(), b.nodes_.end(), node_eq) &&
           std::equal(a.edges_.begin(), a.edges_.end(), b.edges_.begin(), b.edges_.end(), edge_eq);
}

bool GraphBuilder::add_node(std::string id, std::string label, PassThrough extra)
{
    if (by_id_.contains(id))
        return false;
    by_id_.emplace(id, nodes_.size());
    nodes_.push_back({std::move(id), std::move(label), std::move(extra)});
    return true;
}

void GraphBuilder::add_edge(const std::string& source, const std::string& target, double weight,
                            std::string label, PassThrough extra)
{
    auto s = by_id_.find(source);
    auto t = by_id_.find(target);
    if (s == by_id_.end() || t == by_id_.end())
        throw InputError("edge references undeclared node '" +
                         (s == by_id_.end() ? source : target) + "'");
    if (s->second == t->second)
        throw InputError("self-loop on node '" + source + "'");
    if (!(weight > 0.0) || !std::isfinite(weight))
        throw InputError("edge weight must be positive and finite");
    auto [it, fresh] = by_pair_.emplace(pair_key(s->second, t->second), edges_.size());
    if (!fresh) {
        edges_[it->second].weight += weight;
        return;
    }
    edges_.push_back({s->second, t->second, weight, std::move(label), std::move(extra)});
}

Graph GraphBuilder::build() &&
{
    return Graph(std::move(nodes_), std::move(edges_));
}

bool Cluster::contains(NodeIndex n) const
{
    return std::binary_search(members.begin(), members.end(), n);
}

NodeRole classify_node(const Graph& graph, const Cluster& cluster, NodeIndex node)
{
    if (!cluster.contains(node))
        throw InputError("node '" + graph.node(node).id + "' is not a member of the cluster");
    for (EdgeIndex e : graph.incident(node)) {
        if (!cluster.contains(graph.edge(e).other(node)))
            return NodeRole::Extrovert;
    }
    return NodeRole::Introvert;
}

std::vector<EdgeIndex> induced_edges(const Graph& graph, const Cluster& cluster)
{
    std::vector<EdgeIndex> out;
    for (NodeIndex n : cluster.members) {
        for (EdgeIndex e : graph.incident(n)) {
            const Edge& edge = graph.edge(e);
            if (edge.source == n && cluster.contains(edge.target))
                out.push_back(e);
            else if (edge.target == n && cluster.contains(edge.source))
                out.push_back(e);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace chordlink
