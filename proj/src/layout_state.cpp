#include "chordlink/layout_state.hpp"

#include <cmath>

#include "chordlink/error.hpp"

namespace chordlink {

const Copy* ClusterLayout::attachment(EdgeIndex e) const
{
    for (const Copy& c : copies) {
        if (c.edge && *c.edge == e)
            return &c;
    }
    return nullptr;
}

double collapsed_glyph_radius(std::size_t member_count)
{
    return kNodeGlyphRadius * std::sqrt(static_cast<double>(member_count));
}

std::optional<ClusterId> LayoutState::cluster_of(NodeIndex n) const
{
    for (const auto& [id, cl] : clusters) {
        if (cl.cluster.contains(n))
            return id;
    }
    return std::nullopt;
}

Point LayoutState::reference_position(NodeIndex n) const
{
    if (auto it = free_positions.find(n); it != free_positions.end())
        return it->second;
    for (const auto& [id, cl] : clusters) {
        if (auto it = cl.anchors.find(n); it != cl.anchors.end())
            return it->second;
    }
    throw InvariantError("node '" + g().node(n).id + "' has no position");
}

PositionMap LayoutState::reference_positions() const
{
    PositionMap out = free_positions;
    for (const auto& [id, cl] : clusters)
        out.insert(cl.anchors.begin(), cl.anchors.end());
    return out;
}

std::optional<std::pair<Point, Point>> LayoutState::external_segment(EdgeIndex e) const
{
    const Edge& edge = g().edge(e);
    const auto cs = cluster_of(edge.source);
    const auto ct = cluster_of(edge.target);
    if (cs && ct && *cs == *ct)
        return std::nullopt;
    auto end_point = [&](NodeIndex n, const std::optional<ClusterId>& cid) -> Point {
        if (!cid)
            return free_positions.at(n);
        const ClusterLayout& cl = clusters.at(*cid);
        if (cl.collapsed)
            return cl.region.center;
        const Copy* c = cl.attachment(e);
        if (!c)
            throw InvariantError("external edge without attachment");
        return cl.attachment_point(*c);
    };
    return std::pair{end_point(edge.source, cs), end_point(edge.target, ct)};
}

void LayoutState::check_invariants() const
{
    std::size_t placed = free_positions.size();
    for (const auto& [id, cl] : clusters) {
        placed += cl.cluster.members.size();
        for (NodeIndex n : cl.cluster.members) {
            if (free_positions.contains(n))
                throw InvariantError("clustered node also has a free position");
            if (!cl.anchors.contains(n))
                throw InvariantError("cluster member without anchor");
        }
        for (const auto& [n, p] : free_positions) {
            if (cl.region.contains(p))
                throw InvariantError("free node '" + g().node(n).id + "' lies inside a cluster region");
        }
        for (const auto& [other_id, other] : clusters) {
            if (other_id <= id)
                continue;
            if (distance(cl.region.center, other.region.center) <= cl.region.radius + other.region.radius)
                throw InvariantError("cluster regions overlap");
        }
    }
    if (placed != g().node_count())
        throw InvariantError("node partition broken: every node must be free or in one cluster");
}

ClusterId LayoutState::next_cluster_id() const
{
    return clusters.empty() ? 1 : clusters.rbegin()->first + 1;
}

bool operator==(const LayoutState& a, const LayoutState& b)
{
    const bool same_graph = a.graph == b.graph || (a.graph && b.graph && *a.graph == *b.graph);
    return same_graph && a.free_positions == b.free_positions && a.clusters == b.clusters &&
           a.labels == b.labels && a.view == b.view;
}

}  // namespace chordlink
