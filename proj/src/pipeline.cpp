#include "chordlink/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string_view>

#include "chordlink/error.hpp"
#include "chordlink/log.hpp"

namespace chordlink {

namespace {

ChordSet select_chords(const Graph& graph, std::span<const Arc> arcs, std::span<const EdgeIndex> edges,
                       ChordStrategy strategy)
{
    return strategy == ChordStrategy::Oracle ? brute_force_chord_oracle(graph, arcs, edges)
                                             : greedy_insert(graph, arcs, edges);
}

std::uint64_t id_hash(std::string_view s)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

double clamp_to_arc(double angle, const Arc& arc)
{
    if (arc.covers(angle, 0.0))
        return angle;
    const double to_start = ccw_delta(angle, arc.start);
    const double from_end = ccw_delta(arc.end, angle);
    return to_start <= from_end ? arc.start : normalize_angle(arc.end);
}

bool disks_overlap(const Region& a, const Region& b)
{
    return distance(a.center, b.center) <= a.radius + b.radius;
}

const ClusterLayout& find_cluster(const LayoutState& state, ClusterId id)
{
    auto it = state.clusters.find(id);
    if (it == state.clusters.end())
        throw InputError("unknown cluster " + std::to_string(id));
    return it->second;
}

}  // namespace

ClusterLayout build_cluster_layout(const Graph& graph, const Cluster& cluster, const Region& region,
                                   const PositionMap& positions, const PipelineOptions& options)
{
    ClusterLayout out;
    out.cluster = cluster;
    out.region = region;
    for (NodeIndex n : cluster.members)
        out.anchors.emplace(n, positions.at(n));

    std::vector<Copy> replicated = replicate(graph, cluster, region, positions);
    out.stats.chi_before = chi_cost(replicated);
    const auto groups = build_groups(replicated);
    PermutationResult perm = permute_groups(graph, replicated, groups, options.permutation);
    out.copies = std::move(perm.copies);
    out.stats.boundary_mismatch = perm.boundary_mismatch_cost;
    out.stats.chi_after = chi_cost(out.copies);

    const auto internal = induced_edges(graph, cluster);
    std::map<NodeIndex, double> internal_degree;
    for (EdgeIndex e : internal) {
        internal_degree[graph.edge(e).source] += 1.0;
        internal_degree[graph.edge(e).target] += 1.0;
    }

    // First pass spreads each node's internal degree evenly over its runs; the second pass
    // uses the in-degrees produced by the first chord assignment.
    const auto runs = find_runs(out.copies);
    std::map<NodeIndex, double> runs_of;
    for (const Run& r : runs)
        runs_of[r.node] += 1.0;
    std::vector<double> hint;
    for (const Run& r : runs)
        hint.push_back(internal_degree[r.node] / runs_of[r.node]);
    const MergeResult first = merge_runs(out.copies, hint, options.merge);
    const ChordSet first_chords = select_chords(graph, first.arcs, internal, options.chords);

    std::vector<double> in_deg;
    for (const auto& inc : first_chords.incidence)
        in_deg.push_back(static_cast<double>(inc.size()));
    MergeResult merged = merge_runs(out.copies, in_deg, options.merge);
    const ChordSet chords = select_chords(graph, merged.arcs, internal, options.chords);

    out.arcs = std::move(merged.arcs);
    for (std::size_t i = 0; i < out.arcs.size(); ++i)
        out.arcs[i].in_deg = chords.incidence[i].size();
    assign_colors(graph, out.arcs);
    out.chords = distribute_endpoints(chords, out.arcs);
    out.stats.alpha = chords.cost;
    out.stats.gap = merged.gap;
    out.stats.min_length = merged.min_length;
    out.stats.crowded = merged.crowded;
    for (const std::string& w : merged.warnings)
        log().warn("cluster {}: {}", cluster.id, w);
    return out;
}

LayoutState select_cluster(const LayoutState& state, std::span<const NodeIndex> nodes,
                           const PipelineOptions& options, ClusterId* created)
{
    if (nodes.empty())
        throw InputError("empty selection");
    const Graph& graph = state.g();
    Cluster cluster{state.next_cluster_id(), {nodes.begin(), nodes.end()}};
    std::sort(cluster.members.begin(), cluster.members.end());
    if (std::adjacent_find(cluster.members.begin(), cluster.members.end()) != cluster.members.end())
        throw InputError("duplicate node in selection");
    for (NodeIndex n : cluster.members) {
        if (n >= graph.node_count())
            throw InputError("selected node out of range");
        if (!state.free_positions.contains(n))
            throw InputError("node '" + graph.node(n).id + "' is already clustered");
    }

    const Region region = fit_region(state.free_positions, cluster.members, options.region);
    for (const auto& [id, other] : state.clusters) {
        if (disks_overlap(region, other.region))
            throw InputError("selection region overlaps cluster " + std::to_string(id));
    }

    LayoutState next = state;
    std::set<NodeIndex> moved;
    if (!is_circularly_separable(next.free_positions, region, cluster)) {
        radial_displace(next.free_positions, region, cluster, graph);
        for (const auto& [n, p] : next.free_positions) {
            if (p != state.free_positions.at(n))
                moved.insert(n);
        }
        for (NodeIndex n : moved) {
            for (const auto& [id, other] : next.clusters) {
                if (other.region.contains(next.free_positions.at(n)))
                    throw InputError("displacing node '" + graph.node(n).id + "' would push it into cluster " +
                                     std::to_string(id));
            }
        }
    }

    ClusterLayout layout =
        build_cluster_layout(graph, cluster, region, next.reference_positions(), options);
    for (NodeIndex n : cluster.members)
        next.free_positions.erase(n);
    next.clusters.emplace(cluster.id, std::move(layout));
    retruncate(next, moved, {});
    next.check_invariants();
    if (created)
        *created = cluster.id;
    return next;
}

std::vector<NodeIndex> nodes_in_rectangle(const LayoutState& state, Point a, Point b)
{
    const double x0 = std::min(a.x, b.x), x1 = std::max(a.x, b.x);
    const double y0 = std::min(a.y, b.y), y1 = std::max(a.y, b.y);
    std::vector<NodeIndex> out;
    for (const auto& [n, p] : state.free_positions) {
        if (p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1)
            out.push_back(n);
    }
    return out;
}

std::vector<NodeIndex> nodes_in_lasso(const LayoutState& state, std::span<const Point> polygon)
{
    std::vector<NodeIndex> out;
    for (const auto& [n, p] : state.free_positions) {
        if (point_in_polygon(p, polygon))
            out.push_back(n);
    }
    return out;
}

LayoutState add_node_to_cluster(const LayoutState& state, ClusterId id, NodeIndex node,
                                const PipelineOptions& options)
{
    const ClusterLayout& current = find_cluster(state, id);
    if (current.collapsed)
        throw InputError("cluster " + std::to_string(id) + " is collapsed");
    const Graph& graph = state.g();
    if (node >= graph.node_count())
        throw InputError("node out of range");
    if (!state.free_positions.contains(node))
        throw InputError("node '" + graph.node(node).id + "' is already clustered");

    Cluster cluster = current.cluster;
    cluster.members.insert(std::upper_bound(cluster.members.begin(), cluster.members.end(), node), node);

    // The drop position is discarded; the newcomer sits just off the center on a ray fixed by
    // its id, so its copies face its external neighbors.
    const double a = static_cast<double>(id_hash(graph.node(node).id) % 1000003ULL) / 1000003.0 * kTwoPi;
    const Point anchor = on_circle(current.region.center, 1e-3 * current.region.radius, a);

    LayoutState next = state;
    next.free_positions.erase(node);
    PositionMap positions = next.reference_positions();
    positions[node] = anchor;
    next.clusters[id] = build_cluster_layout(graph, cluster, current.region, positions, options);
    retruncate(next, {node}, {});
    next.check_invariants();
    return next;
}

LayoutState remove_cluster(const LayoutState& state, ClusterId id)
{
    const ClusterLayout& cl = find_cluster(state, id);
    LayoutState next = state;
    for (const auto& [n, p] : cl.anchors)
        next.free_positions.emplace(n, p);
    next.clusters.erase(id);
    next.check_invariants();
    return next;
}

LayoutState collapse(const LayoutState& state, ClusterId id)
{
    if (find_cluster(state, id).collapsed)
        throw InputError("cluster " + std::to_string(id) + " is already collapsed");
    LayoutState next = state;
    next.clusters.at(id).collapsed = true;
    return next;
}

LayoutState expand(const LayoutState& state, ClusterId id)
{
    if (!find_cluster(state, id).collapsed)
        throw InputError("cluster " + std::to_string(id) + " is not collapsed");
    LayoutState next = state;
    next.clusters.at(id).collapsed = false;
    return next;
}

LayoutState move_node(const LayoutState& state, NodeIndex node, Point to)
{
    const Graph& graph = state.g();
    if (node >= graph.node_count())
        throw InputError("node out of range");
    if (!state.free_positions.contains(node))
        throw InputError("node '" + graph.node(node).id + "' belongs to a cluster; move the cluster instead");
    if (!std::isfinite(to.x) || !std::isfinite(to.y))
        throw InputError("non-finite position");
    for (const auto& [id, cl] : state.clusters) {
        if (cl.region.contains(to))
            throw InputError("target position lies inside cluster " + std::to_string(id));
    }
    LayoutState next = state;
    next.free_positions[node] = to;
    retruncate(next, {node}, {});
    next.check_invariants();
    return next;
}

LayoutState move_cluster(const LayoutState& state, ClusterId id, Point delta)
{
    find_cluster(state, id);
    if (!std::isfinite(delta.x) || !std::isfinite(delta.y))
        throw InputError("non-finite displacement");
    LayoutState next = state;
    ClusterLayout& cl = next.clusters.at(id);
    cl.region.center = cl.region.center + delta;
    for (auto& [n, p] : cl.anchors)
        p = p + delta;
    for (const auto& [n, p] : next.free_positions) {
        if (cl.region.contains(p))
            throw InputError("moved cluster would cover node '" + next.g().node(n).id + "'");
    }
    for (const auto& [other_id, other] : next.clusters) {
        if (other_id != id && disks_overlap(cl.region, other.region))
            throw InputError("moved cluster would overlap cluster " + std::to_string(other_id));
    }
    retruncate(next, {}, {id});
    next.check_invariants();
    return next;
}

void retruncate(LayoutState& state, const std::set<NodeIndex>& moved,
                const std::set<ClusterId>& moved_clusters)
{
    if (moved.empty() && moved_clusters.empty())
        return;
    std::map<NodeIndex, ClusterId> owner;
    for (const auto& [id, cl] : state.clusters)
        for (NodeIndex n : cl.cluster.members)
            owner.emplace(n, id);

    for (auto& [id, cl] : state.clusters) {
        if (cl.collapsed)
            continue;
        const bool whole = moved_clusters.contains(id);
        for (Copy& c : cl.copies) {
            if (!c.neighbor)
                continue;
            const NodeIndex u = *c.neighbor;
            auto o = owner.find(u);
            const bool affected = whole || moved.contains(u) ||
                                  (o != owner.end() && moved_clusters.contains(o->second));
            if (!affected)
                continue;
            auto angle = truncation_angle(state.reference_position(u), cl.anchors.at(c.origin), cl.region);
            if (angle)
                c.angle = clamp_to_arc(*angle, cl.arcs.at(c.arc));
        }
    }
}

std::size_t label_degree_threshold(std::size_t max_degree, double zoom)
{
    if (zoom >= 1.0)
        return 0;
    const double t = std::clamp(std::log(zoom / kMinZoom) / std::log(1.0 / kMinZoom), 0.0, 1.0);
    return static_cast<std::size_t>(std::ceil((1.0 - t) * static_cast<double>(max_degree) - 1e-9));
}

std::set<NodeIndex> visible_labels(const LayoutState& state, const LabelPolicy& policy, double zoom)
{
    const Graph& graph = state.g();
    std::size_t max_degree = 0;
    for (NodeIndex n = 0; n < graph.node_count(); ++n)
        max_degree = std::max(max_degree, graph.degree(n));
    const std::size_t threshold = label_degree_threshold(max_degree, zoom);
    std::set<NodeIndex> out;
    for (NodeIndex n = 0; n < graph.node_count(); ++n) {
        bool show = false;
        switch (policy.mode) {
        case LabelMode::All: show = true; break;
        case LabelMode::None: show = false; break;
        case LabelMode::Auto: show = graph.degree(n) >= threshold; break;
        }
        if (auto it = policy.overrides.find(n); it != policy.overrides.end())
            show = it->second;
        if (show)
            out.insert(n);
    }
    return out;
}

}  // namespace chordlink
