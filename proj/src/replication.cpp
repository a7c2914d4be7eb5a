#include "chordlink/replication.hpp"

#include <algorithm>

#include "chordlink/error.hpp"

namespace chordlink {

std::optional<double> truncation_angle(Point neighbor_ref, Point origin_anchor, const Region& region)
{
    auto hit = segment_circle_exit(neighbor_ref, origin_anchor, region.center, region.radius);
    if (!hit)
        return std::nullopt;
    return angle_of(region.center, *hit);
}

std::vector<Copy> replicate(const Graph& graph, const Cluster& cluster, const Region& region,
                            const PositionMap& positions)
{
    struct Placed {
        Copy copy;
        double neighbor_angle;
    };
    std::vector<Placed> placed;

    for (NodeIndex w : cluster.members) {
        const Point anchor = positions.at(w);
        bool extrovert = false;
        for (EdgeIndex e : graph.incident(w)) {
            const NodeIndex u = graph.edge(e).other(w);
            if (cluster.contains(u))
                continue;
            extrovert = true;
            const Point ref = positions.at(u);
            auto angle = truncation_angle(ref, anchor, region);
            if (!angle)
                throw InvariantError("external neighbor '" + graph.node(u).id +
                                     "' does not lie outside the cluster region");
            placed.push_back({Copy{w, *angle, u, e, w, kNoArc}, angle_of(region.center, ref)});
        }
        if (!extrovert) {
            const double a = angle_of(region.center, anchor);
            placed.push_back({Copy{w, a, std::nullopt, std::nullopt, w, kNoArc}, a});
        }
    }

    std::sort(placed.begin(), placed.end(), [](const Placed& a, const Placed& b) {
        if (a.copy.angle != b.copy.angle)
            return a.copy.angle < b.copy.angle;
        if (a.neighbor_angle != b.neighbor_angle)
            return a.neighbor_angle < b.neighbor_angle;
        return a.copy.node < b.copy.node;
    });

    std::vector<Copy> out;
    out.reserve(placed.size());
    for (auto& p : placed) {
        if (!out.empty() && p.copy.angle <= out.back().angle + 1e-12)
            p.copy.angle = out.back().angle + kCoincidentNudge;
        out.push_back(p.copy);
    }
    if (!out.empty() && out.back().angle >= kTwoPi) {
        for (auto& c : out)
            c.angle = normalize_angle(c.angle);
        std::stable_sort(out.begin(), out.end(),
                         [](const Copy& a, const Copy& b) { return a.angle < b.angle; });
    }
    return out;
}

}  // namespace chordlink
