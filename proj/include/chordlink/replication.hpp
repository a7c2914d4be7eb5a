#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "chordlink/graph.hpp"
#include "chordlink/region.hpp"

namespace chordlink {

inline constexpr std::size_t kNoArc = std::numeric_limits<std::size_t>::max();

/// One boundary occurrence of a cluster member.
///
/// The slot (angle, origin) is fixed by the geometry of replication: the external edge from
/// `neighbor` to `origin` crosses the circle at `angle`. Permutation may hand the slot to
/// another member attached to the same neighbor, so `node` and `edge` can differ from the
/// replication output while the slot stays put.
struct Copy {
    NodeIndex node = 0;
    double angle = 0.0;
    std::optional<NodeIndex> neighbor;
    std::optional<EdgeIndex> edge;
    NodeIndex origin = 0;
    std::size_t arc = kNoArc;

    bool introvert() const { return !neighbor.has_value(); }
    friend bool operator==(const Copy&, const Copy&) = default;
};

/// Angular separation applied to copies that land on the same boundary point.
inline constexpr double kCoincidentNudge = 1e-4;

/// Places the boundary copies of `cluster` and returns them sorted by angle.
///
/// `positions` holds the reference point of every node involved: members at their original
/// (anchor) position, external neighbors at their free position or their own cluster anchor.
/// Throws InvariantError if an external neighbor lies inside the disk.
std::vector<Copy> replicate(const Graph& graph, const Cluster& cluster, const Region& region,
                            const PositionMap& positions);

/// Boundary point of the external segment `neighbor_ref -> origin_anchor`, as an angle.
std::optional<double> truncation_angle(Point neighbor_ref, Point origin_anchor, const Region& region);

}  // namespace chordlink
