#pragma once

#include <map>
#include <span>

#include "chordlink/geometry.hpp"
#include "chordlink/graph.hpp"

namespace chordlink {

/// Radius of a free node's circle glyph, in layout units.
inline constexpr double kNodeGlyphRadius = 5.0;

using PositionMap = std::map<NodeIndex, Point>;

/// The disk R(C) whose boundary carries a chord diagram.
struct Region {
    Point center;
    double radius = 0.0;

    friend bool operator==(const Region&, const Region&) = default;
    bool contains(Point p) const { return distance(p, center) <= radius; }
};

struct RegionOptions {
    double margin = 1.05;
    /// Floor used when every member sits on the barycenter (singletons, stacked nodes).
    double min_radius = 4.0 * kNodeGlyphRadius;
};

/// Center at the member barycenter; radius is the farthest member distance times `margin`.
/// Throws InputError if a member has no position.
Region fit_region(const PositionMap& positions, std::span<const NodeIndex> members,
                  const RegionOptions& options = {});

/// True if no non-member position lies within distance <= radius of the center.
bool is_circularly_separable(const PositionMap& positions, const Region& region,
                             const Cluster& cluster);

/// Distance a non-member at distance `d` is pushed to: d + R (1 - d / 2R) for d < 2R.
double displaced_distance(double d, double radius);

/// Moves every non-member closer than 2R radially outward so it leaves the disk. Angular
/// coordinates and the radial order around the center are preserved; no-op on nodes at >= 2R.
/// `graph` supplies ids for the deterministic escape ray of a node sitting on the center.
void radial_displace(PositionMap& positions, const Region& region, const Cluster& cluster,
                     const Graph& graph);

}  // namespace chordlink
