#pragma once

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "chordlink/chords.hpp"
#include "chordlink/graph.hpp"
#include "chordlink/merging.hpp"
#include "chordlink/region.hpp"
#include "chordlink/replication.hpp"

namespace chordlink {

struct ClusterStats {
    std::size_t boundary_mismatch = 0;
    std::size_t chi_before = 0;  // chi_cost straight after replication
    std::size_t chi_after = 0;   // chi_cost after permutation
    double alpha = 0.0;          // chord cost of the committed assignment
    double gap = 0.0;
    double min_length = 0.0;
    bool crowded = false;

    friend bool operator==(const ClusterStats&, const ClusterStats&) = default;
};

/// Chord-diagram drawing of one cluster.
///
/// A collapsed cluster keeps this layout untouched (only the flag flips), so expanding
/// restores it verbatim.
struct ClusterLayout {
    Cluster cluster;
    Region region;
    PositionMap anchors;  // original member positions, moved rigidly with the cluster
    std::vector<Copy> copies;
    std::vector<Arc> arcs;
    std::vector<Chord> chords;
    ClusterStats stats;
    bool collapsed = false;

    /// Copy carrying external edge `e`, if any.
    const Copy* attachment(EdgeIndex e) const;
    Point attachment_point(const Copy& c) const
    {
        return on_circle(region.center, region.radius, c.angle);
    }

    friend bool operator==(const ClusterLayout&, const ClusterLayout&) = default;
};

/// Radius of the cluster-node glyph drawn for a collapsed cluster: area grows with member count.
double collapsed_glyph_radius(std::size_t member_count);

enum class LabelMode { All, None, Auto };

struct LabelPolicy {
    LabelMode mode = LabelMode::Auto;
    std::map<NodeIndex, bool> overrides;  // wins over the mode

    friend bool operator==(const LabelPolicy&, const LabelPolicy&) = default;
};

/// Pan/zoom of the viewer; never touches model coordinates.
struct ViewState {
    double zoom = 1.0;
    Point pan;

    friend bool operator==(const ViewState&, const ViewState&) = default;
};

/// The drawing Gamma: free node positions plus the chord diagrams of all clusters.
struct LayoutState {
    std::shared_ptr<const Graph> graph;
    PositionMap free_positions;
    std::map<ClusterId, ClusterLayout> clusters;
    LabelPolicy labels;
    ViewState view;

    const Graph& g() const { return *graph; }
    std::optional<ClusterId> cluster_of(NodeIndex n) const;

    /// Free position, or the member's anchor inside its cluster.
    Point reference_position(NodeIndex n) const;

    /// Reference point for every node, as used by replication.
    PositionMap reference_positions() const;

    /// Drawn endpoints of an edge not internal to a cluster: free position, attachment point
    /// on an expanded cluster, or the center of a collapsed one. nullopt for chord edges.
    std::optional<std::pair<Point, Point>> external_segment(EdgeIndex e) const;

    /// Throws InvariantError on a broken partition, overlapping disks, or a free node inside a
    /// cluster disk.
    void check_invariants() const;

    ClusterId next_cluster_id() const;

    friend bool operator==(const LayoutState& a, const LayoutState& b);
};

}  // namespace chordlink
