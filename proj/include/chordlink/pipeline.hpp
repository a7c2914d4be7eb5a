#pragma once

#include <set>
#include <span>
#include <vector>

#include "chordlink/layout_state.hpp"
#include "chordlink/merging.hpp"
#include "chordlink/permutation.hpp"
#include "chordlink/region.hpp"

namespace chordlink {

enum class ChordStrategy { Greedy, Oracle };

struct PipelineOptions {
    PermutationStrategy permutation = PermutationStrategy::Dp;
    ChordStrategy chords = ChordStrategy::Greedy;
    RegionOptions region;
    MergeOptions merge;
};

/// Builds the chord diagram of `cluster` on a fixed region: replication, permutation, merging,
/// chord selection and endpoint distribution. `positions` must hold reference points for every
/// member and every external neighbor.
ClusterLayout build_cluster_layout(const Graph& graph, const Cluster& cluster, const Region& region,
                                   const PositionMap& positions, const PipelineOptions& options);

/// Turns free nodes into a new cluster. When the fitted disk contains other free nodes they
/// are pushed out radially first; otherwise nothing outside the disk moves.
LayoutState select_cluster(const LayoutState& state, std::span<const NodeIndex> nodes,
                           const PipelineOptions& options, ClusterId* created = nullptr);

/// Free nodes inside an axis-aligned rectangle (any corner order).
std::vector<NodeIndex> nodes_in_rectangle(const LayoutState& state, Point a, Point b);
/// Free nodes inside a closed polygon.
std::vector<NodeIndex> nodes_in_lasso(const LayoutState& state, std::span<const Point> polygon);

/// Rebuilds the cluster with one more member while keeping its region.
LayoutState add_node_to_cluster(const LayoutState& state, ClusterId id, NodeIndex node,
                                const PipelineOptions& options);

/// Dissolves a cluster; members return to their anchors as free nodes.
LayoutState remove_cluster(const LayoutState& state, ClusterId id);

LayoutState collapse(const LayoutState& state, ClusterId id);
LayoutState expand(const LayoutState& state, ClusterId id);

/// Moves a free node. External edges into clusters are re-truncated toward it.
LayoutState move_node(const LayoutState& state, NodeIndex node, Point to);

/// Rigid translation of a cluster. Arc and chord angles are unchanged.
LayoutState move_cluster(const LayoutState& state, ClusterId id, Point delta);

/// Recomputes the boundary point of every external edge attached to an expanded cluster whose
/// segment touches one of `moved` (or every attachment of a cluster in `moved_clusters`).
/// Each point stays inside its arc.
void retruncate(LayoutState& state, const std::set<NodeIndex>& moved,
                const std::set<ClusterId>& moved_clusters);

inline constexpr double kMinZoom = 0.1;

/// Degree threshold of the automatic label policy at a zoom level: 0 at zoom >= 1, rising
/// linearly in log-zoom to the maximum degree at kMinZoom.
std::size_t label_degree_threshold(std::size_t max_degree, double zoom);

std::set<NodeIndex> visible_labels(const LayoutState& state, const LabelPolicy& policy, double zoom);

}  // namespace chordlink
