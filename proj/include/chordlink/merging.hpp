#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "chordlink/geometry.hpp"
#include "chordlink/graph.hpp"
#include "chordlink/replication.hpp"

namespace chordlink {

/// Maximal stretch of consecutive copies of one node along the boundary.
struct Run {
    NodeIndex node = 0;
    std::size_t first = 0;  // copy index of the run start
    std::size_t last = 0;   // copy index of the run end (may wrap past the sequence end)
    std::size_t size = 0;
};

/// Circular arc c_w on the region boundary. `start` is in [0, 2pi) and the arc extends CCW
/// to `end = start + span`, so `end` may exceed 2pi.
struct Arc {
    NodeIndex node = 0;
    double start = 0.0;
    double end = 0.0;
    std::size_t first_copy = 0;
    std::size_t last_copy = 0;
    std::size_t in_deg = 0;
    std::string color;

    double span() const { return end - start; }
    double midpoint() const { return normalize_angle(start + 0.5 * span()); }
    bool covers(double angle, double eps = 1e-12) const
    {
        return angle_in_interval(angle, start, span(), eps);
    }
    friend bool operator==(const Arc&, const Arc&) = default;
};

struct MergeOptions {
    double gap = 2.0 * std::numbers::pi / 180.0;
    double min_length = 4.0 * std::numbers::pi / 180.0;
    /// Virtual weight given to arcs without chords so they keep a visible share.
    double zero_degree_weight = 0.5;
};

struct MergeResult {
    std::vector<Arc> arcs;  // boundary order, one per run
    double gap = 0.0;         // effective gap (shrunk on crowded circles)
    double min_length = 0.0;  // effective minimum length (shrunk when infeasible)
    bool crowded = false;
    std::vector<std::string> warnings;
};

/// Runs in boundary order, starting at a run boundary (or at copy 0 if there is only one run).
std::vector<Run> find_runs(std::span<const Copy> copies);

/// Replaces each run by an arc covering its copies and splits the free span between
/// neighboring runs so that arc lengths follow `run_weight` (in-degree estimates, one per run
/// in find_runs order). Sets `arc` on every copy.
MergeResult merge_runs(std::vector<Copy>& copies, std::span<const double> run_weight,
                       const MergeOptions& options = {});

/// One color per distinct node, identical across all of its arcs. Hues step by the golden
/// angle in node id order. Also writes the color into each arc.
std::map<NodeIndex, std::string> assign_colors(const Graph& graph, std::vector<Arc>& arcs);

/// Hue in degrees of the k-th color handed out by assign_colors.
double palette_hue(std::size_t k);

}  // namespace chordlink
