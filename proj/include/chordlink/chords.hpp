#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "chordlink/graph.hpp"
#include "chordlink/merging.hpp"

namespace chordlink {

/// A possible chord for an intra-cluster edge, between the midpoints of two arcs.
/// `from_arc` belongs to the edge's source node.
struct ChordCandidate {
    EdgeIndex edge = 0;
    std::size_t from_arc = 0;
    std::size_t to_arc = 0;
    double from_angle = 0.0;
    double to_angle = 0.0;

    friend bool operator==(const ChordCandidate&, const ChordCandidate&) = default;
};

/// True iff the endpoint pairs strictly interleave around the circle.
bool chords_cross(double a1, double a2, double b1, double b2);
/// Chords sharing an arc never cross.
bool chords_cross(const ChordCandidate& a, const ChordCandidate& b);

/// Smallest angle between the two straight chords, in [0, pi/2].
double crossing_angle(const ChordCandidate& a, const ChordCandidate& b);

/// 0 when the chords do not cross, else 1 - theta / pi with theta the crossing angle.
double pair_cost(const ChordCandidate& a, const ChordCandidate& b);

/// Sum of pair_cost over all unordered pairs, computed from scratch.
double total_cost(std::span<const ChordCandidate> chords);
std::size_t crossing_count(std::span<const ChordCandidate> chords);

struct ChordSet {
    std::vector<ChordCandidate> chords;  // one per edge, in commit order
    double cost = 0.0;                   // maintained incrementally
    std::vector<std::vector<std::size_t>> incidence;  // per arc: indices into `chords`
};

/// Candidate chords of `edge`, ordered by (from-arc start angle, to-arc start angle).
std::vector<ChordCandidate> candidates_for(const Graph& graph, std::span<const Arc> arcs, EdgeIndex edge);

/// Edges with a single candidate first (ascending id), then repeatedly the candidate whose
/// insertion increases the cost least. Ties go to the smallest (edge id, from-arc start,
/// to-arc start). Throws InvariantError if an edge has no candidate.
ChordSet greedy_insert(const Graph& graph, std::span<const Arc> arcs, std::span<const EdgeIndex> edges);

/// Exhaustive minimum over all representative choices. Throws InputError when the number of
/// assignments exceeds `limit`.
ChordSet brute_force_chord_oracle(const Graph& graph, std::span<const Arc> arcs,
                                  std::span<const EdgeIndex> edges, std::size_t limit = 10'000'000);

/// Every edge takes its first candidate.
ChordSet first_candidate_assignment(const Graph& graph, std::span<const Arc> arcs,
                                    std::span<const EdgeIndex> edges);

/// Final chord with endpoints spread inside its arcs.
struct Chord {
    EdgeIndex edge = 0;
    std::size_t from_arc = 0;
    std::size_t to_arc = 0;
    double from_angle = 0.0;
    double to_angle = 0.0;

    friend bool operator==(const Chord&, const Chord&) = default;
};

/// k chords on one arc sit at i/(k+1) of its span, i = 1..k, ordered so that chords sharing
/// the arc do not cross each other. Output follows the order of `set.chords`.
std::vector<Chord> distribute_endpoints(const ChordSet& set, std::span<const Arc> arcs);

/// Segment-intersection count of distributed chords drawn straight on a unit circle.
std::size_t geometric_crossing_count(std::span<const Chord> chords);

}  // namespace chordlink
