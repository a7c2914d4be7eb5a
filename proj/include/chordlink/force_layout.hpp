#pragma once

#include <cstdint>
#include <vector>

#include "chordlink/graph.hpp"
#include "chordlink/region.hpp"

namespace chordlink {

/// Spring-electrical model with a geometric cooling schedule.
struct ForceParams {
    double repulsion = 0.05;     // scales rest_length^2 / d
    double repulsion_range = 3.0;  // in rest lengths; 0 for unbounded
    double rest_length = 50.0;
    double stiffness = 0.3;      // Hooke constant of the springs
    int iterations = 300;
    double cooling = 0.97;       // temperature multiplier per iteration, in (0, 1]
    std::uint64_t seed = 1;

    void validate() const;  // throws InputError
};

/// Per-iteration record used to check that moves respect the temperature.
struct ForceTrace {
    std::vector<double> temperature;
    std::vector<double> max_displacement;
};

/// Deterministic for fixed parameters. Components are laid out independently and packed in
/// rows; the drawing is centered on the origin. Distinct nodes end up at least
/// 2 * kNodeGlyphRadius apart.
PositionMap force_layout(const Graph& graph, const ForceParams& params, ForceTrace* trace = nullptr);

}  // namespace chordlink
