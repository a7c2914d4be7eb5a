#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "chordlink/layout_state.hpp"

namespace chordlink {

inline constexpr std::size_t kThicknessClasses = 5;

/// Thickness class in [0, 4] of every edge, from the mid-rank quantile of its weight among all
/// edge weights. Equal weights share a class; all-equal weights land in the middle class.
std::vector<std::size_t> thickness_classes(std::span<const double> weights);

/// Stroke width for a thickness class.
double stroke_width(std::size_t thickness_class);

/// Quadratic curve control point that bows a chord toward the region center with a sagitta of
/// 15% of the chord length (never past the center).
Point chord_control_point(Point from, Point to, Point center);

/// SVG 1.1 drawing of the state. Chords carry `data-from-angle` / `data-to-angle` attributes
/// and a linear gradient between the colors of their end arcs.
std::string export_svg(const LayoutState& state, const LabelPolicy& labels);
inline std::string export_svg(const LayoutState& state) { return export_svg(state, state.labels); }

}  // namespace chordlink
