#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "chordlink/layout_state.hpp"

namespace chordlink {

inline constexpr int kLayoutDocumentVersion = 1;

/// JSON form of a LayoutState. Angles are radians, CCW from the positive x-axis; arc
/// intervals run from `start_angle` to `end_angle` with `end_angle` possibly above 2pi.
nlohmann::json layout_to_json(const LayoutState& state);

/// Throws InputError on schema-version mismatch, unknown ids, or a state that breaks the
/// layout invariants.
LayoutState layout_from_json(const nlohmann::json& doc);

const char* label_mode_name(LabelMode mode);
/// Throws InputError on anything but "all", "none" or "auto".
LabelMode parse_label_mode(const std::string& name);

/// Serialized text: two-space indented JSON with a trailing newline.
std::string write_layout(const LayoutState& state);
std::string dump_document(const nlohmann::json& doc);
LayoutState read_layout(std::string_view text);

}  // namespace chordlink
