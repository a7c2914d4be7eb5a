#pragma once

#include <string>
#include <string_view>

#include "chordlink/error.hpp"
#include "chordlink/graph.hpp"

namespace chordlink {

class GmlError : public InputError {
public:
    GmlError(int line, int column, const std::string& what);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Reads `graph [ node [ id .. label .. ] edge [ source .. target .. weight|value .. ] ]`.
/// Edge weight prefers `weight` over `value` and defaults to 1; labels default to the id.
/// Unrecognized node and edge attributes are kept verbatim. Parallel edges are merged with
/// summed weight; self-loops are rejected.
Graph parse_gml(std::string_view text);

/// Emits a document that parse_gml reads back to an identical graph.
std::string write_gml(const Graph& graph);

}  // namespace chordlink
