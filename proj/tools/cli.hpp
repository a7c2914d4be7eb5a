#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chordlink {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInvariant = 3;

/// Entry point of the `chordlink` tool. `args` excludes the program name. Documents and SVG go
/// to `--out` or `out`; diagnostics to `err`. `in` feeds `serve` without a port and `-` inputs.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace chordlink
