#pragma once

#include <spdlog/spdlog.h>

namespace chordlink {

/// Library logger on stderr. Level from CHORDLINK_LOG (trace, debug, info, warn, error,
/// critical, off); default warn.
spdlog::logger& log();

}  // namespace chordlink
