#pragma once

#include <stdexcept>
#include <string>

namespace chordlink {

/// Bad user input: malformed files, unknown ids, rejected commands.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A broken internal invariant; the operation is aborted and state is left unchanged.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace chordlink
