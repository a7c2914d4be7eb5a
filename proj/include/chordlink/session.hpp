#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "chordlink/force_layout.hpp"
#include "chordlink/layout_state.hpp"
#include "chordlink/pipeline.hpp"

namespace chordlink {

struct SessionOptions {
    PipelineOptions pipeline;
    ForceParams force;
};

/// Single-writer command processor over one LayoutState.
///
/// Commands are JSON objects with a `command` member:
///   load              {gml | path, seed?, iterations?}
///   load_layout       {document}
///   run_layout        {seed?, iterations?}            only while no cluster exists
///   select_cluster    {nodes | rectangle: [p, q] | lasso: [p, ...], permutation?, chords?}
///   add_node_to_cluster {cluster, node}
///   remove_cluster | collapse | expand   {cluster}
///   move_node         {node, x, y}
///   move_cluster      {cluster, dx, dy}
///   set_label_policy  {mode, overrides?: {id: bool}}
///   set_view          {zoom, pan?: [x, y]}
///   snapshot | render | shutdown
/// Every accepted command yields one event: `{"type": "state", "seq", "command", "document"}`,
/// `{"type": "svg", ...}` for render, `{"type": "shutdown", ...}`; a rejected one yields
/// `{"type": "error", "seq", "kind", "message"}` and leaves the state untouched.
class Session {
public:
    explicit Session(SessionOptions options = {});

    /// Throws InputError / InvariantError; the state is unchanged on failure.
    nlohmann::json apply(const nlohmann::json& command);

    /// Never throws: parse failures and rejected commands become error events.
    nlohmann::json handle(std::string_view message);

    const LayoutState& state() const { return state_; }
    const SessionOptions& options() const { return options_; }
    bool finished() const { return finished_; }

private:
    nlohmann::json state_event(const std::string& command) const;
    void commit(LayoutState next);

    SessionOptions options_;
    LayoutState state_;
    std::uint64_t seq_ = 0;
    bool finished_ = false;
};

/// Frames are `<byte count>\n<payload>`. Returns nullopt at a clean end of stream; throws
/// InputError on a malformed header or a truncated payload.
std::optional<std::string> read_frame(std::istream& in);
void write_frame(std::ostream& out, std::string_view payload);

/// Processes frames until shutdown or end of input. Events are written compact, one per frame.
void serve_stream(Session& session, std::istream& in, std::ostream& out);

/// Listens on 127.0.0.1:port (0 picks a free port) and serves one connection at a time until a
/// shutdown command. `on_listening` receives the bound port. Throws InputError when the port
/// is taken.
void serve_tcp(Session& session, std::uint16_t port,
               const std::function<void(std::uint16_t)>& on_listening = {});

}  // namespace chordlink
