#include "chordlink/session.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <streambuf>
#include <vector>

#include "chordlink/log.hpp"

#include "chordlink/error.hpp"
#include "chordlink/gml.hpp"
#include "chordlink/layout_document.hpp"
#include "chordlink/svg_export.hpp"

namespace chordlink {

using nlohmann::json;

namespace {

LayoutState empty_state()
{
    LayoutState s;
    s.graph = std::make_shared<const Graph>();
    return s;
}

const json& field(const json& cmd, const char* name)
{
    if (!cmd.contains(name))
        throw InputError(std::string("missing field '") + name + "'");
    return cmd.at(name);
}

std::string id_text(const json& j)
{
    if (j.is_string())
        return j.get<std::string>();
    if (j.is_number_integer())
        return std::to_string(j.get<long long>());
    throw InputError("node ids must be strings or integers");
}

NodeIndex node_of(const LayoutState& s, const json& j) { return s.g().index_of(id_text(j)); }

ClusterId cluster_of(const json& j)
{
    if (!j.is_number_unsigned())
        throw InputError("cluster ids must be non-negative integers");
    return j.get<ClusterId>();
}

Point point_of(const json& j)
{
    if (!j.is_array() || j.size() != 2)
        throw InputError("points are [x, y] arrays");
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

PermutationStrategy permutation_of(const std::string& s)
{
    if (s == "dp")
        return PermutationStrategy::Dp;
    if (s == "oracle")
        return PermutationStrategy::Oracle;
    if (s == "none")
        return PermutationStrategy::None;
    throw InputError("unknown permutation strategy '" + s + "'");
}

ChordStrategy chords_of(const std::string& s)
{
    if (s == "greedy")
        return ChordStrategy::Greedy;
    if (s == "oracle")
        return ChordStrategy::Oracle;
    throw InputError("unknown chord strategy '" + s + "'");
}

ForceParams force_of(const json& cmd, ForceParams p)
{
    if (cmd.contains("seed"))
        p.seed = cmd.at("seed").get<std::uint64_t>();
    if (cmd.contains("iterations"))
        p.iterations = cmd.at("iterations").get<int>();
    p.validate();
    return p;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

Session::Session(SessionOptions options) : options_(std::move(options)), state_(empty_state()) {}

json Session::state_event(const std::string& command) const
{
    return {{"type", "state"}, {"seq", seq_}, {"command", command}, {"document", layout_to_json(state_)}};
}

void Session::commit(LayoutState next)
{
    next.check_invariants();
    // Pass through the document form so that served and batch states are identical.
    state_ = layout_from_json(layout_to_json(next));
}

json Session::apply(const json& cmd)
{
    if (finished_)
        throw InputError("session has shut down");
    if (!cmd.is_object())
        throw InputError("command must be a JSON object");
    const std::string name = field(cmd, "command").get<std::string>();
    ++seq_;
    try {
        if (name == "load") {
            std::string text = cmd.contains("gml") ? cmd.at("gml").get<std::string>()
                                                   : read_file(field(cmd, "path").get<std::string>());
            LayoutState next = empty_state();
            next.graph = std::make_shared<const Graph>(parse_gml(text));
            next.free_positions = force_layout(*next.graph, force_of(cmd, options_.force));
            commit(std::move(next));
        } else if (name == "load_layout") {
            state_ = layout_from_json(field(cmd, "document"));
        } else if (name == "run_layout") {
            if (!state_.clusters.empty())
                throw InputError("run_layout needs a state without clusters");
            LayoutState next = state_;
            next.free_positions = force_layout(next.g(), force_of(cmd, options_.force));
            commit(std::move(next));
        } else if (name == "select_cluster") {
            PipelineOptions opts = options_.pipeline;
            if (cmd.contains("permutation"))
                opts.permutation = permutation_of(cmd.at("permutation").get<std::string>());
            if (cmd.contains("chords"))
                opts.chords = chords_of(cmd.at("chords").get<std::string>());
            std::vector<NodeIndex> nodes;
            if (cmd.contains("nodes")) {
                for (const json& j : cmd.at("nodes"))
                    nodes.push_back(node_of(state_, j));
            } else if (cmd.contains("rectangle")) {
                const json& r = cmd.at("rectangle");
                if (!r.is_array() || r.size() != 2)
                    throw InputError("rectangle is [[x, y], [x, y]]");
                nodes = nodes_in_rectangle(state_, point_of(r.at(0)), point_of(r.at(1)));
            } else if (cmd.contains("lasso")) {
                std::vector<Point> poly;
                for (const json& j : cmd.at("lasso"))
                    poly.push_back(point_of(j));
                if (poly.size() < 3)
                    throw InputError("lasso needs at least three points");
                nodes = nodes_in_lasso(state_, poly);
            } else {
                throw InputError("select_cluster needs nodes, rectangle or lasso");
            }
            commit(select_cluster(state_, nodes, opts));
        } else if (name == "add_node_to_cluster") {
            commit(add_node_to_cluster(state_, cluster_of(field(cmd, "cluster")), node_of(state_, field(cmd, "node")),
                                       options_.pipeline));
        } else if (name == "remove_cluster") {
            commit(remove_cluster(state_, cluster_of(field(cmd, "cluster"))));
        } else if (name == "collapse") {
            commit(collapse(state_, cluster_of(field(cmd, "cluster"))));
        } else if (name == "expand") {
            commit(expand(state_, cluster_of(field(cmd, "cluster"))));
        } else if (name == "move_node") {
            const Point to{field(cmd, "x").get<double>(), field(cmd, "y").get<double>()};
            commit(move_node(state_, node_of(state_, field(cmd, "node")), to));
        } else if (name == "move_cluster") {
            const Point d{field(cmd, "dx").get<double>(), field(cmd, "dy").get<double>()};
            commit(move_cluster(state_, cluster_of(field(cmd, "cluster")), d));
        } else if (name == "set_label_policy") {
            LayoutState next = state_;
            next.labels.mode = parse_label_mode(field(cmd, "mode").get<std::string>());
            next.labels.overrides.clear();
            if (cmd.contains("overrides"))
                for (const auto& [id, show] : cmd.at("overrides").items())
                    next.labels.overrides[next.g().index_of(id)] = show.get<bool>();
            commit(std::move(next));
        } else if (name == "set_view") {
            LayoutState next = state_;
            const double zoom = field(cmd, "zoom").get<double>();
            if (!(zoom > 0.0))
                throw InputError("zoom must be positive");
            next.view.zoom = zoom;
            if (cmd.contains("pan"))
                next.view.pan = point_of(cmd.at("pan"));
            commit(std::move(next));
        } else if (name == "snapshot") {
        } else if (name == "render") {
            return {{"type", "svg"}, {"seq", seq_}, {"command", name}, {"svg", export_svg(state_)}};
        } else if (name == "shutdown") {
            finished_ = true;
            return {{"type", "shutdown"}, {"seq", seq_}, {"command", name}};
        } else {
            throw InputError("unknown command '" + name + "'");
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("bad command field: ") + e.what());
    }
    return state_event(name);
}

json Session::handle(std::string_view message)
{
    auto error = [&](const char* kind, const std::string& what) {
        log().warn("{} error: {}", kind, what);
        return json{{"type", "error"}, {"seq", seq_}, {"kind", kind}, {"message", what}};
    };
    json cmd;
    try {
        cmd = json::parse(message);
    } catch (const json::exception& e) {
        ++seq_;
        return error("input", std::string("malformed message: ") + e.what());
    }
    const std::uint64_t before = seq_;
    try {
        return apply(cmd);
    } catch (const InvariantError& e) {
        seq_ = before + 1;
        return error("invariant", e.what());
    } catch (const std::exception& e) {
        seq_ = before + 1;
        return error("input", e.what());
    }
}

std::optional<std::string> read_frame(std::istream& in)
{
    std::string header;
    if (!std::getline(in, header))
        return std::nullopt;
    if (!header.empty() && header.back() == '\r')
        header.pop_back();
    if (header.empty() || header.find_first_not_of("0123456789") != std::string::npos || header.size() > 12)
        throw InputError("malformed frame header '" + header + "'");
    const std::size_t n = std::stoull(header);
    std::string payload(n, '\0');
    if (n > 0 && !in.read(payload.data(), static_cast<std::streamsize>(n)))
        throw InputError("truncated frame");
    return payload;
}

void write_frame(std::ostream& out, std::string_view payload)
{
    out << payload.size() << '\n' << payload;
    out.flush();
}

void serve_stream(Session& session, std::istream& in, std::ostream& out)
{
    while (!session.finished()) {
        std::optional<std::string> frame;
        try {
            frame = read_frame(in);
        } catch (const InputError& e) {
            // Unsynchronized stream: report and stop reading.
            write_frame(out, json{{"type", "error"}, {"seq", 0}, {"kind", "input"}, {"message", e.what()}}.dump());
            return;
        }
        if (!frame)
            return;
        write_frame(out, session.handle(*frame).dump());
    }
}

namespace {

class FdBuf : public std::streambuf {
public:
    explicit FdBuf(int fd) : fd_(fd), in_(4096), out_(4096)
    {
        setg(in_.data(), in_.data(), in_.data());
        setp(out_.data(), out_.data() + out_.size());
    }
    ~FdBuf() override { sync(); }

protected:
    int_type underflow() override
    {
        ssize_t n;
        do {
            n = ::read(fd_, in_.data(), in_.size());
        } while (n < 0 && errno == EINTR);
        if (n <= 0)
            return traits_type::eof();
        setg(in_.data(), in_.data(), in_.data() + n);
        return traits_type::to_int_type(in_[0]);
    }
    int_type overflow(int_type c) override
    {
        if (sync() != 0)
            return traits_type::eof();
        if (!traits_type::eq_int_type(c, traits_type::eof())) {
            *pptr() = traits_type::to_char_type(c);
            pbump(1);
        }
        return traits_type::not_eof(c);
    }
    int sync() override
    {
        const char* p = pbase();
        while (p < pptr()) {
            const ssize_t n = ::send(fd_, p, static_cast<std::size_t>(pptr() - p), MSG_NOSIGNAL);
            if (n < 0 && errno == EINTR)
                continue;
            if (n <= 0)
                return -1;
            p += n;
        }
        setp(out_.data(), out_.data() + out_.size());
        return 0;
    }

private:
    int fd_;
    std::vector<char> in_;
    std::vector<char> out_;
};

struct Fd {
    int fd;
    ~Fd()
    {
        if (fd >= 0)
            ::close(fd);
    }
};

}  // namespace

void serve_tcp(Session& session, std::uint16_t port, const std::function<void(std::uint16_t)>& on_listening)
{
    Fd listener{::socket(AF_INET, SOCK_STREAM, 0)};
    if (listener.fd < 0)
        throw InputError(std::string("socket: ") + std::strerror(errno));
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = htons(port);
    if (::bind(listener.fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0)
        throw InputError(fmt::format("cannot listen on port {}: {}", port, std::strerror(errno)));
    if (::listen(listener.fd, 1) != 0)
        throw InputError(std::string("listen: ") + std::strerror(errno));
    socklen_t len = sizeof addr;
    ::getsockname(listener.fd, reinterpret_cast<sockaddr*>(&addr), &len);
    const std::uint16_t bound = ntohs(addr.sin_port);
    log().info("serving on 127.0.0.1:{}", bound);
    if (on_listening)
        on_listening(bound);

    while (!session.finished()) {
        Fd conn{::accept(listener.fd, nullptr, nullptr)};
        if (conn.fd < 0) {
            if (errno == EINTR)
                continue;
            throw InputError(std::string("accept: ") + std::strerror(errno));
        }
        log().debug("client connected");
        FdBuf buf(conn.fd);
        std::istream in(&buf);
        std::ostream out(&buf);
        serve_stream(session, in, out);
        out.flush();
        log().debug("client disconnected");
    }
}

}  // namespace chordlink
