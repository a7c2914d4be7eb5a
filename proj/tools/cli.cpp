#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "chordlink/error.hpp"
#include "chordlink/gml.hpp"
#include "chordlink/layout_document.hpp"
#include "chordlink/log.hpp"
#include "chordlink/session.hpp"
#include "chordlink/svg_export.hpp"

namespace chordlink {

using nlohmann::json;

namespace {

struct Flags {
    std::string input;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<int> iterations;
    std::string permutation = "dp";
    std::string chords = "greedy";
    std::optional<std::string> labels;
    std::optional<std::uint16_t> port;

    std::vector<std::string> nodes;
    std::vector<double> rect;
    std::vector<double> lasso;
    std::optional<unsigned> cluster;
    std::string node;
    double x = 0, y = 0;
    std::optional<double> zoom;
    std::vector<double> pan;
    std::vector<std::string> show;
    std::vector<std::string> hide;
};

std::string slurp(const std::string& path, std::istream& in)
{
    std::ostringstream ss;
    if (path == "-") {
        ss << in.rdbuf();
        return ss.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw InputError("cannot read '" + path + "'");
    ss << f.rdbuf();
    return ss.str();
}

void emit(const std::string& text, const std::string& path, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << text;
        out.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text))
        throw InputError("cannot write '" + path + "'");
}

PermutationStrategy permutation_flag(const std::string& s)
{
    if (s == "dp")
        return PermutationStrategy::Dp;
    if (s == "oracle")
        return PermutationStrategy::Oracle;
    return PermutationStrategy::None;
}

SessionOptions session_options(const Flags& f)
{
    SessionOptions o;
    o.pipeline.permutation = permutation_flag(f.permutation);
    o.pipeline.chords = f.chords == "oracle" ? ChordStrategy::Oracle : ChordStrategy::Greedy;
    if (f.seed)
        o.force.seed = *f.seed;
    if (f.iterations)
        o.force.iterations = *f.iterations;
    o.force.validate();
    return o;
}

json points(const std::vector<double>& xy)
{
    json a = json::array();
    for (std::size_t i = 0; i + 1 < xy.size(); i += 2)
        a.push_back({xy[i], xy[i + 1]});
    return a;
}

/// Session command equivalent to a batch subcommand on a loaded document.
json command_for(const std::string& sub, const Flags& f)
{
    if (sub == "cluster") {
        json c{{"command", "select_cluster"}};
        const int given = !f.nodes.empty() + !f.rect.empty() + !f.lasso.empty();
        if (given != 1)
            throw InputError("cluster needs exactly one of --nodes, --rect, --lasso");
        if (!f.nodes.empty())
            c["nodes"] = f.nodes;
        if (!f.rect.empty()) {
            if (f.rect.size() != 4)
                throw InputError("--rect takes x0,y0,x1,y1");
            c["rectangle"] = points(f.rect);
        }
        if (!f.lasso.empty()) {
            if (f.lasso.size() < 6 || f.lasso.size() % 2 != 0)
                throw InputError("--lasso takes at least three x,y pairs");
            c["lasso"] = points(f.lasso);
        }
        return c;
    }
    if (sub == "add-node")
        return {{"command", "add_node_to_cluster"}, {"cluster", *f.cluster}, {"node", f.node}};
    if (sub == "remove-cluster")
        return {{"command", "remove_cluster"}, {"cluster", *f.cluster}};
    if (sub == "collapse")
        return {{"command", "collapse"}, {"cluster", *f.cluster}};
    if (sub == "expand")
        return {{"command", "expand"}, {"cluster", *f.cluster}};
    if (sub == "move-node")
        return {{"command", "move_node"}, {"node", f.node}, {"x", f.x}, {"y", f.y}};
    if (sub == "move-cluster")
        return {{"command", "move_cluster"}, {"cluster", *f.cluster}, {"dx", f.x}, {"dy", f.y}};
    if (sub == "labels") {
        json overrides = json::object();
        for (const auto& id : f.show)
            overrides[id] = true;
        for (const auto& id : f.hide)
            overrides[id] = false;
        return {{"command", "set_label_policy"}, {"mode", f.labels.value_or("auto")}, {"overrides", overrides}};
    }
    if (sub == "view") {
        json c{{"command", "set_view"}, {"zoom", *f.zoom}};
        if (!f.pan.empty())
            c["pan"] = {f.pan.at(0), f.pan.at(1)};
        return c;
    }
    if (sub == "run-layout") {
        json c{{"command", "run_layout"}};
        if (f.seed)
            c["seed"] = *f.seed;
        if (f.iterations)
            c["iterations"] = *f.iterations;
        return c;
    }
    throw InputError("no session command for '" + sub + "'");
}

int execute(const std::string& sub, const Flags& f, std::istream& in, std::ostream& out)
{
    Session session(session_options(f));
    if (sub == "serve") {
        if (f.port)
            serve_tcp(session, *f.port, [&](std::uint16_t p) { log().info("listening on port {}", p); });
        else
            serve_stream(session, in, out);
        if (!f.out.empty())
            emit(write_layout(session.state()), f.out, out);
        return kExitOk;
    }
    if (sub == "layout") {
        const std::string text = slurp(f.input, in);
        json ev;
        try {
            ev = session.apply({{"command", "load"}, {"gml", text}});
        } catch (const GmlError& e) {
            throw InputError(f.input + ": " + e.what());
        }
        emit(dump_document(ev.at("document")), f.out, out);
        return kExitOk;
    }

    const json doc = [&] {
        try {
            return json::parse(slurp(f.input, in));
        } catch (const json::exception& e) {
            throw InputError(f.input + ": " + e.what());
        }
    }();
    session.apply({{"command", "load_layout"}, {"document", doc}});

    if (sub == "render") {
        LabelPolicy policy = session.state().labels;
        if (f.labels) {
            policy.mode = parse_label_mode(*f.labels);
            policy.overrides.clear();
        }
        emit(export_svg(session.state(), policy), f.out, out);
        return kExitOk;
    }
    const json ev = session.apply(command_for(sub, f));
    emit(dump_document(ev.at("document")), f.out, out);
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"ChordLink: node-link diagrams with chord-diagram clusters", "chordlink"};
    app.require_subcommand(1);
    Flags f;

    const std::vector<std::string> strategies{"dp", "oracle", "none"};
    const std::vector<std::string> chord_modes{"greedy", "oracle"};
    const std::vector<std::string> label_modes{"all", "none", "auto"};

    auto common = [&](CLI::App* s, bool input = true) {
        if (input)
            s->add_option("input", f.input, "Input file ('-' for stdin)")->required();
        s->add_option("--out,-o", f.out, "Output file (default stdout)");
        s->add_option("--seed", f.seed, "Force layout seed");
        s->add_option("--iterations", f.iterations, "Force layout iterations");
        s->add_option("--permutation", f.permutation, "Copy permutation strategy")
            ->check(CLI::IsMember(strategies));
        s->add_option("--chords", f.chords, "Chord selection strategy")->check(CLI::IsMember(chord_modes));
    };
    auto cluster_id = [&](CLI::App* s) { s->add_option("--cluster", f.cluster, "Cluster id")->required(); };

    auto* layout = app.add_subcommand("layout", "Parse GML and compute the initial force layout");
    common(layout);
    auto* run_layout = app.add_subcommand("run-layout", "Recompute the force layout of a cluster-free document");
    common(run_layout);
    auto* cluster = app.add_subcommand("cluster", "Turn a node set into a chord-diagram cluster");
    common(cluster);
    cluster->add_option("--nodes", f.nodes, "Comma-separated node ids")->delimiter(',');
    cluster->add_option("--rect", f.rect, "Rectangle x0,y0,x1,y1")->delimiter(',');
    cluster->add_option("--lasso", f.lasso, "Polygon x,y,x,y,...")->delimiter(',');
    auto* add_node = app.add_subcommand("add-node", "Drop a free node into a cluster");
    common(add_node);
    cluster_id(add_node);
    add_node->add_option("--node", f.node, "Node id")->required();
    for (auto [name, help] : {std::pair{"remove-cluster", "Dissolve a cluster back into free nodes"},
                              {"collapse", "Collapse a cluster into a single glyph"},
                              {"expand", "Expand a collapsed cluster"}}) {
        auto* s = app.add_subcommand(name, help);
        common(s);
        cluster_id(s);
    }
    auto* move_node = app.add_subcommand("move-node", "Move a free node");
    common(move_node);
    move_node->add_option("--node", f.node, "Node id")->required();
    move_node->add_option("--x", f.x, "Target x")->required();
    move_node->add_option("--y", f.y, "Target y")->required();
    auto* move_cluster = app.add_subcommand("move-cluster", "Translate a cluster");
    common(move_cluster);
    cluster_id(move_cluster);
    move_cluster->add_option("--dx", f.x, "Translation x")->required();
    move_cluster->add_option("--dy", f.y, "Translation y")->required();
    auto* labels = app.add_subcommand("labels", "Set the label policy");
    common(labels);
    labels->add_option("--labels", f.labels, "Label mode")->check(CLI::IsMember(label_modes))->required();
    labels->add_option("--show", f.show, "Always label these ids")->delimiter(',');
    labels->add_option("--hide", f.hide, "Never label these ids")->delimiter(',');
    auto* view = app.add_subcommand("view", "Set zoom and pan");
    common(view);
    view->add_option("--zoom", f.zoom, "Zoom factor")->required();
    view->add_option("--pan", f.pan, "Pan x,y")->delimiter(',')->expected(2);
    auto* render = app.add_subcommand("render", "Export a layout document as SVG");
    common(render);
    render->add_option("--labels", f.labels, "Label mode override")->check(CLI::IsMember(label_modes));
    auto* serve = app.add_subcommand("serve", "Run the session protocol (stdin/stdout, or TCP with --port)");
    common(serve, false);
    serve->add_option("--port", f.port, "Listen on 127.0.0.1:PORT");
    serve->get_option("--out")->description("Write the final layout document here on shutdown");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "chordlink: " << e.what() << "\n";
        return kExitUsage;
    }

    const std::string sub = app.get_subcommands().front()->get_name();
    try {
        return execute(sub, f, in, out);
    } catch (const InvariantError& e) {
        err << "chordlink: invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const InputError& e) {
        err << "chordlink: error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        err << "chordlink: internal error: " << e.what() << "\n";
        return kExitInvariant;
    }
}

}  // namespace chordlink
