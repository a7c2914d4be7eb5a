#include "chordlink/layout_document.hpp"

#include "chordlink/error.hpp"

namespace chordlink {

using nlohmann::json;

namespace {

json point(Point p) { return json::array({p.x, p.y}); }

Point to_point(const json& j)
{
    if (!j.is_array() || j.size() != 2)
        throw InputError("point must be a [x, y] array");
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

json pass_through(const PassThrough& extra)
{
    json out = json::array();
    for (const auto& [k, v] : extra)
        out.push_back(json::array({k, v}));
    return out;
}

PassThrough to_pass_through(const json& j)
{
    PassThrough out;
    for (const auto& kv : j)
        out.emplace_back(kv.at(0).get<std::string>(), kv.at(1).get<std::string>());
    return out;
}

const char* mode_name(LabelMode m)
{
    switch (m) {
    case LabelMode::All: return "all";
    case LabelMode::None: return "none";
    case LabelMode::Auto: break;
    }
    return "auto";
}

LabelMode mode_from(const std::string& s)
{
    if (s == "all")
        return LabelMode::All;
    if (s == "none")
        return LabelMode::None;
    if (s == "auto")
        return LabelMode::Auto;
    throw InputError("unknown label mode '" + s + "'");
}

json cluster_json(const Graph& g, ClusterId id, const ClusterLayout& cl)
{
    json members = json::array();
    for (NodeIndex n : cl.cluster.members)
        members.push_back(g.node(n).id);
    json anchors = json::object();
    for (const auto& [n, p] : cl.anchors)
        anchors[g.node(n).id] = point(p);
    json copies = json::array();
    for (const Copy& c : cl.copies) {
        json jc{{"node", g.node(c.node).id}, {"angle", c.angle}, {"origin", g.node(c.origin).id},
                {"arc", c.arc}};
        if (c.neighbor)
            jc["neighbor"] = g.node(*c.neighbor).id;
        if (c.edge)
            jc["edge"] = *c.edge;
        copies.push_back(std::move(jc));
    }
    json arcs = json::array();
    for (const Arc& a : cl.arcs) {
        arcs.push_back({{"node", g.node(a.node).id},
                        {"start_angle", a.start},
                        {"end_angle", a.end},
                        {"first_copy", a.first_copy},
                        {"last_copy", a.last_copy},
                        {"in_deg", a.in_deg},
                        {"color", a.color}});
    }
    json chords = json::array();
    for (const Chord& c : cl.chords) {
        chords.push_back({{"edge", c.edge},
                          {"from_arc", c.from_arc},
                          {"to_arc", c.to_arc},
                          {"from_angle", c.from_angle},
                          {"to_angle", c.to_angle}});
    }
    const ClusterStats& s = cl.stats;
    return {{"id", id},
            {"members", members},
            {"center", point(cl.region.center)},
            {"radius", cl.region.radius},
            {"collapsed", cl.collapsed},
            {"anchors", anchors},
            {"copies", copies},
            {"arcs", arcs},
            {"chords", chords},
            {"stats",
             {{"boundary_mismatch", s.boundary_mismatch},
              {"chi_before", s.chi_before},
              {"chi_after", s.chi_after},
              {"alpha", s.alpha},
              {"gap", s.gap},
              {"min_length", s.min_length},
              {"crowded", s.crowded}}}};
}

ClusterLayout cluster_from(const Graph& g, const json& j)
{
    ClusterLayout cl;
    cl.cluster.id = j.at("id").get<ClusterId>();
    for (const auto& m : j.at("members"))
        cl.cluster.members.push_back(g.index_of(m.get<std::string>()));
    std::sort(cl.cluster.members.begin(), cl.cluster.members.end());
    if (cl.cluster.members.empty())
        throw InputError("cluster without members");
    cl.region.center = to_point(j.at("center"));
    cl.region.radius = j.at("radius").get<double>();
    if (!(cl.region.radius > 0.0))
        throw InputError("cluster radius must be positive");
    cl.collapsed = j.at("collapsed").get<bool>();
    for (const auto& [id, p] : j.at("anchors").items())
        cl.anchors.emplace(g.index_of(id), to_point(p));
    for (const auto& jc : j.at("copies")) {
        Copy c;
        c.node = g.index_of(jc.at("node").get<std::string>());
        c.angle = jc.at("angle").get<double>();
        c.origin = g.index_of(jc.at("origin").get<std::string>());
        c.arc = jc.at("arc").get<std::size_t>();
        if (jc.contains("neighbor"))
            c.neighbor = g.index_of(jc.at("neighbor").get<std::string>());
        if (jc.contains("edge"))
            c.edge = jc.at("edge").get<EdgeIndex>();
        cl.copies.push_back(c);
    }
    for (const auto& ja : j.at("arcs")) {
        Arc a;
        a.node = g.index_of(ja.at("node").get<std::string>());
        a.start = ja.at("start_angle").get<double>();
        a.end = ja.at("end_angle").get<double>();
        a.first_copy = ja.at("first_copy").get<std::size_t>();
        a.last_copy = ja.at("last_copy").get<std::size_t>();
        a.in_deg = ja.at("in_deg").get<std::size_t>();
        a.color = ja.at("color").get<std::string>();
        cl.arcs.push_back(a);
    }
    for (const auto& jc : j.at("chords")) {
        Chord c;
        c.edge = jc.at("edge").get<EdgeIndex>();
        c.from_arc = jc.at("from_arc").get<std::size_t>();
        c.to_arc = jc.at("to_arc").get<std::size_t>();
        c.from_angle = jc.at("from_angle").get<double>();
        c.to_angle = jc.at("to_angle").get<double>();
        cl.chords.push_back(c);
    }
    const json& s = j.at("stats");
    cl.stats.boundary_mismatch = s.at("boundary_mismatch").get<std::size_t>();
    cl.stats.chi_before = s.at("chi_before").get<std::size_t>();
    cl.stats.chi_after = s.at("chi_after").get<std::size_t>();
    cl.stats.alpha = s.at("alpha").get<double>();
    cl.stats.gap = s.at("gap").get<double>();
    cl.stats.min_length = s.at("min_length").get<double>();
    cl.stats.crowded = s.at("crowded").get<bool>();

    // Referential checks the layout invariants do not cover.
    for (const Copy& c : cl.copies) {
        if (c.arc >= cl.arcs.size())
            throw InputError("copy refers to a missing arc");
        if (c.edge && *c.edge >= g.edge_count())
            throw InputError("copy refers to a missing edge");
    }
    for (const Chord& c : cl.chords) {
        if (c.edge >= g.edge_count() || c.from_arc >= cl.arcs.size() || c.to_arc >= cl.arcs.size())
            throw InputError("chord refers to a missing edge or arc");
    }
    for (const Arc& a : cl.arcs) {
        if (a.first_copy >= cl.copies.size() || a.last_copy >= cl.copies.size())
            throw InputError("arc refers to a missing copy");
    }
    return cl;
}

}  // namespace

const char* label_mode_name(LabelMode mode) { return mode_name(mode); }

LabelMode parse_label_mode(const std::string& name) { return mode_from(name); }

json layout_to_json(const LayoutState& state)
{
    const Graph& g = state.g();
    json nodes = json::array();
    for (const Node& n : g.nodes())
        nodes.push_back({{"id", n.id}, {"label", n.label}, {"extra", pass_through(n.extra)}});
    json edges = json::array();
    for (const Edge& e : g.edges()) {
        edges.push_back({{"source", g.node(e.source).id},
                         {"target", g.node(e.target).id},
                         {"weight", e.weight},
                         {"label", e.label},
                         {"extra", pass_through(e.extra)}});
    }
    json positions = json::object();
    for (const auto& [n, p] : state.free_positions)
        positions[g.node(n).id] = point(p);
    json clusters = json::array();
    for (const auto& [id, cl] : state.clusters)
        clusters.push_back(cluster_json(g, id, cl));
    json overrides = json::object();
    for (const auto& [n, show] : state.labels.overrides)
        overrides[g.node(n).id] = show;

    return {{"version", kLayoutDocumentVersion},
            {"graph", {{"nodes", nodes}, {"edges", edges}}},
            {"positions", positions},
            {"clusters", clusters},
            {"labels", {{"mode", mode_name(state.labels.mode)}, {"overrides", overrides}}},
            {"view", {{"zoom", state.view.zoom}, {"pan", point(state.view.pan)}}}};
}

LayoutState layout_from_json(const json& doc)
{
    try {
        if (!doc.is_object() || !doc.contains("version"))
            throw InputError("layout document without version");
        if (doc.at("version").get<int>() != kLayoutDocumentVersion)
            throw InputError("unsupported layout document version " + doc.at("version").dump());

        std::vector<Node> nodes;
        for (const auto& jn : doc.at("graph").at("nodes"))
            nodes.push_back({jn.at("id").get<std::string>(), jn.at("label").get<std::string>(),
                             to_pass_through(jn.at("extra"))});
        std::unordered_map<std::string, NodeIndex> index;
        for (NodeIndex i = 0; i < nodes.size(); ++i)
            index.emplace(nodes[i].id, i);
        auto lookup = [&](const std::string& id) {
            auto it = index.find(id);
            if (it == index.end())
                throw InputError("unknown node id '" + id + "'");
            return it->second;
        };
        std::vector<Edge> edges;
        for (const auto& je : doc.at("graph").at("edges"))
            edges.push_back({lookup(je.at("source").get<std::string>()),
                             lookup(je.at("target").get<std::string>()), je.at("weight").get<double>(),
                             je.at("label").get<std::string>(), to_pass_through(je.at("extra"))});

        LayoutState state;
        state.graph = std::make_shared<const Graph>(std::move(nodes), std::move(edges));
        const Graph& g = state.g();
        for (const auto& [id, p] : doc.at("positions").items())
            state.free_positions.emplace(g.index_of(id), to_point(p));
        for (const auto& jc : doc.at("clusters")) {
            ClusterLayout cl = cluster_from(g, jc);
            const ClusterId id = cl.cluster.id;
            if (!state.clusters.emplace(id, std::move(cl)).second)
                throw InputError("duplicate cluster id " + std::to_string(id));
        }
        const json& labels = doc.at("labels");
        state.labels.mode = mode_from(labels.at("mode").get<std::string>());
        for (const auto& [id, show] : labels.at("overrides").items())
            state.labels.overrides.emplace(g.index_of(id), show.get<bool>());
        state.view.zoom = doc.at("view").at("zoom").get<double>();
        state.view.pan = to_point(doc.at("view").at("pan"));

        try {
            state.check_invariants();
        } catch (const InvariantError& e) {
            throw InputError(std::string("layout document violates an invariant: ") + e.what());
        }
        return state;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed layout document: ") + e.what());
    }
}

std::string dump_document(const json& doc)
{
    return doc.dump(2) + "\n";
}

std::string write_layout(const LayoutState& state)
{
    return dump_document(layout_to_json(state));
}

LayoutState read_layout(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("layout document is not valid JSON: ") + e.what());
    }
    return layout_from_json(doc);
}

}  // namespace chordlink
