#include "doctest.h"

#include "chordlink/error.hpp"
#include "chordlink/pipeline.hpp"
#include "fixtures.hpp"

using namespace chordlink;
using namespace chordlink::testing;

namespace {

LayoutState triangle_state()
{
    // 3-cycle a, b, c with outside neighbors
    Graph g = make_graph({"a", "b", "c", "x", "y"},
                         {{"a", "b"}, {"b", "c"}, {"c", "a"}, {"a", "x"}, {"b", "y"}, {"c", "y"}});
    return state_with(std::move(g), {{0, {0, 0}}, {1, {20, 0}}, {2, {10, 15}}, {3, {-80, -10}}, {4, {60, 70}}});
}

std::vector<NodeIndex> ids(const LayoutState& s, std::initializer_list<const char*> names)
{
    std::vector<NodeIndex> out;
    for (const char* n : names)
        out.push_back(s.g().index_of(n));
    return out;
}

}  // namespace

TEST_CASE("a 3-cycle becomes three arcs and three non-crossing chords")
{
    const LayoutState s = triangle_state();
    ClusterId id = 0;
    const auto members = ids(s, {"a", "b", "c"});
    const LayoutState t = select_cluster(s, members, PipelineOptions{}, &id);
    REQUIRE(t.clusters.size() == 1);
    const ClusterLayout& cl = t.clusters.at(id);
    CHECK(cl.arcs.size() == 3);
    CHECK(cl.chords.size() == 3);
    CHECK(geometric_crossing_count(cl.chords) == 0);
    CHECK(t.free_positions.size() == 2);
    CHECK(t.free_positions.at(3) == s.free_positions.at(3));
    CHECK(t.free_positions.at(4) == s.free_positions.at(4));
    for (EdgeIndex e : {3, 4, 5}) {
        const auto seg = t.external_segment(e);
        REQUIRE(seg);
        CHECK(distance(seg->first, cl.region.center) == doctest::Approx(cl.region.radius));
    }
    CHECK_FALSE(t.external_segment(0));
}

TEST_CASE("introvert-only cluster is one full arc")
{
    Graph g = make_graph({"solo", "x"}, {});
    const LayoutState s = state_with(std::move(g), {{0, {0, 0}}, {1, {100, 0}}});
    ClusterId id = 0;
    const std::vector<NodeIndex> one{0};
    const LayoutState t = select_cluster(s, one, PipelineOptions{}, &id);
    const ClusterLayout& cl = t.clusters.at(id);
    REQUIRE(cl.arcs.size() == 1);
    CHECK(cl.arcs[0].span() > 0.9 * kTwoPi);
    CHECK(cl.chords.empty());
}

TEST_CASE("an extrovert in a small cluster gets a copy per external edge")
{
    Graph g = make_graph({"m", "n", "o", "left", "right"},
                         {{"m", "n"}, {"m", "o"}, {"m", "left"}, {"m", "right"}});
    const LayoutState s = state_with(
        std::move(g), {{0, {0, 0}}, {1, {0, 10}}, {2, {0, -10}}, {3, {-200, 0}}, {4, {200, 5}}});
    ClusterId id = 0;
    const LayoutState t = select_cluster(s, std::vector<NodeIndex>{0, 1, 2}, PipelineOptions{}, &id);
    const ClusterLayout& cl = t.clusters.at(id);
    std::size_t m_copies = 0, m_arcs = 0;
    for (const Copy& c : cl.copies)
        m_copies += c.node == 0;
    for (const Arc& a : cl.arcs)
        m_arcs += a.node == 0;
    CHECK(m_copies == 2);
    CHECK(m_arcs == 2);
}

TEST_CASE("selection errors")
{
    const LayoutState s = triangle_state();
    const std::vector<NodeIndex> none;
    CHECK_THROWS_AS(select_cluster(s, none, PipelineOptions{}), InputError);
    const auto ab = ids(s, {"a", "b"});
    const LayoutState t = select_cluster(s, ab, PipelineOptions{});
    CHECK_THROWS_AS(select_cluster(t, ab, PipelineOptions{}), InputError);
    const std::vector<NodeIndex> dup{0, 0};
    CHECK_THROWS_AS(select_cluster(s, dup, PipelineOptions{}), InputError);
}

TEST_CASE("non-separable selection pushes others out radially")
{
    Graph g = make_graph({"a", "b", "m", "far"}, {{"a", "m"}, {"m", "far"}, {"a", "b"}});
    const LayoutState s = state_with(std::move(g), {{0, {0, 0}}, {1, {40, 0}}, {2, {20, 3}}, {3, {300, 300}}});
    const auto ab = std::vector<NodeIndex>{0, 1};
    const LayoutState t = select_cluster(s, ab, PipelineOptions{});
    const ClusterLayout& cl = t.clusters.begin()->second;
    CHECK(distance(t.free_positions.at(2), cl.region.center) > cl.region.radius);
    CHECK(t.free_positions.at(3) == s.free_positions.at(3));
    t.check_invariants();
}

TEST_CASE("two clusters on the community graph leave the rest untouched")
{
    const LayoutState s = initial_state("communities.gml", 3);
    const Graph& g = s.g();
    std::vector<NodeIndex> a, b;
    for (NodeIndex n = 0; n < g.node_count(); ++n) {
        if (g.node(n).id[0] == 'a')
            a.push_back(n);
        if (g.node(n).id[0] == 'b')
            b.push_back(n);
    }
    LayoutState t = s;
    for (const auto* sel : {&a, &b}) {
        const Region r = fit_region(t.free_positions, *sel);
        if (!is_circularly_separable(t.free_positions, r, Cluster{0, *sel}))
            continue;
        t = select_cluster(t, *sel, PipelineOptions{});
        for (const auto& [n, p] : t.free_positions)
            CHECK(p == s.free_positions.at(n));
    }
    t.check_invariants();
    CHECK(!t.clusters.empty());
}

TEST_CASE("drag-in keeps the region and grows the runs")
{
    const LayoutState s = triangle_state();
    ClusterId id = 0;
    const LayoutState t = select_cluster(s, ids(s, {"a", "b"}), PipelineOptions{}, &id);
    const ClusterLayout& before = t.clusters.at(id);
    const LayoutState u = add_node_to_cluster(t, id, s.g().index_of("c"), PipelineOptions{});
    const ClusterLayout& after = u.clusters.at(id);
    CHECK(after.region == before.region);
    CHECK(after.cluster.members.size() == 3);
    CHECK(after.chords.size() == 3);
    CHECK_FALSE(u.free_positions.contains(s.g().index_of("c")));
    // c had two internal edges and one external edge
    const auto seg = u.external_segment(5);
    REQUIRE(seg);
    CHECK(distance(seg->first, after.region.center) == doctest::Approx(after.region.radius));
    CHECK_FALSE(u.external_segment(1));
    CHECK_FALSE(u.external_segment(2));
    CHECK_THROWS_AS(add_node_to_cluster(u, id, s.g().index_of("c"), PipelineOptions{}), InputError);
    CHECK_THROWS_AS(add_node_to_cluster(u, id + 7, s.g().index_of("x"), PipelineOptions{}), InputError);
}

TEST_CASE("collapse and expand round-trip")
{
    const LayoutState s = triangle_state();
    ClusterId id = 0;
    const LayoutState t = select_cluster(s, ids(s, {"a", "b", "c"}), PipelineOptions{}, &id);
    const LayoutState c = collapse(t, id);
    CHECK(c.clusters.at(id).collapsed);
    const auto seg = c.external_segment(3);
    REQUIRE(seg);
    CHECK(seg->first == c.clusters.at(id).region.center);
    CHECK_THROWS_AS(collapse(c, id), InputError);
    CHECK(expand(c, id) == t);
    CHECK_THROWS_AS(expand(t, id), InputError);
    CHECK_THROWS_AS(collapse(t, 99), InputError);
    CHECK(collapsed_glyph_radius(16) == doctest::Approx(2 * collapsed_glyph_radius(4)));
}

TEST_CASE("remove cluster restores free nodes")
{
    const LayoutState s = triangle_state();
    ClusterId id = 0;
    const LayoutState t = select_cluster(s, ids(s, {"a", "b", "c"}), PipelineOptions{}, &id);
    CHECK(remove_cluster(t, id).free_positions == s.free_positions);
}

TEST_CASE("moving a cluster is rigid")
{
    const LayoutState s = triangle_state();
    ClusterId id = 0;
    const LayoutState t = select_cluster(s, ids(s, {"a", "b", "c"}), PipelineOptions{}, &id);
    const LayoutState u = move_cluster(t, id, {5, -3});
    const auto& a = t.clusters.at(id);
    const auto& b = u.clusters.at(id);
    CHECK(b.region.center.x == doctest::Approx(a.region.center.x + 5));
    CHECK(b.arcs == a.arcs);
    CHECK(b.chords == a.chords);
    for (EdgeIndex e : {3, 4, 5}) {
        const auto seg = u.external_segment(e);
        REQUIRE(seg);
        CHECK(distance(seg->first, b.region.center) == doctest::Approx(b.region.radius));
    }
    CHECK_THROWS_AS(move_cluster(t, id, {-80, -10}), InputError);
}

TEST_CASE("moving a neighbor re-truncates without re-permuting")
{
    const LayoutState s = triangle_state();
    ClusterId id = 0;
    const LayoutState t = select_cluster(s, ids(s, {"a", "b", "c"}), PipelineOptions{}, &id);
    const NodeIndex y = s.g().index_of("y");
    const LayoutState u = move_node(t, y, {70, 60});
    CHECK(u.free_positions.at(y) == Point{70, 60});
    const auto& a = t.clusters.at(id);
    const auto& b = u.clusters.at(id);
    REQUIRE(a.copies.size() == b.copies.size());
    for (std::size_t i = 0; i < a.copies.size(); ++i) {
        CHECK(a.copies[i].node == b.copies[i].node);
        CHECK(a.copies[i].neighbor == b.copies[i].neighbor);
        CHECK(b.arcs[b.copies[i].arc].covers(b.copies[i].angle, 1e-9));
    }
    CHECK(b.arcs == a.arcs);
    CHECK_THROWS_AS(move_node(t, s.g().index_of("a"), {0, 0}), InputError);
    CHECK_THROWS_AS(move_node(t, y, a.region.center), InputError);
}

TEST_CASE("rectangle and lasso selection")
{
    const LayoutState s = triangle_state();
    CHECK(nodes_in_rectangle(s, {25, 20}, {-5, -5}) == ids(s, {"a", "b", "c"}));
    const std::vector<Point> poly{{-5, -5}, {25, -5}, {10, 30}};
    CHECK(nodes_in_lasso(s, poly) == ids(s, {"a", "b", "c"}));
}

TEST_CASE("label policies")
{
    const LayoutState s = triangle_state();
    LabelPolicy all{LabelMode::All, {}};
    CHECK(visible_labels(s, all, 1.0).size() == 5);
    LabelPolicy none{LabelMode::None, {{0, true}}};
    CHECK(visible_labels(s, none, 1.0) == std::set<NodeIndex>{0});
    LabelPolicy autop{LabelMode::Auto, {}};
    CHECK(visible_labels(s, autop, 1.0).size() == 5);
    // a, b, c have degree 3; x degree 1; y degree 2
    CHECK(visible_labels(s, autop, kMinZoom) == std::set<NodeIndex>{0, 1, 2});
    autop.overrides[3] = true;
    autop.overrides[0] = false;
    CHECK(visible_labels(s, autop, kMinZoom) == std::set<NodeIndex>{1, 2, 3});
    CHECK(label_degree_threshold(10, 1.0) == 0);
    CHECK(label_degree_threshold(10, kMinZoom) == 10);
    CHECK(label_degree_threshold(10, 0.3) <= label_degree_threshold(10, 0.2));
}
