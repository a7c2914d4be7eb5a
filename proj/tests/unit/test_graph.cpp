#include "doctest.h"

#include "chordlink/error.hpp"
#include "chordlink/graph.hpp"
#include "fixtures.hpp"

using namespace chordlink;
using chordlink::testing::make_graph;

TEST_CASE("graph construction rejects malformed input")
{
    CHECK_THROWS_AS(Graph({{"a", "a", {}}, {"a", "b", {}}}, {}), InputError);
    CHECK_THROWS_AS(Graph({{"a", "a", {}}}, {{0, 0, 1.0, {}, {}}}), InputError);
    CHECK_THROWS_AS(Graph({{"a", "a", {}}, {"b", "b", {}}}, {{0, 1, 0.0, {}, {}}}), InputError);
    CHECK_THROWS_AS(Graph({{"a", "a", {}}, {"b", "b", {}}}, {{0, 1, 1.0, {}, {}}, {1, 0, 1.0, {}, {}}}), InputError);
}

TEST_CASE("builder merges parallel edges by summing weights")
{
    GraphBuilder b;
    CHECK(b.add_node("x", "X"));
    CHECK(b.add_node("y", "Y"));
    CHECK_FALSE(b.add_node("x", "again"));
    b.add_edge("x", "y", 1.5);
    b.add_edge("y", "x", 2.0);
    CHECK_THROWS_AS(b.add_edge("x", "z", 1.0), InputError);
    const Graph g = std::move(b).build();
    REQUIRE(g.edge_count() == 1);
    CHECK(g.edge(0).weight == 3.5);
    CHECK(g.index_of("y") == 1);
    CHECK_THROWS_AS(g.index_of("z"), InputError);
}

TEST_CASE("introverts have no edge leaving the cluster")
{
    const Graph g = make_graph({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}});
    const Cluster c{1, {0, 1, 2}};
    CHECK(classify_node(g, c, 0) == NodeRole::Introvert);
    CHECK(classify_node(g, c, 2) == NodeRole::Extrovert);
    CHECK_THROWS_AS(classify_node(g, c, 3), InputError);
    CHECK(induced_edges(g, c) == std::vector<EdgeIndex>{0, 1});
}
