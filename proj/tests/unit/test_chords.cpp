#include "doctest.h"

#include <numbers>
#include <random>

#include "chordlink/chords.hpp"
#include "chordlink/error.hpp"
#include "fixtures.hpp"

using namespace chordlink;
using namespace chordlink::testing;

TEST_CASE("interleaving endpoints cross")
{
    CHECK(chords_cross(0.0, 2.0, 1.0, 3.0));
    CHECK(chords_cross(6.0, 2.0, 1.0, 3.0));
    CHECK_FALSE(chords_cross(0.0, 1.0, 2.0, 3.0));
    CHECK_FALSE(chords_cross(0.0, 3.0, 1.0, 2.0));
}

TEST_CASE("crossing cost lies in [0.5, 1)")
{
    const double pi = std::numbers::pi;
    ChordCandidate a{0, 0, 1, 0.0, pi};
    ChordCandidate b{1, 2, 3, pi / 2, 3 * pi / 2};
    CHECK(crossing_angle(a, b) == doctest::Approx(pi / 2));
    CHECK(pair_cost(a, b) == doctest::Approx(0.5));
    ChordCandidate c{1, 2, 3, 0.1, pi + 0.1};
    CHECK(pair_cost(a, c) > 0.9);
    CHECK(pair_cost(a, c) < 1.0);
    ChordCandidate d{2, 4, 5, 0.2, 0.3};
    CHECK(pair_cost(a, d) == 0.0);
    ChordCandidate shared{3, 1, 6, pi, 2.0};
    CHECK_FALSE(chords_cross(a, shared));

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0, kTwoPi);
    for (int i = 0; i < 2000; ++i) {
        ChordCandidate p{0, 0, 1, u(rng), u(rng)};
        ChordCandidate q{1, 2, 3, u(rng), u(rng)};
        const double cost = pair_cost(p, q);
        if (chords_cross(p, q)) {
            CHECK(cost >= 0.5 - 1e-12);
            CHECK(cost < 1.0);
        } else {
            CHECK(cost == 0.0);
        }
    }
}

TEST_CASE("five-node arrangement: three naive crossings, none after re-choosing")
{
    const Graph g = fig3_graph();
    const auto arcs = fig3_arcs();
    const auto edges = all_edges(g);
    const auto naive = first_candidate_assignment(g, arcs, edges);
    CHECK(crossing_count(naive.chords) == 3);
    const auto oracle = brute_force_chord_oracle(g, arcs, edges);
    CHECK(crossing_count(oracle.chords) == 0);
    CHECK(oracle.cost == 0.0);
    const auto greedy = greedy_insert(g, arcs, edges);
    CHECK(greedy.cost <= naive.cost + 1e-12);
    CHECK(greedy.cost >= oracle.cost);
}

TEST_CASE("single-arc nodes force the chords")
{
    const Graph g = make_graph({"a", "b", "c", "d"}, {{"a", "c"}, {"b", "d"}});
    const auto arcs = even_arcs({0, 1, 2, 3});
    const auto edges = all_edges(g);
    const auto greedy = greedy_insert(g, arcs, edges);
    CHECK(greedy.cost == doctest::Approx(total_cost(greedy.chords)));
    CHECK(greedy.cost == doctest::Approx(0.5));
}

TEST_CASE("greedy never beats the oracle and keeps its cost exact")
{
    std::mt19937_64 rng(21);
    for (int i = 0; i < 60; ++i) {
        const auto inst = random_chord_instance(rng);
        const auto greedy = greedy_insert(inst.graph, inst.arcs, inst.edges);
        const auto oracle = brute_force_chord_oracle(inst.graph, inst.arcs, inst.edges);
        CAPTURE(i);
        CHECK(oracle.cost <= greedy.cost + 1e-12);
        CHECK(std::abs(greedy.cost - total_cost(greedy.chords)) < 1e-12);
        CHECK(greedy.chords.size() == inst.edges.size());
        for (std::size_t a = 0; a < inst.arcs.size(); ++a)
            for (std::size_t k : greedy.incidence[a])
                CHECK((greedy.chords[k].from_arc == a || greedy.chords[k].to_arc == a));
    }
}

TEST_CASE("spreading endpoints inside arcs keeps the crossing count")
{
    std::mt19937_64 rng(4);
    for (int i = 0; i < 100; ++i) {
        const auto inst = random_chord_instance(rng);
        const auto set = greedy_insert(inst.graph, inst.arcs, inst.edges);
        const auto chords = distribute_endpoints(set, inst.arcs);
        REQUIRE(chords.size() == set.chords.size());
        for (std::size_t k = 0; k < chords.size(); ++k) {
            CHECK(inst.arcs[chords[k].from_arc].covers(chords[k].from_angle));
            CHECK(inst.arcs[chords[k].to_arc].covers(chords[k].to_angle));
        }
        CAPTURE(i);
        CHECK(geometric_crossing_count(chords) == crossing_count(set.chords));
    }
}

TEST_CASE("edge without a candidate arc is an invariant violation")
{
    const Graph g = make_graph({"a", "b", "c"}, {{"a", "c"}});
    const auto arcs = even_arcs({0, 1});
    const auto edges = all_edges(g);
    CHECK_THROWS_AS(greedy_insert(g, arcs, edges), InvariantError);
}
