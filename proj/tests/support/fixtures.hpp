#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "chordlink/chords.hpp"
#include "chordlink/force_layout.hpp"
#include "chordlink/gml.hpp"
#include "chordlink/graph.hpp"
#include "chordlink/layout_state.hpp"
#include "chordlink/merging.hpp"
#include "chordlink/permutation.hpp"

#ifndef CHORDLINK_TEST_DATA
#define CHORDLINK_TEST_DATA "tests/data"
#endif

namespace chordlink::testing {

inline std::string data_path(const std::string& name) { return std::string(CHORDLINK_TEST_DATA) + "/" + name; }

inline std::string read_text(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Nodes named by the given ids, unit-weight edges between id pairs.
inline Graph make_graph(const std::vector<std::string>& ids,
                        const std::vector<std::pair<std::string, std::string>>& edges)
{
    GraphBuilder b;
    for (const auto& id : ids)
        b.add_node(id, id);
    for (const auto& [s, t] : edges)
        b.add_edge(s, t, 1.0);
    return std::move(b).build();
}

inline std::vector<std::string> numbered_ids(int n, int first = 1)
{
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i)
        ids.push_back(std::to_string(first + i));
    return ids;
}

/// Boundary groups of the two-cluster example: <8,9,5>, <9,6>, <6>, <5,9>.
inline KeyGroups fig2_groups() { return {{8, 9, 5}, {9, 6}, {6}, {5, 9}}; }

/// Five-node cluster whose arcs read 4,1,5,3,2,1,3,2 around the circle.
inline Graph fig3_graph()
{
    return make_graph(numbered_ids(5), {{"1", "2"}, {"1", "4"}, {"2", "3"}, {"2", "5"}, {"3", "4"}, {"4", "5"}});
}

/// Evenly spaced arcs with a small gap; `sequence` holds node indices.
inline std::vector<Arc> even_arcs(const std::vector<NodeIndex>& sequence, double gap = 0.02)
{
    std::vector<Arc> arcs;
    const double step = kTwoPi / static_cast<double>(sequence.size());
    for (std::size_t i = 0; i < sequence.size(); ++i) {
        Arc a;
        a.node = sequence[i];
        a.start = static_cast<double>(i) * step + 0.5 * gap;
        a.end = a.start + step - gap;
        a.first_copy = a.last_copy = i;
        arcs.push_back(a);
    }
    return arcs;
}

inline std::vector<Arc> fig3_arcs()
{
    // ids 1..5 are node indices 0..4
    return even_arcs({3, 0, 4, 2, 1, 0, 2, 1});
}

inline std::vector<EdgeIndex> all_edges(const Graph& g)
{
    std::vector<EdgeIndex> e(g.edge_count());
    for (EdgeIndex i = 0; i < e.size(); ++i)
        e[i] = i;
    return e;
}

inline double factorial(std::size_t n)
{
    double f = 1;
    for (std::size_t i = 2; i <= n; ++i)
        f *= static_cast<double>(i);
    return f;
}

/// Random circular group sequence: up to `max_groups` groups of up to `max_size` distinct keys
/// from an alphabet of `alphabet` keys, with at most `max_perms` within-group permutations.
inline KeyGroups random_groups(std::mt19937_64& rng, int max_groups = 6, int max_size = 4, int alphabet = 8,
                               double max_perms = 1e7)
{
    for (;;) {
        const int k = std::uniform_int_distribution<int>(1, max_groups)(rng);
        KeyGroups g;
        double perms = 1;
        for (int i = 0; i < k; ++i) {
            const int size = std::uniform_int_distribution<int>(1, std::min(max_size, alphabet))(rng);
            std::vector<int> keys(static_cast<std::size_t>(alphabet));
            for (int j = 0; j < alphabet; ++j)
                keys[static_cast<std::size_t>(j)] = j;
            std::shuffle(keys.begin(), keys.end(), rng);
            keys.resize(static_cast<std::size_t>(size));
            perms *= factorial(keys.size());
            g.push_back(keys);
        }
        if (perms <= max_perms)
            return g;
    }
}

struct ChordInstance {
    Graph graph;
    std::vector<Arc> arcs;
    std::vector<EdgeIndex> edges;
};

/// Random arc arrangement: at most `max_arcs` arcs, at most `max_arcs_per_node` arcs per node,
/// no two neighboring arcs of the same node, and at most `max_edges` intra-cluster edges.
inline ChordInstance random_chord_instance(std::mt19937_64& rng, int max_arcs = 8, int max_edges = 7,
                                           int max_arcs_per_node = 3)
{
    for (;;) {
        const int n = std::uniform_int_distribution<int>(3, 6)(rng);
        std::vector<NodeIndex> seq;
        for (int v = 0; v < n; ++v) {
            const int c = std::uniform_int_distribution<int>(1, max_arcs_per_node)(rng);
            for (int i = 0; i < c; ++i)
                seq.push_back(static_cast<NodeIndex>(v));
        }
        if (static_cast<int>(seq.size()) > max_arcs)
            continue;
        std::shuffle(seq.begin(), seq.end(), rng);
        bool adjacent = false;
        for (std::size_t i = 0; i < seq.size(); ++i)
            adjacent |= seq[i] == seq[(i + 1) % seq.size()];
        if (adjacent)
            continue;

        std::vector<std::pair<std::string, std::string>> pairs;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                pairs.emplace_back(std::to_string(a), std::to_string(b));
        std::shuffle(pairs.begin(), pairs.end(), rng);
        const int m = std::uniform_int_distribution<int>(2, std::min<int>(max_edges, static_cast<int>(pairs.size())))(rng);
        pairs.resize(static_cast<std::size_t>(m));
        ChordInstance inst{make_graph(numbered_ids(n, 0), pairs), even_arcs(seq), {}};
        inst.edges = all_edges(inst.graph);
        return inst;
    }
}

inline std::shared_ptr<const Graph> load_graph(const std::string& name)
{
    return std::make_shared<const Graph>(parse_gml(read_text(data_path(name))));
}

/// Free layout of a graph from the test corpus.
inline LayoutState initial_state(const std::string& name, std::uint64_t seed = 1)
{
    LayoutState s;
    s.graph = load_graph(name);
    ForceParams p;
    p.seed = seed;
    s.free_positions = force_layout(*s.graph, p);
    return s;
}

inline LayoutState state_with(Graph g, PositionMap positions)
{
    LayoutState s;
    s.graph = std::make_shared<const Graph>(std::move(g));
    s.free_positions = std::move(positions);
    return s;
}

}  // namespace chordlink::testing
