#include "chordlink/chords.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "chordlink/error.hpp"

namespace chordlink {

bool chords_cross(double a1, double a2, double b1, double b2)
{
    a1 = normalize_angle(a1);
    a2 = normalize_angle(a2);
    b1 = normalize_angle(b1);
    b2 = normalize_angle(b2);
    if (a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2)
        return false;
    const double lo = std::min(a1, a2);
    const double hi = std::max(a1, a2);
    const bool in1 = lo < b1 && b1 < hi;
    const bool in2 = lo < b2 && b2 < hi;
    return in1 != in2;
}

bool chords_cross(const ChordCandidate& a, const ChordCandidate& b)
{
    if (a.from_arc == b.from_arc || a.from_arc == b.to_arc || a.to_arc == b.from_arc ||
        a.to_arc == b.to_arc)
        return false;
    return chords_cross(a.from_angle, a.to_angle, b.from_angle, b.to_angle);
}

double crossing_angle(const ChordCandidate& a, const ChordCandidate& b)
{
    const Point o{};
    const Point da = on_circle(o, 1.0, a.to_angle) - on_circle(o, 1.0, a.from_angle);
    const Point db = on_circle(o, 1.0, b.to_angle) - on_circle(o, 1.0, b.from_angle);
    const double c = std::clamp(std::abs(dot(da, db)) / (norm(da) * norm(db)), 0.0, 1.0);
    return std::acos(c);
}

double pair_cost(const ChordCandidate& a, const ChordCandidate& b)
{
    if (!chords_cross(a, b))
        return 0.0;
    return 1.0 - crossing_angle(a, b) / std::numbers::pi;
}

double total_cost(std::span<const ChordCandidate> chords)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < chords.size(); ++i)
        for (std::size_t j = i + 1; j < chords.size(); ++j)
            sum += pair_cost(chords[i], chords[j]);
    return sum;
}

std::size_t crossing_count(std::span<const ChordCandidate> chords)
{
    std::size_t count = 0;
    for (std::size_t i = 0; i < chords.size(); ++i)
        for (std::size_t j = i + 1; j < chords.size(); ++j)
            count += chords_cross(chords[i], chords[j]) ? 1 : 0;
    return count;
}

std::vector<ChordCandidate> candidates_for(const Graph& graph, std::span<const Arc> arcs, EdgeIndex edge)
{
    const Edge& e = graph.edge(edge);
    std::vector<std::size_t> from, to;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        if (arcs[i].node == e.source)
            from.push_back(i);
        else if (arcs[i].node == e.target)
            to.push_back(i);
    }
    auto by_start = [&](std::size_t a, std::size_t b) {
        return arcs[a].start != arcs[b].start ? arcs[a].start < arcs[b].start : a < b;
    };
    std::sort(from.begin(), from.end(), by_start);
    std::sort(to.begin(), to.end(), by_start);
    std::vector<ChordCandidate> out;
    for (std::size_t f : from)
        for (std::size_t t : to)
            out.push_back({edge, f, t, arcs[f].midpoint(), arcs[t].midpoint()});
    return out;
}

namespace {

void commit(ChordSet& set, const ChordCandidate& c, double delta)
{
    set.incidence[c.from_arc].push_back(set.chords.size());
    set.incidence[c.to_arc].push_back(set.chords.size());
    set.chords.push_back(c);
    set.cost += delta;
}

double insertion_delta(const ChordSet& set, const ChordCandidate& c)
{
    double delta = 0.0;
    for (const ChordCandidate& s : set.chords)
        delta += pair_cost(c, s);
    return delta;
}

std::vector<std::vector<ChordCandidate>> all_candidates(const Graph& graph, std::span<const Arc> arcs,
                                                        std::span<const EdgeIndex> edges)
{
    std::vector<EdgeIndex> sorted(edges.begin(), edges.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::vector<ChordCandidate>> out;
    for (EdgeIndex e : sorted) {
        out.push_back(candidates_for(graph, arcs, e));
        if (out.back().empty())
            throw InvariantError("edge '" + graph.node(graph.edge(e).source).id + "' -- '" +
                                 graph.node(graph.edge(e).target).id + "' has no candidate chord");
    }
    return out;
}

}  // namespace

ChordSet greedy_insert(const Graph& graph, std::span<const Arc> arcs, std::span<const EdgeIndex> edges)
{
    const auto cands = all_candidates(graph, arcs, edges);
    ChordSet set;
    set.incidence.resize(arcs.size());

    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        if (cands[i].size() == 1)
            commit(set, cands[i][0], insertion_delta(set, cands[i][0]));
        else
            pending.push_back(i);
    }

    constexpr double tie_eps = 1e-12;
    while (!pending.empty()) {
        std::size_t best_pos = 0;
        const ChordCandidate* best = nullptr;
        double best_delta = std::numeric_limits<double>::infinity();
        for (std::size_t p = 0; p < pending.size(); ++p) {
            for (const ChordCandidate& c : cands[pending[p]]) {
                const double delta = insertion_delta(set, c);
                if (delta < best_delta - tie_eps) {
                    best_delta = delta;
                    best = &c;
                    best_pos = p;
                }
            }
        }
        commit(set, *best, best_delta);
        pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best_pos));
    }
    return set;
}

ChordSet brute_force_chord_oracle(const Graph& graph, std::span<const Arc> arcs,
                                  std::span<const EdgeIndex> edges, std::size_t limit)
{
    const auto cands = all_candidates(graph, arcs, edges);
    double count = 1.0;
    for (const auto& c : cands)
        count *= static_cast<double>(c.size());
    if (count > static_cast<double>(limit))
        throw InputError("chord oracle refused: instance has too many assignments");

    const std::size_t m = cands.size();
    std::vector<ChordCandidate> current;
    current.reserve(m);
    std::vector<ChordCandidate> best_choice;
    double best_cost = std::numeric_limits<double>::infinity();

    // Depth-first over edges; the running cost adds each new chord against the chosen prefix.
    auto dfs = [&](auto&& self, std::size_t depth, double cost) -> void {
        if (depth == m) {
            if (cost < best_cost - 1e-12) {
                best_cost = cost;
                best_choice = current;
            }
            return;
        }
        for (const ChordCandidate& c : cands[depth]) {
            double delta = 0.0;
            for (const ChordCandidate& s : current)
                delta += pair_cost(c, s);
            current.push_back(c);
            self(self, depth + 1, cost + delta);
            current.pop_back();
        }
    };
    dfs(dfs, 0, 0.0);

    ChordSet set;
    set.incidence.resize(arcs.size());
    for (const ChordCandidate& c : best_choice)
        commit(set, c, insertion_delta(set, c));
    return set;
}

ChordSet first_candidate_assignment(const Graph& graph, std::span<const Arc> arcs,
                                    std::span<const EdgeIndex> edges)
{
    const auto cands = all_candidates(graph, arcs, edges);
    ChordSet set;
    set.incidence.resize(arcs.size());
    for (const auto& c : cands)
        commit(set, c.front(), insertion_delta(set, c.front()));
    return set;
}

std::vector<Chord> distribute_endpoints(const ChordSet& set, std::span<const Arc> arcs)
{
    std::vector<Chord> out;
    out.reserve(set.chords.size());
    for (const ChordCandidate& c : set.chords)
        out.push_back({c.edge, c.from_arc, c.to_arc, c.from_angle, c.to_angle});

    for (std::size_t a = 0; a < arcs.size(); ++a) {
        const auto& incident = a < set.incidence.size() ? set.incidence[a] : std::vector<std::size_t>{};
        if (incident.empty())
            continue;
        const double mid = arcs[a].midpoint();
        auto far_delta = [&](std::size_t ci) {
            const ChordCandidate& c = set.chords[ci];
            const double other = c.from_arc == a ? c.to_angle : c.from_angle;
            return ccw_delta(mid, other);
        };
        // Walking CCW along the arc, the far endpoints must walk CW: farthest-CCW target first.
        std::vector<std::size_t> order(incident.begin(), incident.end());
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t x, std::size_t y) { return far_delta(x) > far_delta(y); });
        const double k = static_cast<double>(order.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            const double angle = normalize_angle(arcs[a].start + arcs[a].span() * (static_cast<double>(i) + 1.0) / (k + 1.0));
            Chord& ch = out[order[i]];
            if (ch.from_arc == a)
                ch.from_angle = angle;
            else
                ch.to_angle = angle;
        }
    }
    return out;
}

std::size_t geometric_crossing_count(std::span<const Chord> chords)
{
    const Point o{};
    std::size_t count = 0;
    for (std::size_t i = 0; i < chords.size(); ++i) {
        for (std::size_t j = i + 1; j < chords.size(); ++j) {
            const Chord& a = chords[i];
            const Chord& b = chords[j];
            if (segments_intersect(on_circle(o, 1.0, a.from_angle), on_circle(o, 1.0, a.to_angle),
                                   on_circle(o, 1.0, b.from_angle), on_circle(o, 1.0, b.to_angle)))
                ++count;
        }
    }
    return count;
}

}  // namespace chordlink
