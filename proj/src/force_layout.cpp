#include "chordlink/force_layout.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "chordlink/error.hpp"

namespace chordlink {

void ForceParams::validate() const
{
    if (iterations < 1)
        throw InputError("iterations must be >= 1");
    if (!(cooling > 0.0 && cooling <= 1.0))
        throw InputError("cooling must be in (0, 1]");
    if (!(stiffness > 0.0 && stiffness < 0.5))
        throw InputError("stiffness must be in (0, 0.5)");
    if (!(rest_length > 0.0) || !(repulsion >= 0.0) || !(repulsion_range >= 0.0))
        throw InputError("force constants must be non-negative and rest length positive");
}

namespace {

double unit(std::mt19937_64& rng)
{
    // 53 random bits; std::uniform_real_distribution is not specified bit-for-bit.
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<std::vector<NodeIndex>> components(const Graph& graph)
{
    std::vector<std::size_t> comp(graph.node_count(), SIZE_MAX);
    std::vector<std::vector<NodeIndex>> out;
    for (NodeIndex s = 0; s < graph.node_count(); ++s) {
        if (comp[s] != SIZE_MAX)
            continue;
        out.emplace_back();
        std::vector<NodeIndex> stack{s};
        comp[s] = out.size() - 1;
        while (!stack.empty()) {
            const NodeIndex n = stack.back();
            stack.pop_back();
            out.back().push_back(n);
            for (EdgeIndex e : graph.incident(n)) {
                const NodeIndex m = graph.edge(e).other(n);
                if (comp[m] == SIZE_MAX) {
                    comp[m] = out.size() - 1;
                    stack.push_back(m);
                }
            }
        }
        std::sort(out.back().begin(), out.back().end());
    }
    return out;
}

void relax_component(const Graph& graph, const std::vector<NodeIndex>& nodes, const ForceParams& p,
                     std::mt19937_64& rng, std::vector<Point>& pos, ForceTrace* trace)
{
    const std::size_t n = nodes.size();
    const double spread = p.rest_length * std::sqrt(static_cast<double>(n));
    for (NodeIndex v : nodes) {
        const double r = spread * std::sqrt(unit(rng));
        const double a = kTwoPi * unit(rng);
        pos[v] = {r * std::cos(a), r * std::sin(a)};
    }
    if (n == 1) {
        pos[nodes[0]] = {};
        return;
    }

    std::vector<std::size_t> local(graph.node_count(), SIZE_MAX);
    for (std::size_t i = 0; i < n; ++i)
        local[nodes[i]] = i;
    std::vector<EdgeIndex> edges;
    for (NodeIndex v : nodes)
        for (EdgeIndex e : graph.incident(v))
            if (graph.edge(e).source == v)
                edges.push_back(e);

    const double k2 = p.rest_length * p.rest_length;
    const double range = p.repulsion_range > 0.0 ? p.repulsion_range * p.rest_length : 1e300;
    double temperature = 0.1 * spread + p.rest_length;
    std::vector<Point> disp(n);
    for (int it = 0; it < p.iterations; ++it) {
        std::fill(disp.begin(), disp.end(), Point{});
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                Point d = pos[nodes[i]] - pos[nodes[j]];
                double dist = norm(d);
                if (dist < 1e-9) {
                    d = {1e-3 * static_cast<double>(j - i), 1e-3};
                    dist = norm(d);
                }
                if (dist > range)
                    continue;
                const Point f = d * (p.repulsion * k2 / (dist * dist));
                disp[i] = disp[i] + f;
                disp[j] = disp[j] - f;
            }
        }
        for (EdgeIndex e : edges) {
            const std::size_t i = local[graph.edge(e).source];
            const std::size_t j = local[graph.edge(e).target];
            const Point d = pos[nodes[j]] - pos[nodes[i]];
            const double dist = norm(d);
            if (dist < 1e-12)
                continue;
            const Point f = d * (p.stiffness * (dist - p.rest_length) / dist);
            disp[i] = disp[i] + f;
            disp[j] = disp[j] - f;
        }
        double max_move = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double len = norm(disp[i]);
            if (len == 0.0)
                continue;
            const double step = std::min(len, temperature);
            pos[nodes[i]] = pos[nodes[i]] + disp[i] * (step / len);
            max_move = std::max(max_move, step);
        }
        if (trace) {
            trace->temperature.push_back(temperature);
            trace->max_displacement.push_back(max_move);
        }
        temperature *= p.cooling;
    }
}

void enforce_separation(const std::vector<NodeIndex>& nodes, std::vector<Point>& pos, double min_sep)
{
    for (int pass = 0; pass < 50; ++pass) {
        bool clean = true;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            for (std::size_t j = i + 1; j < nodes.size(); ++j) {
                Point d = pos[nodes[j]] - pos[nodes[i]];
                double dist = norm(d);
                if (dist >= min_sep)
                    continue;
                clean = false;
                if (dist < 1e-12) {
                    d = {1.0, 0.0};
                    dist = 1.0;
                    pos[nodes[j]] = pos[nodes[i]];
                }
                const Point push = d * (0.5 * (min_sep - dist) / dist * 1.01);
                pos[nodes[i]] = pos[nodes[i]] - push;
                pos[nodes[j]] = pos[nodes[j]] + push;
            }
        }
        if (clean)
            return;
    }
}

}  // namespace

PositionMap force_layout(const Graph& graph, const ForceParams& params, ForceTrace* trace)
{
    params.validate();
    PositionMap out;
    if (graph.node_count() == 0)
        return out;

    std::mt19937_64 rng(params.seed);
    std::vector<Point> pos(graph.node_count());
    auto comps = components(graph);
    std::stable_sort(comps.begin(), comps.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });

    const double min_sep = 2.0 * kNodeGlyphRadius;
    struct Box {
        double x0, y0, x1, y1;
    };
    std::vector<Box> boxes;
    for (std::size_t c = 0; c < comps.size(); ++c) {
        relax_component(graph, comps[c], params, rng, pos, c == 0 ? trace : nullptr);
        enforce_separation(comps[c], pos, min_sep);
        Box b{1e300, 1e300, -1e300, -1e300};
        for (NodeIndex v : comps[c]) {
            b.x0 = std::min(b.x0, pos[v].x);
            b.y0 = std::min(b.y0, pos[v].y);
            b.x1 = std::max(b.x1, pos[v].x);
            b.y1 = std::max(b.y1, pos[v].y);
        }
        boxes.push_back(b);
    }

    // Shelf packing: rows no wider than the largest component (or a few rest lengths).
    double row_limit = params.rest_length * 4.0;
    for (const Box& b : boxes)
        row_limit = std::max(row_limit, b.x1 - b.x0);
    const double margin = params.rest_length;
    double cursor_x = 0.0, cursor_y = 0.0, row_height = 0.0;
    for (std::size_t c = 0; c < comps.size(); ++c) {
        const Box& b = boxes[c];
        const double w = b.x1 - b.x0, h = b.y1 - b.y0;
        if (cursor_x > 0.0 && cursor_x + w > row_limit) {
            cursor_x = 0.0;
            cursor_y += row_height + margin;
            row_height = 0.0;
        }
        const Point shift{cursor_x - b.x0, cursor_y - b.y0};
        for (NodeIndex v : comps[c])
            pos[v] = pos[v] + shift;
        cursor_x += w + margin;
        row_height = std::max(row_height, h);
    }

    double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
    for (const Point& p : pos) {
        x0 = std::min(x0, p.x);
        y0 = std::min(y0, p.y);
        x1 = std::max(x1, p.x);
        y1 = std::max(y1, p.y);
    }
    const Point center{0.5 * (x0 + x1), 0.5 * (y0 + y1)};
    for (NodeIndex v = 0; v < graph.node_count(); ++v)
        out.emplace(v, pos[v] - center);
    return out;
}

}  // namespace chordlink
