#include "chordlink/merging.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "chordlink/error.hpp"

namespace chordlink {

std::vector<Run> find_runs(std::span<const Copy> copies)
{
    const std::size_t n = copies.size();
    std::vector<Run> runs;
    if (n == 0)
        return runs;
    std::size_t start = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (copies[(i + n - 1) % n].node != copies[i].node) {
            start = i;
            break;
        }
    }
    if (start == n)
        return {Run{copies[0].node, 0, n - 1, n}};
    for (std::size_t step = 0; step < n; ++step) {
        const std::size_t idx = (start + step) % n;
        if (!runs.empty() && runs.back().node == copies[idx].node) {
            runs.back().last = idx;
            ++runs.back().size;
        } else {
            runs.push_back({copies[idx].node, idx, idx, 1});
        }
    }
    return runs;
}

namespace {

/// Arc boundaries live on an unwrapped axis: run j occupies [lo_j, hi_j] and boundary b_j
/// (end of arc j) must stay in [hi_j, lo_{j+1} - gap_j].
struct Layout1D {
    std::vector<double> run_lo;
    std::vector<double> run_hi;
    std::vector<double> target;
    std::vector<double> gap;  // gap_j follows arc j
    double min_length = 0.0;
};

double arc_length(const Layout1D& L, const std::vector<double>& b, std::size_t j)
{
    const std::size_t n = b.size();
    const double prev = j == 0 ? b[n - 1] - kTwoPi : b[j - 1];
    return b[j] - prev - L.gap[(j + n - 1) % n];
}

/// Minimizes sum (len - target)^2 plus a stiff penalty below min_length by cyclic coordinate
/// descent over the boxed boundaries.
void relax(const Layout1D& L, std::vector<double>& b)
{
    const std::size_t n = b.size();
    constexpr double penalty = 1e4;
    auto convex_root = [&](double lo, double hi, double A, double B, double t1, double t2) {
        // derivative of (b-A-t1)^2 + P*max(0,m-(b-A))^2 + (B-b-t2)^2 + P*max(0,m-(B-b))^2
        auto dphi = [&](double x) {
            const double l1 = x - A;
            const double l2 = B - x;
            double d = (l1 - t1) - (l2 - t2);
            if (l1 < L.min_length)
                d -= penalty * (L.min_length - l1);
            if (l2 < L.min_length)
                d += penalty * (L.min_length - l2);
            return d;
        };
        // Honor the minimum exactly where the box leaves room; the penalty covers the rest.
        const double lo_hard = std::max(lo, A + L.min_length);
        const double hi_hard = std::min(hi, B - L.min_length);
        if (lo_hard <= hi_hard) {
            lo = lo_hard;
            hi = hi_hard;
        }
        if (dphi(lo) >= 0.0)
            return lo;
        if (dphi(hi) <= 0.0)
            return hi;
        for (int it = 0; it < 100 && hi - lo > 1e-15; ++it) {
            const double mid = 0.5 * (lo + hi);
            (dphi(mid) > 0.0 ? hi : lo) = mid;
        }
        return 0.5 * (lo + hi);
    };
    for (int sweep = 0; sweep < 20000; ++sweep) {
        double moved = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t nj = (j + 1) % n;
            const double A = (j == 0 ? b[n - 1] - kTwoPi : b[j - 1]) + L.gap[(j + n - 1) % n];
            const double B = (j == n - 1 ? b[0] + kTwoPi : b[j + 1]) - L.gap[nj];
            const double lo = L.run_hi[j];
            const double hi = (j == n - 1 ? L.run_lo[0] + kTwoPi : L.run_lo[nj]) - L.gap[j];
            const double x = convex_root(lo, hi, A, B, L.target[j], L.target[nj]);
            moved = std::max(moved, std::abs(x - b[j]));
            b[j] = x;
        }
        if (moved < 1e-13)
            break;
    }
}

}  // namespace

MergeResult merge_runs(std::vector<Copy>& copies, std::span<const double> run_weight,
                       const MergeOptions& options)
{
    const auto runs = find_runs(copies);
    MergeResult out;
    if (runs.size() != run_weight.size())
        throw InvariantError("merge_runs: one weight per run expected");
    const std::size_t n = runs.size();
    if (n == 0)
        return out;

    // Unwrapped copy spans, starting from the first run's first copy.
    Layout1D L;
    const double origin = copies[runs[0].first].angle;
    for (const Run& r : runs) {
        double lo = origin + ccw_delta(origin, copies[r.first].angle);
        if (!L.run_lo.empty() && lo < L.run_hi.back())
            lo += kTwoPi;
        L.run_lo.push_back(lo);
        L.run_hi.push_back(lo + ccw_delta(copies[r.first].angle, copies[r.last].angle));
    }

    std::vector<double> free_span(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double next_lo = j + 1 < n ? L.run_lo[j + 1] : L.run_lo[0] + kTwoPi;
        free_span[j] = next_lo - L.run_hi[j];
    }

    double covered = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        covered += std::max(L.run_hi[j] - L.run_lo[j], options.min_length);

    // The nominal gap shrinks when the whole circle is short; a boundary whose neighboring
    // copies sit closer than two gaps gets half its free span.
    out.gap = options.gap;
    const double nominal_total = n > 1 ? static_cast<double>(n) * options.gap : 0.0;
    if (nominal_total > 0.0 && covered + nominal_total > kTwoPi) {
        out.gap = options.gap * std::max(0.25, (kTwoPi - covered) / nominal_total);
        out.crowded = true;
        out.warnings.push_back("boundary too crowded for the requested arc gap; gap shrunk");
    }
    L.gap.assign(n, 0.0);
    if (n > 1)
        for (std::size_t j = 0; j < n; ++j)
            L.gap[j] = std::min(out.gap, 0.5 * free_span[j]);
    const double usable = kTwoPi - std::accumulate(L.gap.begin(), L.gap.end(), 0.0);
    out.min_length = options.min_length;
    if (covered > usable) {
        // Shrink the minimum so that the coverage floor fits.
        double lo = 0.0, hi = options.min_length;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            double need = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                need += std::max(L.run_hi[j] - L.run_lo[j], mid);
            (need > usable ? hi : lo) = mid;
        }
        out.min_length = lo;
        out.crowded = true;
        out.warnings.push_back("boundary too crowded for the minimum arc length; minimum shrunk");
    }
    L.min_length = out.min_length;

    double weight_sum = 0.0;
    std::vector<double> w(n);
    for (std::size_t j = 0; j < n; ++j) {
        w[j] = run_weight[j] > 0.0 ? run_weight[j] : options.zero_degree_weight;
        weight_sum += w[j];
    }
    L.target.resize(n);
    for (std::size_t j = 0; j < n; ++j)
        L.target[j] = w[j] / weight_sum * usable;

    std::vector<double> b(n);
    if (n == 1) {
        b[0] = L.run_hi[0] + 0.5 * (free_span[0] - out.gap);
    } else {
        // Ideal proportional boundaries shifted by a common offset; if some offset satisfies
        // every box, the answer is exact. Otherwise start from the clamped ideal and relax.
        std::vector<double> ideal(n);
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            acc += L.target[j] + (j == 0 ? 0.0 : L.gap[j - 1]);
            ideal[j] = acc;
        }
        double shift_lo = -1e300, shift_hi = 1e300;
        for (std::size_t j = 0; j < n; ++j) {
            const double hi = (j + 1 < n ? L.run_lo[j + 1] : L.run_lo[0] + kTwoPi) - L.gap[j];
            shift_lo = std::max(shift_lo, L.run_hi[j] - ideal[j]);
            shift_hi = std::min(shift_hi, hi - ideal[j]);
        }
        const bool targets_fit = std::all_of(L.target.begin(), L.target.end(),
                                             [&](double t) { return t >= out.min_length; });
        const double shift = 0.5 * (shift_lo + shift_hi);
        for (std::size_t j = 0; j < n; ++j) {
            const double hi = (j + 1 < n ? L.run_lo[j + 1] : L.run_lo[0] + kTwoPi) - L.gap[j];
            b[j] = std::clamp(ideal[j] + shift, L.run_hi[j], hi);
        }
        if (!(shift_lo <= shift_hi && targets_fit))
            relax(L, b);
    }

    out.arcs.reserve(n);
    double shortest = kTwoPi;
    for (std::size_t j = 0; j < n; ++j) {
        Arc arc;
        arc.node = runs[j].node;
        arc.first_copy = runs[j].first;
        arc.last_copy = runs[j].last;
        const double len = n == 1 ? kTwoPi - out.gap : arc_length(L, b, j);
        const double end = b[j];
        arc.start = normalize_angle(end - len);
        arc.end = arc.start + len;
        shortest = std::min(shortest, len);
        out.arcs.push_back(arc);
    }
    if (shortest < out.min_length - 1e-12) {
        out.min_length = shortest;
        if (!out.crowded)
            out.warnings.push_back("copy positions prevent the minimum arc length; minimum shrunk");
        out.crowded = true;
    }

    for (std::size_t j = 0; j < n; ++j) {
        std::size_t idx = runs[j].first;
        for (std::size_t s = 0; s < runs[j].size; ++s) {
            copies[idx].arc = j;
            idx = (idx + 1) % copies.size();
        }
    }
    return out;
}

double palette_hue(std::size_t k)
{
    return std::fmod(static_cast<double>(k) * 137.50776405003785, 360.0);
}

namespace {

std::string hsl_hex(double hue, double sat, double light)
{
    const double c = (1.0 - std::abs(2.0 * light - 1.0)) * sat;
    const double hp = hue / 60.0;
    const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
    double r = 0, g = 0, b = 0;
    if (hp < 1) { r = c; g = x; }
    else if (hp < 2) { r = x; g = c; }
    else if (hp < 3) { g = c; b = x; }
    else if (hp < 4) { g = x; b = c; }
    else if (hp < 5) { r = x; b = c; }
    else { r = c; b = x; }
    const double m = light - 0.5 * c;
    auto channel = [&](double v) { return static_cast<int>(std::lround((v + m) * 255.0)); };
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", channel(r), channel(g), channel(b));
    return buf;
}

}  // namespace

std::map<NodeIndex, std::string> assign_colors(const Graph& graph, std::vector<Arc>& arcs)
{
    std::vector<NodeIndex> nodes;
    for (const Arc& a : arcs)
        nodes.push_back(a.node);
    std::sort(nodes.begin(), nodes.end(),
              [&](NodeIndex a, NodeIndex b) { return graph.node(a).id < graph.node(b).id; });
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    std::map<NodeIndex, std::string> colors;
    for (std::size_t k = 0; k < nodes.size(); ++k)
        colors.emplace(nodes[k], hsl_hex(palette_hue(k), 0.65, 0.5));
    for (Arc& a : arcs)
        a.color = colors.at(a.node);
    return colors;
}

}  // namespace chordlink
