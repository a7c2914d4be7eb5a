#include "chordlink/svg_export.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "chordlink/pipeline.hpp"

namespace chordlink {

std::vector<std::size_t> thickness_classes(std::span<const double> weights)
{
    std::vector<double> sorted(weights.begin(), weights.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    std::vector<std::size_t> out;
    out.reserve(weights.size());
    for (double w : weights) {
        const auto lo = std::lower_bound(sorted.begin(), sorted.end(), w);
        const auto hi = std::upper_bound(sorted.begin(), sorted.end(), w);
        const double mid_rank = static_cast<double>(lo - sorted.begin()) + 0.5 * static_cast<double>(hi - lo);
        const auto cls = static_cast<std::size_t>(std::floor(mid_rank / n * kThicknessClasses));
        out.push_back(std::min(cls, kThicknessClasses - 1));
    }
    return out;
}

double stroke_width(std::size_t thickness_class)
{
    return 1.0 + 1.25 * static_cast<double>(thickness_class);
}

Point chord_control_point(Point from, Point to, Point center)
{
    const Point mid = (from + to) * 0.5;
    const Point toward = center - mid;
    const double dist = norm(toward);
    if (dist < 1e-12)
        return mid;
    // The curve's peak sits halfway to the control point.
    const double offset = std::min(2.0 * 0.15 * distance(from, to), dist);
    return mid + toward * (offset / dist);
}

namespace {

std::string xml_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

std::string num(double v)
{
    std::string s = fmt::format("{:.3f}", v);
    if (s == "-0.000")
        s = "0.000";
    return s;
}

}  // namespace

std::string export_svg(const LayoutState& state, const LabelPolicy& labels)
{
    const Graph& g = state.g();
    std::vector<double> weights;
    for (const Edge& e : g.edges())
        weights.push_back(e.weight);
    const auto classes = thickness_classes(weights);
    const auto shown = visible_labels(state, labels, state.view.zoom);

    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    bool any = false;
    auto grow = [&](Point p, double r) {
        if (!any) {
            x0 = p.x - r; x1 = p.x + r; y0 = p.y - r; y1 = p.y + r;
            any = true;
            return;
        }
        x0 = std::min(x0, p.x - r); x1 = std::max(x1, p.x + r);
        y0 = std::min(y0, p.y - r); y1 = std::max(y1, p.y + r);
    };
    for (const auto& [n, p] : state.free_positions)
        grow(p, kNodeGlyphRadius);
    for (const auto& [id, cl] : state.clusters)
        grow(cl.region.center, cl.region.radius + 4.0);
    const double margin = 20.0;
    x0 -= margin; y0 -= margin; x1 += margin; y1 += margin;

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
    out += fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">\n",
        num(x1 - x0), num(y1 - y0), num(x0), num(y0), num(x1 - x0), num(y1 - y0));

    std::string defs;
    std::string body;

    body += "<g class=\"edges\" stroke=\"#7f8c8d\" stroke-opacity=\"0.8\">\n";
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
        const auto seg = state.external_segment(e);
        if (!seg)
            continue;
        body += fmt::format(
            "  <line class=\"edge\" data-edge=\"{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke-width=\"{}\"/>\n", e,
            num(seg->first.x), num(seg->first.y), num(seg->second.x), num(seg->second.y),
            num(stroke_width(classes[e])));
    }
    body += "</g>\n";

    body += "<g class=\"clusters\">\n";
    for (const auto& [id, cl] : state.clusters) {
        const Point c = cl.region.center;
        const double r = cl.region.radius;
        if (cl.collapsed) {
            body += fmt::format(
                "  <circle class=\"cluster-node\" data-cluster=\"{}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#34495e\"/>\n", id,
                num(c.x), num(c.y), num(collapsed_glyph_radius(cl.cluster.members.size())));
            continue;
        }
        body += fmt::format("  <g class=\"chord-diagram\" data-cluster=\"{}\">\n", id);
        for (std::size_t i = 0; i < cl.chords.size(); ++i) {
            const Chord& ch = cl.chords[i];
            const Point a = on_circle(c, r, ch.from_angle);
            const Point b = on_circle(c, r, ch.to_angle);
            const Point q = chord_control_point(a, b, c);
            const std::string grad = fmt::format("chord-{}-{}", id, i);
            defs += fmt::format(
                "  <linearGradient id=\"{}\" gradientUnits=\"userSpaceOnUse\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\">"
                "<stop offset=\"0\" stop-color=\"{}\"/><stop offset=\"1\" stop-color=\"{}\"/></linearGradient>\n",
                grad, num(a.x), num(a.y), num(b.x), num(b.y), cl.arcs[ch.from_arc].color, cl.arcs[ch.to_arc].color);
            body += fmt::format(
                "    <path class=\"chord\" data-edge=\"{}\" data-from-angle=\"{:.17g}\" data-to-angle=\"{:.17g}\" "
                "d=\"M {} {} Q {} {} {} {}\" fill=\"none\" stroke=\"url(#{})\" stroke-width=\"{}\"/>\n",
                ch.edge, ch.from_angle, ch.to_angle, num(a.x), num(a.y), num(q.x), num(q.y), num(b.x), num(b.y), grad,
                num(stroke_width(classes[ch.edge])));
        }
        for (const Arc& arc : cl.arcs) {
            const Point a = on_circle(c, r, arc.start);
            const Point b = on_circle(c, r, arc.end);
            body += fmt::format(
                "    <path class=\"arc\" data-node=\"{}\" d=\"M {} {} A {} {} 0 {} 1 {} {}\" fill=\"none\" stroke=\"{}\" "
                "stroke-width=\"6\"/>\n",
                xml_escape(g.node(arc.node).id), num(a.x), num(a.y), num(r), num(r), arc.span() > std::numbers::pi ? 1 : 0,
                num(b.x), num(b.y), arc.color);
        }
        body += "  </g>\n";
    }
    body += "</g>\n";

    body += "<g class=\"nodes\" fill=\"#2c3e50\">\n";
    for (const auto& [n, p] : state.free_positions)
        body += fmt::format("  <circle class=\"node\" data-node=\"{}\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>\n",
                            xml_escape(g.node(n).id), num(p.x), num(p.y), num(kNodeGlyphRadius));
    body += "</g>\n";

    body += "<g class=\"labels\" font-family=\"sans-serif\" font-size=\"10\" fill=\"#222\">\n";
    for (NodeIndex n : shown) {
        Point at;
        if (auto it = state.free_positions.find(n); it != state.free_positions.end()) {
            at = it->second + Point{kNodeGlyphRadius + 2.0, -kNodeGlyphRadius - 2.0};
        } else {
            const ClusterLayout& cl = state.clusters.at(*state.cluster_of(n));
            if (cl.collapsed)
                continue;
            const Arc* longest = nullptr;
            for (const Arc& a : cl.arcs)
                if (a.node == n && (!longest || a.span() > longest->span()))
                    longest = &a;
            if (!longest)
                continue;
            at = on_circle(cl.region.center, cl.region.radius + 10.0, longest->midpoint());
        }
        body += fmt::format("  <text data-node=\"{}\" x=\"{}\" y=\"{}\">{}</text>\n", xml_escape(g.node(n).id),
                            num(at.x), num(at.y), xml_escape(g.node(n).label));
    }
    body += "</g>\n";

    if (!defs.empty())
        out += "<defs>\n" + defs + "</defs>\n";
    out += body;
    out += "</svg>\n";
    return out;
}

}  // namespace chordlink
