#include "chordlink/region.hpp"

#include <algorithm>
#include <cstdint>
#include <string_view>

#include "chordlink/error.hpp"

namespace chordlink {

namespace {

std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

double max_member_distance(const PositionMap& positions, std::span<const NodeIndex> members,
                           Point center)
{
    double r = 0.0;
    for (NodeIndex n : members)
        r = std::max(r, distance(positions.at(n), center));
    return r;
}

}  // namespace

Region fit_region(const PositionMap& positions, std::span<const NodeIndex> members,
                  const RegionOptions& options)
{
    if (members.empty())
        throw InputError("cannot fit a region to an empty selection");
    Point sum;
    for (NodeIndex n : members) {
        auto it = positions.find(n);
        if (it == positions.end())
            throw InputError("selected node has no free position");
        sum = sum + it->second;
    }
    Region region{sum * (1.0 / static_cast<double>(members.size())), 0.0};
    const double spread = max_member_distance(positions, members, region.center);
    region.radius = spread < 1e-9 ? options.min_radius : spread * options.margin;

    const bool member_on_center = std::any_of(members.begin(), members.end(), [&](NodeIndex n) {
        return distance(positions.at(n), region.center) <= 1e-9;
    });
    if (member_on_center) {
        // Fixed direction keeps the perturbation reproducible.
        const double offset = 1e-6 * region.radius;
        region.center = region.center + Point{offset * 0.6, offset * 0.8};
        region.radius = std::max(region.radius,
                                 max_member_distance(positions, members, region.center) * options.margin);
    }
    return region;
}

bool is_circularly_separable(const PositionMap& positions, const Region& region,
                             const Cluster& cluster)
{
    for (const auto& [n, p] : positions) {
        if (!cluster.contains(n) && region.contains(p))
            return false;
    }
    return true;
}

double displaced_distance(double d, double radius)
{
    const double cutoff = 2.0 * radius;
    if (d >= cutoff)
        return d;
    return d + radius * (1.0 - d / cutoff);
}

void radial_displace(PositionMap& positions, const Region& region, const Cluster& cluster,
                     const Graph& graph)
{
    const double cutoff = 2.0 * region.radius;
    for (auto& [n, p] : positions) {
        if (cluster.contains(n))
            continue;
        const Point rel = p - region.center;
        const double d = norm(rel);
        if (d >= cutoff)
            continue;
        Point dir;
        double target;
        if (d == 0.0) {
            const double a = static_cast<double>(fnv1a(graph.node(n).id) % 1000003ULL) /
                             1000003.0 * kTwoPi;
            dir = {std::cos(a), std::sin(a)};
            target = displaced_distance(1e-9 * region.radius, region.radius);
        } else {
            dir = rel * (1.0 / d);
            target = displaced_distance(d, region.radius);
        }
        Point moved = region.center + dir * target;
        // Rounding on the way back to Cartesian coordinates must not land on the boundary.
        while (distance(moved, region.center) <= region.radius) {
            target *= 1.0 + 1e-12;
            moved = region.center + dir * target;
        }
        p = moved;
    }
}

}  // namespace chordlink
