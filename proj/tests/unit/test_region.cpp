#include "doctest.h"

#include <algorithm>
#include <random>

#include "chordlink/region.hpp"
#include "fixtures.hpp"

using namespace chordlink;
using namespace chordlink::testing;

TEST_CASE("region is centered on the barycenter")
{
    const PositionMap pos{{0, {0, 0}}, {1, {4, 0}}, {2, {2, 6}}, {3, {50, 50}}};
    const std::vector<NodeIndex> members{0, 1, 2};
    const Region r = fit_region(pos, members);
    CHECK(r.center.x == doctest::Approx(2.0));
    CHECK(r.center.y == doctest::Approx(2.0));
    CHECK(r.radius == doctest::Approx(4.0 * 1.05));
    CHECK(is_circularly_separable(pos, r, Cluster{1, members}));
    const std::vector<NodeIndex> one{3};
    CHECK(fit_region(pos, one).radius == doctest::Approx(4.0 * kNodeGlyphRadius));
    const std::vector<NodeIndex> missing{7};
    CHECK_THROWS(fit_region(pos, missing));
}

TEST_CASE("displacement function")
{
    const double R = 10;
    CHECK(displaced_distance(0, R) == doctest::Approx(R));
    CHECK(displaced_distance(R, R) == doctest::Approx(1.5 * R));
    CHECK(displaced_distance(2 * R, R) == doctest::Approx(2 * R));
    for (double d = 0; d < 2 * R; d += 0.37)
        CHECK(displaced_distance(d + 0.1, R) > displaced_distance(d, R));
}

TEST_CASE("radial displacement empties the disk and keeps order and angles")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-30, 30);
    for (int trial = 0; trial < 50; ++trial) {
        const Graph g = make_graph(numbered_ids(30), {});
        PositionMap pos;
        for (NodeIndex n = 0; n < 30; ++n)
            pos[n] = {u(rng), u(rng)};
        const Cluster c{1, {0, 1, 2}};
        const Region r = fit_region(pos, c.members);
        PositionMap moved = pos;
        radial_displace(moved, r, c, g);

        std::vector<NodeIndex> outside;
        for (NodeIndex n = 3; n < 30; ++n) {
            CHECK(distance(moved[n], r.center) > r.radius);
            if (distance(pos[n], r.center) > 1e-9) {
                const double turn = std::remainder(angle_of(r.center, pos[n]) - angle_of(r.center, moved[n]), kTwoPi);
                CHECK(std::abs(turn) < 1e-12);
            }
            if (distance(pos[n], r.center) >= 2 * r.radius)
                CHECK(moved[n] == pos[n]);
            outside.push_back(n);
        }
        auto by = [&](const PositionMap& p) {
            auto v = outside;
            std::stable_sort(v.begin(), v.end(), [&](NodeIndex a, NodeIndex b) {
                return distance(p.at(a), r.center) < distance(p.at(b), r.center);
            });
            return v;
        };
        CHECK(by(pos) == by(moved));
        for (NodeIndex m : c.members)
            CHECK(moved[m] == pos[m]);
    }
}

TEST_CASE("node on the center escapes along a fixed ray")
{
    const Graph g = make_graph({"a", "b", "c"}, {});
    PositionMap pos{{0, {-5, 0}}, {1, {5, 0}}, {2, {0, 0}}};
    const Cluster c{1, {0, 1}};
    const Region r = fit_region(pos, c.members);
    PositionMap a = pos, b = pos;
    radial_displace(a, r, c, g);
    radial_displace(b, r, c, g);
    CHECK(a == b);
    CHECK(distance(a[2], r.center) > r.radius);
}
