#include "doctest.h"

#include <array>

#include "chordlink/geometry.hpp"

using namespace chordlink;

TEST_CASE("angles normalize into [0, 2pi)")
{
    CHECK(normalize_angle(-0.5) == doctest::Approx(kTwoPi - 0.5));
    CHECK(normalize_angle(kTwoPi) == 0.0);
    CHECK(normalize_angle(3 * kTwoPi + 1.0) == doctest::Approx(1.0));
    CHECK(ccw_delta(kTwoPi - 0.1, 0.1) == doctest::Approx(0.2));
    CHECK(angle_in_interval(0.05, kTwoPi - 0.1, 0.2));
    CHECK_FALSE(angle_in_interval(0.2, kTwoPi - 0.1, 0.2));
}

TEST_CASE("segment leaves the circle on its supporting line")
{
    const Point c{1, 2};
    const Point out{11, 7};
    const Point in{1.5, 2.5};
    const auto p = segment_circle_exit(out, in, c, 3.0);
    REQUIRE(p);
    CHECK(distance(*p, c) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(distance_to_line(*p, out, in) < 1e-12);
    CHECK(dot(*p - in, out - in) > 0);
    CHECK_FALSE(segment_circle_exit(in, out, c, 3.0));
}

TEST_CASE("segment intersection is proper")
{
    CHECK(segments_intersect({0, 0}, {2, 2}, {0, 2}, {2, 0}));
    CHECK_FALSE(segments_intersect({0, 0}, {1, 1}, {2, 0}, {3, 1}));
    CHECK_FALSE(segments_intersect({0, 0}, {1, 0}, {2, 0}, {3, 0}));
}

TEST_CASE("point in polygon")
{
    const std::array<Point, 4> square{{{0, 0}, {4, 0}, {4, 4}, {0, 4}}};
    CHECK(point_in_polygon(Point{1, 1}, square));
    CHECK_FALSE(point_in_polygon(Point{5, 1}, square));
    const std::array<Point, 6> ell{{{0, 0}, {4, 0}, {4, 1}, {1, 1}, {1, 4}, {0, 4}}};
    CHECK(point_in_polygon(Point{0.5, 3}, ell));
    CHECK_FALSE(point_in_polygon(Point{3, 3}, ell));
}
