#pragma once

#include <cmath>
#include <numbers>
#include <iterator>
#include <optional>

namespace chordlink {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
    Point operator+(Point o) const { return {x + o.x, y + o.y}; }
    Point operator-(Point o) const { return {x - o.x, y - o.y}; }
    Point operator*(double s) const { return {x * s, y * s}; }
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }

/// Maps any angle into [0, 2pi).
inline double normalize_angle(double a)
{
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0)
        r += kTwoPi;
    if (r >= kTwoPi)
        r = 0.0;
    return r;
}

/// CCW distance from `from` to `to`, in [0, 2pi).
inline double ccw_delta(double from, double to) { return normalize_angle(to - from); }

inline double angle_of(Point center, Point p) { return normalize_angle(std::atan2(p.y - center.y, p.x - center.x)); }

inline Point on_circle(Point center, double radius, double angle)
{
    return {center.x + radius * std::cos(angle), center.y + radius * std::sin(angle)};
}

/// True if `a` lies in the CCW interval [start, start + span].
inline bool angle_in_interval(double a, double start, double span, double eps = 1e-12)
{
    return ccw_delta(start, a) <= span + eps || ccw_delta(a, start) <= eps;
}

/// Intersection of segment outside->inside with the circle boundary. `outside` must be strictly
/// outside the disk and `inside` inside it; returns nullopt otherwise.
std::optional<Point> segment_circle_exit(Point outside, Point inside, Point center, double radius);

/// Proper intersection test for two closed segments that share no endpoint.
bool segments_intersect(Point a1, Point a2, Point b1, Point b2);

/// Perpendicular distance from p to the infinite line through a and b.
double distance_to_line(Point p, Point a, Point b);

/// Even-odd point-in-polygon; the polygon is implicitly closed.
template <typename Range>
bool point_in_polygon(Point p, const Range& poly)
{
    bool inside = false;
    const auto n = std::size(poly);
    if (n < 3)
        return false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point& a = poly[i];
        const Point& b = poly[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            double xi = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
            if (p.x < xi)
                inside = !inside;
        }
    }
    return inside;
}

}  // namespace chordlink
