#include "chordlink/geometry.hpp"

#include <algorithm>

namespace chordlink {

std::optional<Point> segment_circle_exit(Point outside, Point inside, Point center, double radius)
{
    // Solve |outside + t (inside - outside) - center| = radius for t in [0, 1].
    const Point d = inside - outside;
    const Point f = outside - center;
    const double a = dot(d, d);
    const double b = 2.0 * dot(f, d);
    const double c = dot(f, f) - radius * radius;
    if (a == 0.0 || c <= 0.0)
        return std::nullopt;
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0)
        return std::nullopt;
    const double sq = std::sqrt(disc);
    // Smaller root: first contact walking from the outside endpoint. Use the
    // numerically stable form to avoid cancellation.
    const double q = -0.5 * (b + std::copysign(sq, b));
    double t0 = q / a;
    double t1 = c / q;
    if (t0 > t1)
        std::swap(t0, t1);
    if (t0 < 0.0 || t0 > 1.0)
        return std::nullopt;
    return outside + d * t0;
}

bool segments_intersect(Point a1, Point a2, Point b1, Point b2)
{
    const double d1 = cross(a2 - a1, b1 - a1);
    const double d2 = cross(a2 - a1, b2 - a1);
    const double d3 = cross(b2 - b1, a1 - b1);
    const double d4 = cross(b2 - b1, a2 - b1);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 &&
           d4 != 0;
}

double distance_to_line(Point p, Point a, Point b)
{
    const Point d = b - a;
    const double len = norm(d);
    if (len == 0.0)
        return distance(p, a);
    return std::abs(cross(d, p - a)) / len;
}

}  // namespace chordlink
