#pragma once

// Geometric primitives for disc and quadratic-curve families.
//
// All predicates are evaluated in double precision against an explicit
// Tolerance. Touching configurations are not "one intersection point": they
// raise TangencyError, and families that contain them are rejected by
// validate_general_position.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "ucb/errors.hpp"

namespace ucb {

using MemberId = std::int32_t;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
    friend auto operator<=>(const Point&, const Point&) = default;
};

// Closed disc bounded by the circle of radius r around (cx, cy).
struct Circle {
    MemberId id = 0;
    double cx = 0.0;
    double cy = 0.0;
    double r = 1.0;

    friend bool operator==(const Circle&, const Circle&) = default;
};

// Graph of y = a*x^2 + b*x + c. a == 0 is a line.
struct QuadCurve {
    MemberId id = 0;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    double operator()(double x) const noexcept { return (a * x + b) * x + c; }

    friend bool operator==(const QuadCurve&, const QuadCurve&) = default;
};

struct Tolerance {
    double eps = 1e-9;

    // Default tolerance for a family whose extent (bounding-box diameter) is given.
    static Tolerance for_extent(double diameter) { return Tolerance{1e-9 * diameter}; }

    friend bool operator==(const Tolerance&, const Tolerance&) = default;
};

enum class Containment { Inside, Boundary, Outside };
enum class AboveStatus { Above, On, Below };

inline bool is_valid(const Circle& c) noexcept {
    return std::isfinite(c.cx) && std::isfinite(c.cy) && std::isfinite(c.r) && c.r > 0.0;
}

inline bool is_valid(const QuadCurve& q) noexcept {
    return std::isfinite(q.a) && std::isfinite(q.b) && std::isfinite(q.c);
}

namespace detail {

inline std::string describe(const Circle& c) {
    std::ostringstream os;
    os.precision(17);
    os << "circle#" << c.id << "(" << c.cx << "," << c.cy << ";r=" << c.r << ")";
    return os.str();
}

inline std::string describe(const QuadCurve& q) {
    std::ostringstream os;
    os.precision(17);
    os << "curve#" << q.id << "(" << q.a << "x^2+" << q.b << "x+" << q.c << ")";
    return os.str();
}

inline void sort_points(std::vector<Point>& pts) { std::sort(pts.begin(), pts.end()); }

}  // namespace detail

// Crossing points of two circle boundaries: always 0 or 2 points, sorted by (x, y).
inline std::vector<Point> circle_circle_intersections(const Circle& c1, const Circle& c2,
                                                      const Tolerance& tol) {
    const double dx = c2.cx - c1.cx;
    const double dy = c2.cy - c1.cy;
    const double d = std::hypot(dx, dy);
    const double eps = tol.eps;

    if (d <= eps && std::abs(c1.r - c2.r) <= eps) {
        throw CoincidentError(detail::describe(c1) + " coincides with " + detail::describe(c2));
    }
    if (std::abs(d - (c1.r + c2.r)) <= eps || std::abs(d - std::abs(c1.r - c2.r)) <= eps) {
        throw TangencyError(detail::describe(c1) + " is tangent to " + detail::describe(c2));
    }
    if (d > c1.r + c2.r || d < std::abs(c1.r - c2.r)) {
        return {};
    }

    // Foot of the chord on the center line, measured from c1.
    const double along = (d * d + c1.r * c1.r - c2.r * c2.r) / (2.0 * d);
    const double half_chord = std::sqrt(std::max(0.0, c1.r * c1.r - along * along));
    const double ux = dx / d;
    const double uy = dy / d;
    const double mx = c1.cx + along * ux;
    const double my = c1.cy + along * uy;

    std::vector<Point> pts{{mx - half_chord * uy, my + half_chord * ux},
                           {mx + half_chord * uy, my - half_chord * ux}};
    detail::sort_points(pts);
    return pts;
}

// Real roots of the difference polynomial q1 - q2, sorted ascending.
//
// The pair is tangent when the difference polynomial comes within eps of zero
// at its extremum without producing two well separated roots, i.e. when the
// vertical gap |D| / (4|da|) at the vertex is at most eps.
inline std::vector<double> curve_curve_abscissae(const QuadCurve& q1, const QuadCurve& q2,
                                                 const Tolerance& tol) {
    const double da = q1.a - q2.a;
    const double db = q1.b - q2.b;
    const double dc = q1.c - q2.c;
    const double eps = tol.eps;

    if (std::abs(da) <= eps && std::abs(db) <= eps && std::abs(dc) <= eps) {
        throw CoincidentError(detail::describe(q1) + " coincides with " + detail::describe(q2));
    }
    if (da == 0.0) {
        if (db == 0.0) {
            return {};
        }
        return {-dc / db};
    }

    const double disc = db * db - 4.0 * da * dc;
    if (std::abs(disc) / (4.0 * std::abs(da)) <= eps) {
        throw TangencyError(detail::describe(q1) + " is tangent to " + detail::describe(q2));
    }
    if (disc < 0.0) {
        return {};
    }
    // Cancellation-free quadratic formula.
    const double sq = std::sqrt(disc);
    const double t = -0.5 * (db + std::copysign(sq, db));
    double r1 = t / da;
    double r2 = (t != 0.0) ? dc / t : -r1;
    if (r1 > r2) {
        std::swap(r1, r2);
    }
    return {r1, r2};
}

// Intersection points of two quadratic curves: 0, 1 or 2 points sorted by x.
// The y value is the mean of both curves at the root, splitting the residual.
inline std::vector<Point> curve_curve_intersections(const QuadCurve& q1, const QuadCurve& q2,
                                                    const Tolerance& tol) {
    std::vector<Point> pts;
    for (double x : curve_curve_abscissae(q1, q2, tol)) {
        pts.push_back({x, 0.5 * (q1(x) + q2(x))});
    }
    return pts;
}

inline Containment contains_point(const Circle& c, const Point& p, const Tolerance& tol) {
    const double dist = std::hypot(p.x - c.cx, p.y - c.cy);
    if (dist < c.r - tol.eps) {
        return Containment::Inside;
    }
    if (std::abs(dist - c.r) <= tol.eps) {
        return Containment::Boundary;
    }
    return Containment::Outside;
}

inline AboveStatus above_status(const QuadCurve& q, const Point& p, const Tolerance& tol) {
    const double gap = p.y - q(p.x);
    if (std::abs(gap) <= tol.eps) {
        return AboveStatus::On;
    }
    return gap > 0.0 ? AboveStatus::Above : AboveStatus::Below;
}

// Axis-aligned box; empty until the first expand().
struct BoundingBox {
    double min_x = INFINITY;
    double min_y = INFINITY;
    double max_x = -INFINITY;
    double max_y = -INFINITY;

    bool empty() const noexcept { return min_x > max_x; }

    void expand(double x, double y) noexcept {
        min_x = std::min(min_x, x);
        min_y = std::min(min_y, y);
        max_x = std::max(max_x, x);
        max_y = std::max(max_y, y);
    }

    void expand(const Circle& c) noexcept {
        expand(c.cx - c.r, c.cy - c.r);
        expand(c.cx + c.r, c.cy + c.r);
    }

    double diameter() const noexcept { return empty() ? 0.0 : std::hypot(max_x - min_x, max_y - min_y); }
};

}  // namespace ucb
