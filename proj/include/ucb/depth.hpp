#pragma once

// Boundary intersection points of a family, their depths, the union
// complexity, and the depth profile g(F, k) = #{points of depth <= k}.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ucb/errors.hpp"
#include "ucb/family.hpp"
#include "ucb/geom.hpp"
#include "ucb/report.hpp"
#include "ucb/spatial_grid.hpp"

namespace ucb {

struct IntersectionPoint {
    Point p;
    MemberId a = 0;  // definers, a < b
    MemberId b = 0;
    // Discs: members whose closed disc contains p, both definers included.
    int depth = 0;
    // Curves: members other than the definers that p lies strictly above.
    int above_count = 0;

    friend bool operator==(const IntersectionPoint&, const IntersectionPoint&) = default;
};

enum class DepthMethod {
    Auto,  // grid for n >= 500, scan otherwise
    Scan,  // test every member
    Grid,  // bucket members by bounding box first
};

namespace detail {

inline int disc_depth(std::span<const Circle> discs, const Tolerance& tol, const Point& p, MemberId a,
                      MemberId b) {
    int depth = 2;
    for (const Circle& c : discs) {
        if (c.id != a && c.id != b && contains_point(c, p, tol) == Containment::Inside) {
            ++depth;
        }
    }
    return depth;
}

inline int disc_depth(std::span<const Circle> discs, const DiscGrid& grid, const Tolerance& tol, const Point& p,
                      MemberId a, MemberId b) {
    int depth = 2;
    grid.for_each_candidate(p, [&](std::size_t i) {
        const Circle& c = discs[i];
        if (c.id != a && c.id != b && contains_point(c, p, tol) == Containment::Inside) {
            ++depth;
        }
    });
    return depth;
}

inline void require_discs(const Family& f, const char* op) {
    if (!f.is_discs()) {
        throw KindError(std::string(op) + " requires a discs family");
    }
}

}  // namespace detail

// Pairwise boundary intersections ordered by (a, b, x, y), annotated with
// depth (discs) or above_count (curves).
inline std::vector<IntersectionPoint> intersection_points(const Family& f, DepthMethod method = DepthMethod::Auto) {
    const Tolerance& tol = f.tol();
    std::vector<IntersectionPoint> out;
    if (f.is_discs()) {
        const auto discs = f.discs();
        for (std::size_t i = 0; i < discs.size(); ++i) {
            for (std::size_t j = i + 1; j < discs.size(); ++j) {
                for (const Point& p : circle_circle_intersections(discs[i], discs[j], tol)) {
                    out.push_back({p, discs[i].id, discs[j].id, 0, 0});
                }
            }
        }
        const bool use_grid = method == DepthMethod::Grid || (method == DepthMethod::Auto && discs.size() >= 500);
        if (use_grid) {
            const DiscGrid grid(discs, 2.0 * tol.eps);
            for (auto& ip : out) {
                ip.depth = detail::disc_depth(discs, grid, tol, ip.p, ip.a, ip.b);
            }
        } else {
            for (auto& ip : out) {
                ip.depth = detail::disc_depth(discs, tol, ip.p, ip.a, ip.b);
            }
        }
        return out;
    }

    const auto curves = f.curves();
    for (std::size_t i = 0; i < curves.size(); ++i) {
        for (std::size_t j = i + 1; j < curves.size(); ++j) {
            for (const Point& p : curve_curve_intersections(curves[i], curves[j], tol)) {
                IntersectionPoint ip{p, curves[i].id, curves[j].id, 0, 0};
                for (const QuadCurve& q : curves) {
                    if (q.id != ip.a && q.id != ip.b && above_status(q, p, tol) == AboveStatus::Above) {
                        ++ip.above_count;
                    }
                }
                out.push_back(ip);
            }
        }
    }
    return out;
}

// Points of depth exactly 2 are the vertices of the union boundary.
inline std::size_t union_complexity(std::span<const IntersectionPoint> points) {
    return static_cast<std::size_t>(
        std::count_if(points.begin(), points.end(), [](const IntersectionPoint& ip) { return ip.depth == 2; }));
}

inline std::size_t union_complexity(const Family& f) {
    detail::require_discs(f, "union_complexity");
    return union_complexity(intersection_points(f));
}

struct DepthProfile {
    // (k, g(F,k)) for k = 2 .. max(2, max_depth), ascending.
    std::vector<std::pair<int, std::size_t>> g;
    std::size_t total = 0;  // |Z|
    int max_depth = 0;      // 0 when Z is empty

    // g(F, k) for any k >= 2.
    std::size_t at(int k) const {
        if (g.empty() || k < g.front().first) {
            return 0;
        }
        if (k >= g.back().first) {
            return g.back().second;
        }
        return g[static_cast<std::size_t>(k - g.front().first)].second;
    }

    std::string to_csv() const {
        std::string s = "k,g\n";
        for (const auto& [k, count] : g) {
            s += std::to_string(k) + "," + std::to_string(count) + "\n";
        }
        return s;
    }
};

inline DepthProfile depth_profile(std::span<const IntersectionPoint> points) {
    DepthProfile prof;
    prof.total = points.size();
    for (const auto& ip : points) {
        prof.max_depth = std::max(prof.max_depth, ip.depth);
    }
    const int top = std::max(2, prof.max_depth);
    std::vector<std::size_t> hist(static_cast<std::size_t>(top) + 1, 0);
    for (const auto& ip : points) {
        ++hist[static_cast<std::size_t>(ip.depth)];
    }
    std::size_t running = 0;
    for (int k = 2; k <= top; ++k) {
        running += hist[static_cast<std::size_t>(k)];
        prof.g.emplace_back(k, running);
    }
    return prof;
}

inline DepthProfile depth_profile(const Family& f) {
    detail::require_discs(f, "depth_profile");
    const auto pts = intersection_points(f);
    return depth_profile(pts);
}

struct DepthBoundRow {
    int k = 2;
    std::size_t g = 0;
    double ratio = 0.0;       // g / (k n)
    double bound_3ekn = 0.0;  // flagged when exceeded
    double bound_6ekn = 0.0;  // proven; exceeding it fails

    bool flagged() const noexcept { return static_cast<double>(g) > bound_3ekn; }
};

struct DepthBoundReport {
    std::size_t n = 0;
    std::size_t intersections = 0;
    std::size_t union_complexity = 0;
    int max_depth = 0;
    std::optional<int> omega;
    std::vector<DepthBoundRow> rows;
    double max_ratio = 0.0;  // max over rows of g/(kn)
    BoundReport bounds;

    bool passed() const { return bounds.passed(); }
    bool flagged() const { return !bounds.flags().empty(); }
};

// Union complexity against 6n-12, g(F,k) against 3ekn (soft) and 6ekn, and
// max depth against the clique number when one is supplied.
inline DepthBoundReport check_depth_bounds(const Family& f, std::span<const IntersectionPoint> points,
                                           std::optional<int> omega = std::nullopt) {
    detail::require_discs(f, "check_depth_bounds");
    DepthBoundReport rep;
    rep.n = f.size();
    rep.intersections = points.size();
    rep.union_complexity = union_complexity(points);
    const DepthProfile prof = depth_profile(points);
    rep.max_depth = prof.max_depth;
    rep.omega = omega;

    const double n = static_cast<double>(rep.n);
    if (rep.n < 3) {
        rep.bounds.notes.push_back("n < 3: union complexity and g(F,k) bounds are vacuous");
    } else {
        rep.bounds.add("union_complexity <= 6n-12", static_cast<double>(rep.union_complexity), Relation::LessEqual,
                       6.0 * n - 12.0);
        for (const auto& [k, g] : prof.g) {
            DepthBoundRow row;
            row.k = k;
            row.g = g;
            row.ratio = static_cast<double>(g) / (k * n);
            row.bound_3ekn = 3.0 * std::numbers::e * k * n;
            row.bound_6ekn = 6.0 * std::numbers::e * k * n;
            rep.max_ratio = std::max(rep.max_ratio, row.ratio);
            rep.rows.push_back(row);
            const std::string ks = std::to_string(k);
            rep.bounds.add("g(F," + ks + ") <= 3ekn", static_cast<double>(g), Relation::LessEqual, row.bound_3ekn,
                           true);
            rep.bounds.add("g(F," + ks + ") <= 6ekn", static_cast<double>(g), Relation::LessEqual, row.bound_6ekn);
        }
    }
    if (omega) {
        rep.bounds.add("max_depth <= omega", static_cast<double>(rep.max_depth), Relation::LessEqual,
                       static_cast<double>(*omega));
    }
    return rep;
}

inline DepthBoundReport check_depth_bounds(const Family& f, std::optional<int> omega = std::nullopt) {
    detail::require_discs(f, "check_depth_bounds");
    const auto pts = intersection_points(f);
    return check_depth_bounds(f, pts, omega);
}

// True when the interior of every disc shares a point. In general position the
// common region is either a whole disc nested in all others, or it has a vertex
// that is a boundary crossing covered by every member.
inline bool has_common_interior_point(const Family& f, std::span<const IntersectionPoint> points) {
    const auto discs = f.discs();
    const int n = static_cast<int>(discs.size());
    if (std::any_of(points.begin(), points.end(), [n](const IntersectionPoint& ip) { return ip.depth == n; })) {
        return true;
    }
    for (const Circle& inner : discs) {
        const bool nested = std::all_of(discs.begin(), discs.end(), [&](const Circle& outer) {
            return outer.id == inner.id || std::hypot(outer.cx - inner.cx, outer.cy - inner.cy) + inner.r < outer.r;
        });
        if (nested) {
            return true;
        }
    }
    return false;
}

// g(F,k) <= 2(k-1)n for every k, the bound for discs sharing a common point.
inline BoundReport check_common_point_bound(const Family& f, std::span<const IntersectionPoint> points) {
    detail::require_discs(f, "check_common_point_bound");
    BoundReport rep;
    const DepthProfile prof = depth_profile(points);
    const double n = static_cast<double>(f.size());
    for (const auto& [k, g] : prof.g) {
        rep.add("g(F," + std::to_string(k) + ") <= 2(k-1)n", static_cast<double>(g), Relation::LessEqual,
                2.0 * (k - 1) * n);
    }
    return rep;
}

}  // namespace ucb
