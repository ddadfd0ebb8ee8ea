#pragma once

// General-position checks. Violations are returned as data; callers decide
// whether to reject (family loading) or re-sample (generators).

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ucb/errors.hpp"
#include "ucb/geom.hpp"
#include "ucb/spatial_grid.hpp"

namespace ucb {

enum class ViolationKind {
    InvalidMember,   // non-finite value or non-positive radius
    Tangency,        // two boundaries touch
    Coincidence,     // two members are identical
    TriplePoint,     // a pairwise intersection lies on a third boundary
    CloseAbscissae,  // two intersection points on one curve share an x-coordinate
};

inline const char* to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::InvalidMember: return "invalid_member";
        case ViolationKind::Tangency: return "tangency";
        case ViolationKind::Coincidence: return "coincidence";
        case ViolationKind::TriplePoint: return "triple_point";
        case ViolationKind::CloseAbscissae: return "close_abscissae";
    }
    return "unknown";
}

struct Violation {
    ViolationKind kind;
    std::vector<MemberId> members;
    Point where;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool accepted() const noexcept { return violations.empty(); }

    std::size_t count(ViolationKind kind) const {
        return static_cast<std::size_t>(std::count_if(
            violations.begin(), violations.end(), [kind](const Violation& v) { return v.kind == kind; }));
    }

    std::string summary() const {
        if (violations.empty()) {
            return "accepted";
        }
        std::string s = std::to_string(violations.size()) + " violation(s); first: ";
        s += to_string(violations.front().kind);
        s += " ";
        s += violations.front().detail;
        return s;
    }
};

namespace detail {

// Collects violations up to a limit so generators can bail out early.
class ViolationSink {
public:
    explicit ViolationSink(std::size_t limit) : limit_(limit) {}

    bool full() const noexcept { return report_.violations.size() >= limit_; }

    void add(ViolationKind kind, std::vector<MemberId> members, Point where, std::string text) {
        if (!full()) {
            report_.violations.push_back({kind, std::move(members), where, std::move(text)});
        }
    }

    ValidationReport take() { return std::move(report_); }

private:
    std::size_t limit_;
    ValidationReport report_;
};

struct PairPoint {
    std::size_t i;  // positions in the member list
    std::size_t j;
    MemberId a;
    MemberId b;
    Point p;
};

// Runs an intersection routine on one pair, turning degeneracies into violations.
template <class Member, class Intersect>
void collect_pair(std::span<const Member> members, std::size_t i, std::size_t j, const Tolerance& tol,
                  Intersect&& intersect, ViolationSink& sink, std::vector<PairPoint>& out) {
    const Member& m1 = members[i];
    const Member& m2 = members[j];
    try {
        for (const Point& p : intersect(m1, m2, tol)) {
            out.push_back({i, j, m1.id, m2.id, p});
        }
    } catch (const TangencyError& e) {
        sink.add(ViolationKind::Tangency, {m1.id, m2.id}, {}, e.what());
    } catch (const CoincidentError& e) {
        sink.add(ViolationKind::Coincidence, {m1.id, m2.id}, {}, e.what());
    }
}

}  // namespace detail

inline ValidationReport validate_general_position(
    std::span<const Circle> discs, const Tolerance& tol,
    std::size_t max_violations = std::numeric_limits<std::size_t>::max()) {
    detail::ViolationSink sink(max_violations);
    bool any_invalid = false;
    for (const Circle& c : discs) {
        if (!is_valid(c)) {
            any_invalid = true;
            sink.add(ViolationKind::InvalidMember, {c.id}, {}, detail::describe(c));
        }
    }
    if (any_invalid) {
        return sink.take();
    }

    std::vector<detail::PairPoint> points;
    for (std::size_t i = 0; i < discs.size() && !sink.full(); ++i) {
        for (std::size_t j = i + 1; j < discs.size() && !sink.full(); ++j) {
            detail::collect_pair(discs, i, j, tol,
                                 [](const Circle& a, const Circle& b, const Tolerance& t) {
                                     return circle_circle_intersections(a, b, t);
                                 },
                                 sink, points);
        }
    }

    const DiscGrid grid(discs, 2.0 * tol.eps);
    for (const auto& pp : points) {
        if (sink.full()) {
            break;
        }
        grid.for_each_candidate(pp.p, [&](std::size_t idx) {
            const Circle& third = discs[idx];
            if (idx == pp.i || idx == pp.j) {
                return;
            }
            if (contains_point(third, pp.p, tol) == Containment::Boundary) {
                sink.add(ViolationKind::TriplePoint, {pp.a, pp.b, third.id}, pp.p,
                         "intersection of #" + std::to_string(pp.a) + "/#" + std::to_string(pp.b) +
                             " lies on " + detail::describe(third));
            }
        });
    }
    return sink.take();
}

inline ValidationReport validate_general_position(
    std::span<const QuadCurve> curves, const Tolerance& tol,
    std::size_t max_violations = std::numeric_limits<std::size_t>::max()) {
    detail::ViolationSink sink(max_violations);
    bool any_invalid = false;
    for (const QuadCurve& q : curves) {
        if (!is_valid(q)) {
            any_invalid = true;
            sink.add(ViolationKind::InvalidMember, {q.id}, {}, detail::describe(q));
        }
    }
    if (any_invalid) {
        return sink.take();
    }

    std::vector<detail::PairPoint> points;
    for (std::size_t i = 0; i < curves.size() && !sink.full(); ++i) {
        for (std::size_t j = i + 1; j < curves.size() && !sink.full(); ++j) {
            detail::collect_pair(curves, i, j, tol,
                                 [](const QuadCurve& a, const QuadCurve& b, const Tolerance& t) {
                                     return curve_curve_intersections(a, b, t);
                                 },
                                 sink, points);
        }
    }

    for (const auto& pp : points) {
        for (std::size_t idx = 0; idx < curves.size(); ++idx) {
            if (sink.full()) {
                return sink.take();
            }
            if (idx == pp.i || idx == pp.j) {
                continue;
            }
            const QuadCurve& third = curves[idx];
            if (above_status(third, pp.p, tol) == AboveStatus::On) {
                sink.add(ViolationKind::TriplePoint, {pp.a, pp.b, third.id}, pp.p,
                         "intersection of #" + std::to_string(pp.a) + "/#" + std::to_string(pp.b) +
                             " lies on " + detail::describe(third));
            }
        }
    }

    // Abscissae of all intersection points carried by each curve.
    std::vector<std::vector<std::pair<double, MemberId>>> on_curve(curves.size());
    for (const auto& pp : points) {
        on_curve[pp.i].push_back({pp.p.x, pp.b});
        on_curve[pp.j].push_back({pp.p.x, pp.a});
    }
    for (std::size_t i = 0; i < on_curve.size() && !sink.full(); ++i) {
        auto& xs = on_curve[i];
        std::sort(xs.begin(), xs.end());
        for (std::size_t t = 1; t < xs.size(); ++t) {
            if (xs[t].first - xs[t - 1].first <= tol.eps) {
                sink.add(ViolationKind::CloseAbscissae,
                         {curves[i].id, xs[t - 1].second, xs[t].second}, {xs[t].first, 0.0},
                         "two intersection points on curve #" + std::to_string(curves[i].id) + " share x=" +
                             std::to_string(xs[t].first));
            }
        }
    }
    return sink.take();
}

}  // namespace ucb
