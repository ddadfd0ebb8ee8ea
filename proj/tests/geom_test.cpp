#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "ucb/geom.hpp"
#include "ucb/rng.hpp"

namespace ucb {
namespace {

const Tolerance kTol{1e-9};

double circle_residual(const Circle& c, const Point& p) { return std::abs(std::hypot(p.x - c.cx, p.y - c.cy) - c.r); }

TEST(CircleIntersection, UnitCirclesOneApart) {
    const auto pts = circle_circle_intersections({0, 0, 0, 1}, {1, 1, 0, 1}, kTol);
    ASSERT_EQ(pts.size(), 2U);
    const double h = std::sqrt(3.0) / 2.0;
    EXPECT_NEAR(pts[0].x, 0.5, 1e-15);
    EXPECT_NEAR(pts[0].y, -h, 1e-15);
    EXPECT_NEAR(pts[1].x, 0.5, 1e-15);
    EXPECT_NEAR(pts[1].y, h, 1e-15);
}

TEST(CircleIntersection, DisjointAndNested) {
    EXPECT_TRUE(circle_circle_intersections({0, 0, 0, 1}, {1, 5, 0, 1}, kTol).empty());
    EXPECT_TRUE(circle_circle_intersections({0, 0, 0, 3}, {1, 0, 0, 1}, kTol).empty());
}

TEST(CircleIntersection, TangencyAndCoincidenceAreErrors) {
    EXPECT_THROW(circle_circle_intersections({0, 0, 0, 1}, {1, 2, 0, 1}, kTol), TangencyError);
    EXPECT_THROW(circle_circle_intersections({0, 0, 0, 3}, {1, 2, 0, 1}, kTol), TangencyError);
    EXPECT_THROW(circle_circle_intersections({0, 0, 0, 1}, {1, 0, 0, 1}, kTol), CoincidentError);
    // Just outside the tolerance band is an ordinary crossing.
    EXPECT_EQ(circle_circle_intersections({0, 0, 0, 1}, {1, 2 - 1e-6, 0, 1}, kTol).size(), 2U);
}

TEST(CircleIntersection, RandomPairsAreSymmetricWithSmallResidual) {
    Rng rng(2024);
    int crossings = 0;
    for (int trial = 0; trial < 5000; ++trial) {
        const Circle a{0, uniform(rng, -5, 5), uniform(rng, -5, 5), uniform(rng, 0.1, 4)};
        const Circle b{1, uniform(rng, -5, 5), uniform(rng, -5, 5), uniform(rng, 0.1, 4)};
        std::vector<Point> ab;
        try {
            ab = circle_circle_intersections(a, b, kTol);
        } catch (const TangencyError&) {
            continue;
        }
        const auto ba = circle_circle_intersections(b, a, kTol);
        ASSERT_TRUE(ab.size() == 0 || ab.size() == 2);
        ASSERT_EQ(ab.size(), ba.size());
        for (std::size_t i = 0; i < ab.size(); ++i) {
            EXPECT_NEAR(ab[i].x, ba[i].x, kTol.eps);
            EXPECT_NEAR(ab[i].y, ba[i].y, kTol.eps);
            EXPECT_LE(circle_residual(a, ab[i]), kTol.eps);
            EXPECT_LE(circle_residual(b, ab[i]), kTol.eps);
        }
        crossings += ab.empty() ? 0 : 1;
    }
    EXPECT_GT(crossings, 500);
}

TEST(CurveIntersection, ShiftedParabolasMeetOnce) {
    const auto pts = curve_curve_intersections({0, 1, 0, 0}, {1, 1, -4, 4}, kTol);
    ASSERT_EQ(pts.size(), 1U);
    EXPECT_DOUBLE_EQ(pts[0].x, 1.0);
    EXPECT_DOUBLE_EQ(pts[0].y, 1.0);
}

TEST(CurveIntersection, ParabolaAndLine) {
    const auto pts = curve_curve_intersections({0, 1, 0, 0}, {1, 0, 0, 1}, kTol);
    ASSERT_EQ(pts.size(), 2U);
    EXPECT_DOUBLE_EQ(pts[0].x, -1.0);
    EXPECT_DOUBLE_EQ(pts[0].y, 1.0);
    EXPECT_DOUBLE_EQ(pts[1].x, 1.0);
    EXPECT_DOUBLE_EQ(pts[1].y, 1.0);
}

TEST(CurveIntersection, ParallelLinesMiss) {
    EXPECT_TRUE(curve_curve_intersections({0, 0, 1, 0}, {1, 0, 1, 1}, kTol).empty());
}

TEST(CurveIntersection, DegenerateCases) {
    EXPECT_THROW(curve_curve_intersections({0, 1, 2, 3}, {1, 1, 2, 3}, kTol), CoincidentError);
    // x^2 against the tangent line y = 0.
    EXPECT_THROW(curve_curve_intersections({0, 1, 0, 0}, {1, 0, 0, 0}, kTol), TangencyError);
    // x^2 against y = -1e-12: misses by less than eps.
    EXPECT_THROW(curve_curve_intersections({0, 1, 0, 0}, {1, 0, 0, -1e-12}, kTol), TangencyError);
    EXPECT_TRUE(curve_curve_intersections({0, 1, 0, 0}, {1, 0, 0, -1e-3}, kTol).empty());
}

TEST(CurveIntersection, RandomPairsHaveAtMostTwoPointsOnBothCurves) {
    Rng rng(77);
    for (int trial = 0; trial < 5000; ++trial) {
        const QuadCurve p{0, uniform(rng, -2, 2), uniform(rng, -3, 3), uniform(rng, -3, 3)};
        const QuadCurve q{1, trial % 5 == 0 ? 0.0 : uniform(rng, -2, 2), uniform(rng, -3, 3), uniform(rng, -3, 3)};
        std::vector<Point> pts;
        try {
            pts = curve_curve_intersections(p, q, kTol);
        } catch (const TangencyError&) {
            continue;
        }
        ASSERT_LE(pts.size(), 2U);
        for (const Point& x : pts) {
            const double scale = std::max(1.0, std::abs(x.y));
            EXPECT_LE(std::abs(x.y - p(x.x)), kTol.eps * scale);
            EXPECT_LE(std::abs(x.y - q(x.x)), kTol.eps * scale);
        }
        if (pts.size() == 2) {
            EXPECT_LT(pts[0].x, pts[1].x);
        }
    }
}

TEST(ContainsPoint, Classification) {
    const Circle unit{0, 0, 0, 1};
    EXPECT_EQ(contains_point(unit, {0, 0}, kTol), Containment::Inside);
    EXPECT_EQ(contains_point(unit, {1, 0}, kTol), Containment::Boundary);
    EXPECT_EQ(contains_point(unit, {3, 0}, kTol), Containment::Outside);
}

TEST(ContainsPoint, InvariantUnderRigidMotions) {
    Rng rng(99);
    for (int trial = 0; trial < 5000; ++trial) {
        const Circle c{0, uniform(rng, -3, 3), uniform(rng, -3, 3), uniform(rng, 0.2, 3)};
        const Point p{uniform(rng, -6, 6), uniform(rng, -6, 6)};
        // Skip points whose classification could flip under rounding.
        const double margin = std::abs(std::hypot(p.x - c.cx, p.y - c.cy) - c.r);
        if (std::abs(margin - kTol.eps) < 1e-6) {
            continue;
        }
        const double theta = uniform(rng, 0, 2 * std::numbers::pi);
        const double tx = uniform(rng, -10, 10);
        const double ty = uniform(rng, -10, 10);
        auto move = [&](double x, double y) {
            return Point{std::cos(theta) * x - std::sin(theta) * y + tx, std::sin(theta) * x + std::cos(theta) * y + ty};
        };
        const Point cm = move(c.cx, c.cy);
        const Circle moved{0, cm.x, cm.y, c.r};
        EXPECT_EQ(contains_point(c, p, kTol), contains_point(moved, move(p.x, p.y), kTol));
    }
}

TEST(AboveStatus, Classification) {
    const QuadCurve x2{0, 1, 0, 0};
    EXPECT_EQ(above_status(x2, {0, 1}, kTol), AboveStatus::Above);
    EXPECT_EQ(above_status(x2, {2, 4}, kTol), AboveStatus::On);
    EXPECT_EQ(above_status(x2, {0, -1}, kTol), AboveStatus::Below);
}

}  // namespace
}  // namespace ucb
