#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "ucb/validation.hpp"

namespace ucb {
namespace {

const Tolerance kTol{1e-9};

TEST(ValidateDiscs, GenericTripleIsAccepted) {
    const std::vector<Circle> discs{{0, 0, 0, 1}, {1, 1.2, 0, 1}, {2, 0.6, 1.0, 1}};
    const auto report = validate_general_position(discs, kTol);
    EXPECT_TRUE(report.accepted()) << report.summary();

    // Hand check: every pairwise crossing is well away from the third circle.
    // Crossing of equal unit circles with centers P, Q: midpoint +- h * unit normal.
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            const int t = 3 - i - j;
            const double mx = (discs[i].cx + discs[j].cx) / 2;
            const double my = (discs[i].cy + discs[j].cy) / 2;
            const double dx = discs[j].cx - discs[i].cx;
            const double dy = discs[j].cy - discs[i].cy;
            const double d = std::hypot(dx, dy);
            const double h = std::sqrt(1 - d * d / 4);
            for (double s : {-1.0, 1.0}) {
                const double px = mx - s * h * dy / d;
                const double py = my + s * h * dx / d;
                EXPECT_GT(std::abs(std::hypot(px - discs[t].cx, py - discs[t].cy) - 1.0), 0.1);
            }
        }
    }
}

TEST(ValidateDiscs, TangentPairIsOneViolation) {
    const std::vector<Circle> discs{{0, 0, 0, 1}, {1, 2, 0, 1}};
    const auto report = validate_general_position(discs, kTol);
    ASSERT_EQ(report.violations.size(), 1U);
    EXPECT_EQ(report.violations[0].kind, ViolationKind::Tangency);
    EXPECT_EQ(report.violations[0].members, (std::vector<MemberId>{0, 1}));
}

TEST(ValidateDiscs, ThreeCirclesThroughOnePoint) {
    // All three unit circles pass through the origin.
    const std::vector<Circle> discs{{0, 1, 0, 1}, {1, 0, 1, 1}, {2, -1, 0, 1}};
    const auto report = validate_general_position(discs, kTol);
    EXPECT_GE(report.count(ViolationKind::TriplePoint), 1U);
}

TEST(ValidateDiscs, InvalidRadius) {
    const std::vector<Circle> discs{{0, 0, 0, -1}, {1, 3, 0, 1}};
    const auto report = validate_general_position(discs, kTol);
    ASSERT_EQ(report.violations.size(), 1U);
    EXPECT_EQ(report.violations[0].kind, ViolationKind::InvalidMember);
}

TEST(ValidateDiscs, ViolationLimit) {
    std::vector<Circle> discs;
    for (int i = 0; i < 6; ++i) {
        discs.push_back({i, 2.0 * i, 0, 1});  // neighbors touch
    }
    EXPECT_EQ(validate_general_position(discs, kTol).count(ViolationKind::Tangency), 5U);
    EXPECT_EQ(validate_general_position(discs, kTol, 1).violations.size(), 1U);
}

TEST(ValidateCurves, ConcurrentLines) {
    const std::vector<QuadCurve> lines{{0, 0, 0, 0}, {1, 0, 1, 0}, {2, 0, -1, 0}};
    const auto report = validate_general_position(lines, kTol);
    EXPECT_GE(report.count(ViolationKind::TriplePoint), 1U);
    // Each line carries two intersection points at x = 0.
    EXPECT_EQ(report.count(ViolationKind::CloseAbscissae), 3U);
}

TEST(ValidateCurves, GenericFamilyAccepted) {
    const std::vector<QuadCurve> curves{{0, 1, 0, 0}, {1, 0, 0, 0.5}, {2, -0.5, 0.3, 2}, {3, 0, 1.1, -0.2}};
    const auto report = validate_general_position(curves, kTol);
    EXPECT_TRUE(report.accepted()) << report.summary();
}

}  // namespace
}  // namespace ucb
