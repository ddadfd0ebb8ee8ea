#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "ucb/depth.hpp"
#include "ucb/family.hpp"
#include "ucb/family_io.hpp"

namespace ucb {
namespace {

GeneratorParams discs_params(int n, std::uint64_t seed) {
    GeneratorParams p;
    p.n = n;
    p.seed = seed;
    return p;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("ucb_families_" + name)).string();
}

TEST(RandomDiscs, SingleMember) {
    const Family f = gen_random_discs(discs_params(1, 3));
    EXPECT_EQ(f.size(), 1U);
    EXPECT_TRUE(f.is_discs());
    EXPECT_TRUE(intersection_points(f).empty());
}

TEST(RandomDiscs, DeterministicPerSeed) {
    const Family a = gen_random_discs(discs_params(20, 42));
    const Family b = gen_random_discs(discs_params(20, 42));
    const Family c = gen_random_discs(discs_params(20, 43));
    EXPECT_EQ(family_to_json(a).dump(), family_to_json(b).dump());
    EXPECT_NE(family_to_json(a).dump(), family_to_json(c).dump());
    EXPECT_EQ(a.size(), 20U);
    for (const Circle& disc : a.discs()) {
        EXPECT_GE(disc.cx, 0.0);
        EXPECT_LE(disc.cx, 10.0);
        EXPECT_GE(disc.r, 0.5);
        EXPECT_LE(disc.r, 2.0);
    }
}

TEST(RandomDiscs, RejectsBadParameters) {
    EXPECT_THROW(gen_random_discs(discs_params(0, 1)), ParameterError);
    GeneratorParams p = discs_params(5, 1);
    p.r_min = 0;
    EXPECT_THROW(gen_random_discs(p), ParameterError);
}

TEST(RandomDiscs, GenerationFailureWhenNothingValidates) {
    // With eps larger than the family extent allows, every round is rejected.
    GeneratorParams p = discs_params(30, 1);
    p.box_max = 1.0;
    p.r_min = p.r_max = 0.5;
    p.eps = 0.4;
    p.max_rounds = 3;
    EXPECT_THROW(gen_random_discs(p), GenerationFailure);
}

TEST(RandomDiscs, EveryFamilyPassesItsOwnValidation) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Family f = gen_random_discs(discs_params(40, seed));
        EXPECT_TRUE(validate_general_position(f.discs(), f.tol()).accepted());
        EXPECT_NEAR(f.tol().eps, 1e-9 * family_extent(f.discs()), 1e-24);
    }
}

TEST(CommonPointDiscs, EveryMemberContainsThePoint) {
    const Point origin{0, 0};
    const Family f = gen_common_point_discs(discs_params(50, 7), origin);
    ASSERT_EQ(f.size(), 50U);
    for (const Circle& c : f.discs()) {
        EXPECT_EQ(contains_point(c, origin, f.tol()), Containment::Inside);
        EXPECT_LE(std::hypot(c.cx, c.cy), c.r - 0.05 + 1e-12);
    }
    const Family one = gen_common_point_discs(discs_params(1, 7), {3, -2});
    EXPECT_EQ(contains_point(one.discs()[0], {3, -2}, one.tol()), Containment::Inside);
}

TEST(LinesParabolas, Construction) {
    const Family f = gen_lines_parabolas(7, 4);
    ASSERT_EQ(f.size(), 7U);
    const auto curves = f.curves();
    for (int i = 0; i < 3; ++i) {
        EXPECT_EQ(curves[i].a, 0.0);
        EXPECT_EQ(curves[i].b, 0.0);
        EXPECT_DOUBLE_EQ(curves[i].c, (i + 1) / 16.0);
    }
    for (int i = 3; i < 7; ++i) {
        const double shift = i - 2;
        EXPECT_EQ(curves[i].a, 1.0);
        EXPECT_EQ(curves[i].b, -2 * shift);
        EXPECT_EQ(curves[i].c, shift * shift);
    }
}

TEST(LinesParabolas, PairIntersectionCounts) {
    for (auto [n, k] : {std::pair{7, 4}, {10, 3}, {40, 5}, {2, 2}, {12, 12}}) {
        const Family f = gen_lines_parabolas(n, k);
        const auto curves = f.curves();
        for (std::size_t i = 0; i < curves.size(); ++i) {
            for (std::size_t j = i + 1; j < curves.size(); ++j) {
                const auto pts = curve_curve_intersections(curves[i], curves[j], f.tol());
                const bool li = curves[i].a == 0.0;
                const bool lj = curves[j].a == 0.0;
                const std::size_t expected = (li && lj) ? 0 : (li != lj) ? 2 : 1;
                EXPECT_EQ(pts.size(), expected) << "n=" << n << " k=" << k << " pair " << i << "," << j;
            }
        }
    }
}

TEST(LinesParabolas, ParameterRange) {
    EXPECT_THROW(gen_lines_parabolas(5, 1), ParameterError);
    EXPECT_THROW(gen_lines_parabolas(5, 6), ParameterError);
    EXPECT_NO_THROW(gen_lines_parabolas(2, 2));
}

TEST(RandomCurves, AtMostTwoPointsPerPairWithSmallResidual) {
    GeneratorParams p;
    p.n = 30;
    p.seed = 5;
    const Family f = gen_random_curves(p);
    const auto curves = f.curves();
    int lines = 0;
    for (std::size_t i = 0; i < curves.size(); ++i) {
        lines += curves[i].a == 0.0 ? 1 : 0;
        for (std::size_t j = i + 1; j < curves.size(); ++j) {
            const auto pts = curve_curve_intersections(curves[i], curves[j], f.tol());
            ASSERT_LE(pts.size(), 2U);
            for (const Point& x : pts) {
                EXPECT_LE(std::abs(x.y - curves[i](x.x)), f.tol().eps);
                EXPECT_LE(std::abs(x.y - curves[j](x.x)), f.tol().eps);
            }
        }
    }
    EXPECT_GT(lines, 0);
    EXPECT_LT(lines, 30);
    GeneratorParams single = p;
    single.n = 1;
    EXPECT_TRUE(intersection_points(gen_random_curves(single)).empty());
}

TEST(RandomCurves, DeterministicPerSeed) {
    GeneratorParams p;
    p.n = 25;
    p.seed = 9;
    EXPECT_EQ(gen_random_curves(p), gen_random_curves(p));
}

TEST(FamilyFile, RoundTrip) {
    const Family f = gen_random_discs(discs_params(20, 42));
    const std::string path = temp_path("roundtrip.json");
    save_family(f, path);
    const Family g = load_family(path);
    EXPECT_EQ(f, g);
    std::filesystem::remove(path);

    GeneratorParams p;
    p.n = 12;
    p.seed = 4;
    const Family curves = gen_random_curves(p);
    EXPECT_EQ(parse_family(family_to_json(curves).dump()), curves);
}

TEST(FamilyFile, DuplicateIdsAreFormatErrors) {
    const std::string text = R"({"kind":"discs","label":"x","eps":1e-9,"members":[
        {"id":0,"cx":0,"cy":0,"r":1},{"id":0,"cx":5,"cy":0,"r":1}]})";
    EXPECT_THROW(parse_family(text), FormatError);
}

TEST(FamilyFile, TangentCirclesAreValidationErrors) {
    const std::string text = R"({"kind":"discs","label":"x","eps":1e-9,"members":[
        {"id":0,"cx":0,"cy":0,"r":1},{"id":1,"cx":2,"cy":0,"r":1}]})";
    EXPECT_THROW(parse_family(text), ValidationError);
}

TEST(FamilyFile, MalformedInput) {
    EXPECT_THROW(parse_family(R"({"kind":"discs","eps":1e-9,"members":[{"id":0,"cx")"), FormatError);
    EXPECT_THROW(parse_family(R"({"kind":"blobs","eps":1e-9,"members":[{"id":0}]})"), FormatError);
    EXPECT_THROW(parse_family(R"({"kind":"curves","eps":1e-9,"members":[{"id":0,"a":1,"b":2}]})"), FormatError);
    EXPECT_THROW(parse_family(R"({"kind":"curves","eps":1e-9,"members":[{"id":1,"a":1,"b":2,"c":3}]})"), FormatError);
    EXPECT_THROW(parse_family(R"({"kind":"curves","eps":-1,"members":[{"id":0,"a":1,"b":2,"c":3}]})"), FormatError);
    EXPECT_THROW(load_family(temp_path("does_not_exist.json")), IoError);
}

TEST(FamilyFile, MembersMayAppearInAnyOrder) {
    const std::string text = R"({"kind":"discs","label":"x","eps":1e-9,"members":[
        {"id":1,"cx":1,"cy":0,"r":1},{"id":0,"cx":0,"cy":0,"r":1}]})";
    const Family f = parse_family(text);
    EXPECT_EQ(f.discs()[0].cx, 0.0);
    EXPECT_EQ(f.discs()[1].cx, 1.0);
}

TEST(Family, SubfamilyRenumbers) {
    const Family f = gen_random_discs(discs_params(10, 2));
    const std::vector<std::size_t> keep{7, 2, 9};
    const Family sub = f.subfamily(keep);
    ASSERT_EQ(sub.size(), 3U);
    EXPECT_EQ(sub.discs()[0].id, 0);
    EXPECT_EQ(sub.discs()[0].cx, f.discs()[7].cx);
    EXPECT_EQ(sub.discs()[2].r, f.discs()[9].r);
    EXPECT_EQ(sub.tol(), f.tol());
}

TEST(Family, KindMismatch) {
    const Family f = gen_lines_parabolas(3, 2);
    EXPECT_THROW((void)f.discs(), KindError);
}

}  // namespace
}  // namespace ucb
