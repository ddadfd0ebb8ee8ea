#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "ucb/charging.hpp"
#include "ucb/rng.hpp"

namespace ucb {
namespace {

GeneratorParams params(int n, std::uint64_t seed) {
    GeneratorParams p;
    p.n = n;
    p.seed = seed;
    return p;
}

const ChargeRecord* record_at(const ChargeLedger& ledger, double x) {
    for (const auto& r : ledger.records) {
        if (std::abs(r.point.p.x - x) < 1e-12) {
            return &r;
        }
    }
    return nullptr;
}

TEST(BuildLedger, ParabolaAgainstLine) {
    const Family f = Family::from_curves({{0, 1, 0, 0}, {1, 0, 0, 1}});
    const auto ledger = build_ledger(f, 2);
    ASSERT_EQ(ledger.records.size(), 2U);
    const auto* left = record_at(ledger, -1.0);
    const auto* right = record_at(ledger, 1.0);
    ASSERT_NE(left, nullptr);
    ASSERT_NE(right, nullptr);
    EXPECT_EQ(left->color, ChargeColor::Red);
    EXPECT_EQ(left->charged_curve, 0);
    // Between the roots x^2 < 1, so the parabola is the lower-left curve at x = 1.
    EXPECT_EQ(right->color, ChargeColor::Blue);
    EXPECT_EQ(right->charged_curve, 0);

    // n = 2, k = 2: both points qualify, one charge of each color per curve at most.
    const auto cert = verify_claims(ledger, f);
    EXPECT_EQ(cert.qualifying_count, 2U);
    EXPECT_LE(cert.max_red, 1);
    EXPECT_LE(cert.max_blue, 1);
}

TEST(BuildLedger, ShiftedParabolasChargeTheLeftUpperCurve) {
    const Family f = Family::from_curves({{0, 1, 0, 0}, {1, 1, -4, 4}});
    const auto ledger = build_ledger(f, 2);
    ASSERT_EQ(ledger.records.size(), 1U);
    EXPECT_EQ(ledger.records[0].color, ChargeColor::Red);
    EXPECT_EQ(ledger.records[0].charged_curve, 1);
    EXPECT_DOUBLE_EQ(ledger.records[0].point.p.x, 1.0);
}

TEST(BuildLedger, LinesParabolasConstruction) {
    const Family f = gen_lines_parabolas(7, 4);
    EXPECT_EQ(qualifying_points(f, 4).size(), 24U);
    EXPECT_EQ(build_ledger(f, 4).records.size(), 24U);

    for (auto [n, k] : {std::pair{7, 4}, {10, 3}, {40, 5}, {20, 2}, {12, 12}}) {
        const Family g = gen_lines_parabolas(n, k);
        const auto cert = verify_claims(build_ledger(g, k), g);
        EXPECT_EQ(cert.qualifying_count, static_cast<std::size_t>(2 * (k - 1) * (n - k + 1))) << n << "," << k;
        EXPECT_TRUE(cert.passed());
    }
}

TEST(BuildLedger, TightnessOnConstruction) {
    const int k = 4;
    double previous = 0.0;
    for (int n : {10, 40, 160, 640}) {
        const Family f = gen_lines_parabolas(n, k);
        const auto cert = verify_claims(build_ledger(f, k), f);
        const double ratio = static_cast<double>(cert.qualifying_count) / static_cast<double>(cert.bound);
        EXPECT_GT(ratio, previous);
        EXPECT_LE(ratio, 1.0);
        previous = ratio;
    }
    EXPECT_GT(previous, 0.99);
}

TEST(BuildLedger, ArgumentChecks) {
    EXPECT_THROW(build_ledger(gen_random_discs(params(5, 1)), 2), KindError);
    EXPECT_THROW(build_ledger(gen_lines_parabolas(5, 2), 1), ParameterError);
    EXPECT_THROW(build_ledger(gen_lines_parabolas(5, 2), 6), ParameterError);
    EXPECT_THROW(qualifying_points(gen_lines_parabolas(5, 2), 6), ParameterError);
}

TEST(Ledger, EachQualifyingPointChargedExactlyOnce) {
    const Family f = gen_random_curves(params(25, 3));
    const auto pts = intersection_points(f);
    for (int k = 2; k <= 25; k += 5) {
        const auto ledger = build_ledger(f, k);
        std::size_t expected = 0;
        for (const auto& ip : pts) {
            const bool qualifies = ip.above_count <= k - 2;
            expected += qualifies ? 1 : 0;
            const auto hits = std::count_if(ledger.records.begin(), ledger.records.end(),
                                            [&](const ChargeRecord& r) { return r.point == ip; });
            EXPECT_EQ(hits, qualifies ? 1 : 0);
        }
        EXPECT_EQ(ledger.qualifying_count, expected);
        EXPECT_EQ(ledger.records.size(), expected);
        int red = 0;
        int blue = 0;
        for (const auto& t : ledger.per_curve) {
            red += t.red;
            blue += t.blue;
        }
        EXPECT_EQ(static_cast<std::size_t>(red + blue), expected);
    }
}

TEST(Ledger, RedChargesReconstructTheAboveRelation) {
    Rng rng(12);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Family f = gen_random_curves(params(30, seed));
        const auto curves = f.curves();
        const auto ledger = build_ledger(f, 30);
        for (const auto& r : ledger.records) {
            if (r.color != ChargeColor::Red) {
                continue;
            }
            const QuadCurve& p = curves[static_cast<std::size_t>(r.charged_curve)];
            const QuadCurve& q = curves[static_cast<std::size_t>(r.point.a == p.id ? r.point.b : r.point.a)];
            for (int s = 0; s < 20; ++s) {
                const double x = r.point.p.x - std::exp(uniform(rng, -6.0, 4.0));
                EXPECT_GT(p(x), q(x)) << "curve " << p.id << " vs " << q.id << " at x=" << x;
            }
        }
    }
}

TEST(VerifyClaims, RandomFamilySeedElevenAllLevels) {
    const Family f = gen_random_curves(params(50, 11));
    const auto geometry = charge_geometry(f);
    for (int k = 2; k <= 50; ++k) {
        const auto cert = verify_claims(build_ledger(geometry, f.size(), k), f);
        EXPECT_TRUE(cert.passed()) << "k=" << k;
        EXPECT_LE(cert.max_red, k - 1);
        EXPECT_LE(cert.max_blue, k - 1);
    }
}

TEST(VerifyClaims, RandomFamilySeedFiveAllLevels) {
    const Family f = gen_random_curves(params(30, 5));
    for (int k = 2; k <= 30; ++k) {
        EXPECT_NO_THROW(verify_claims(build_ledger(f, k), f)) << "k=" << k;
    }
}

TEST(VerifyClaims, TamperedLedgerFails) {
    const Family f = gen_lines_parabolas(7, 4);
    auto ledger = build_ledger(f, 2);
    ASSERT_FALSE(ledger.records.empty());
    for (auto& r : ledger.records) {
        r.charged_curve = 0;
        r.color = ChargeColor::Red;
    }
    ledger.per_curve.assign(f.size(), {});
    ledger.per_curve[0].red = static_cast<int>(ledger.records.size());
    try {
        verify_claims(ledger, f);
        FAIL() << "expected CertificateFailure";
    } catch (const CertificateFailure& e) {
        ASSERT_FALSE(e.report().violations.empty());
        EXPECT_EQ(e.report().violations[0].curve, 0);
        EXPECT_EQ(e.report().violations[0].points.size(), ledger.records.size());
        EXPECT_FALSE(to_json(e.report())["pass"].get<bool>());
    }
}

TEST(Ledger, CsvLayout) {
    const Family f = Family::from_curves({{0, 1, 0, 0}, {1, 0, 0, 1}});
    const std::string csv = build_ledger(f, 2).to_csv();
    EXPECT_EQ(csv,
              "point_x,point_y,definer_a,definer_b,above_count,charged_curve,color\n"
              "-1,1,0,1,0,0,red\n"
              "1,1,0,1,0,0,blue\n");
}

}  // namespace
}  // namespace ucb
