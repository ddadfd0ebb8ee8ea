#pragma once

// Red/blue charging of low-level intersection points in a family of
// quadratic curves (pseudo-parabolas), checked as a certificate.
//
// An intersection point X of curves p, q qualifies for level k when it lies
// strictly above at most k-2 other curves. Let u be the curve that is above
// just left of X and l the one below. If X is the leftmost intersection of
// the pair, X is charged to u (red); otherwise to l (blue). Every curve then
// carries at most k-1 charges of each color.

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ucb/depth.hpp"
#include "ucb/errors.hpp"
#include "ucb/family.hpp"

namespace ucb {

enum class ChargeColor { Red, Blue };

inline const char* to_string(ChargeColor c) { return c == ChargeColor::Red ? "red" : "blue"; }

// Level-independent facts about one intersection point.
struct ChargeGeometry {
    IntersectionPoint point;
    bool leftmost = true;      // leftmost intersection of its two definers
    MemberId upper_left = 0;   // definer above on a punctured left neighborhood
    MemberId lower_left = 0;

    MemberId charged_curve() const noexcept { return leftmost ? upper_left : lower_left; }
    ChargeColor color() const noexcept { return leftmost ? ChargeColor::Red : ChargeColor::Blue; }
};

struct ChargeRecord {
    IntersectionPoint point;
    MemberId charged_curve = 0;
    ChargeColor color = ChargeColor::Red;
};

struct CurveCharges {
    int red = 0;
    int blue = 0;
};

struct ChargeLedger {
    int k = 2;
    std::size_t n = 0;
    std::vector<ChargeRecord> records;
    std::vector<CurveCharges> per_curve;  // indexed by curve id
    std::size_t qualifying_count = 0;

    std::string to_csv() const {
        std::string out = "point_x,point_y,definer_a,definer_b,above_count,charged_curve,color\n";
        char buf[160];
        for (const auto& r : records) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d,%d,%d,%d,%s\n", r.point.p.x, r.point.p.y, r.point.a,
                          r.point.b, r.point.above_count, r.charged_curve, to_string(r.color));
            out += buf;
        }
        return out;
    }
};

namespace detail {

inline void require_curves(const Family& f, const char* op) {
    if (!f.is_curves()) {
        throw KindError(std::string(op) + " requires a curves family");
    }
}

inline void require_level(const Family& f, int k) {
    if (k < 2 || static_cast<std::size_t>(k) > f.size()) {
        throw ParameterError("k must satisfy 2 <= k <= n (got k=" + std::to_string(k) +
                             ", n=" + std::to_string(f.size()) + ")");
    }
}

}  // namespace detail

// Leftmost flag and left-neighborhood order for every intersection point.
// The side test samples the pair's difference at x - delta, with delta half
// the gap to the pair's other intersection (1.0 for a lone intersection).
inline std::vector<ChargeGeometry> charge_geometry(const Family& f, std::span<const IntersectionPoint> points) {
    detail::require_curves(f, "charge_geometry");
    const auto curves = f.curves();
    const double eps = f.tol().eps;
    std::vector<ChargeGeometry> out;
    out.reserve(points.size());
    for (std::size_t i = 0; i < points.size();) {
        std::size_t j = i + 1;
        while (j < points.size() && points[j].a == points[i].a && points[j].b == points[i].b) {
            ++j;
        }
        const std::size_t group = j - i;
        if (group > 2) {
            throw DegeneracyError("curves #" + std::to_string(points[i].a) + " and #" + std::to_string(points[i].b) +
                                  " meet more than twice");
        }
        const QuadCurve& qa = curves[static_cast<std::size_t>(points[i].a)];
        const QuadCurve& qb = curves[static_cast<std::size_t>(points[i].b)];
        double delta = 1.0;
        if (group == 2) {
            const double gap = points[i + 1].p.x - points[i].p.x;
            if (!(gap > eps)) {
                throw DegeneracyError("curves #" + std::to_string(qa.id) + " and #" + std::to_string(qb.id) +
                                      " meet twice at the same abscissa");
            }
            delta = 0.5 * gap;
        }
        for (std::size_t t = i; t < j; ++t) {
            const double xl = points[t].p.x - delta;
            const double diff = qa(xl) - qb(xl);
            if (diff == 0.0) {
                throw DegeneracyError("cannot order curves #" + std::to_string(qa.id) + " and #" +
                                      std::to_string(qb.id) + " left of their intersection");
            }
            ChargeGeometry g;
            g.point = points[t];
            g.leftmost = (t == i);
            g.upper_left = diff > 0.0 ? qa.id : qb.id;
            g.lower_left = diff > 0.0 ? qb.id : qa.id;
            out.push_back(g);
        }
        i = j;
    }
    return out;
}

inline std::vector<ChargeGeometry> charge_geometry(const Family& f) {
    detail::require_curves(f, "charge_geometry");
    const auto pts = intersection_points(f);
    return charge_geometry(f, pts);
}

inline std::vector<IntersectionPoint> qualifying_points(const Family& f, int k) {
    detail::require_curves(f, "qualifying_points");
    detail::require_level(f, k);
    std::vector<IntersectionPoint> out;
    for (const auto& ip : intersection_points(f)) {
        if (ip.above_count <= k - 2) {
            out.push_back(ip);
        }
    }
    return out;
}

// Ledger for level k from precomputed geometry; n is the family size.
inline ChargeLedger build_ledger(std::span<const ChargeGeometry> geometry, std::size_t n, int k) {
    if (k < 2 || static_cast<std::size_t>(k) > n) {
        throw ParameterError("k must satisfy 2 <= k <= n");
    }
    ChargeLedger ledger;
    ledger.k = k;
    ledger.n = n;
    ledger.per_curve.assign(n, {});
    for (const auto& g : geometry) {
        if (g.point.above_count > k - 2) {
            continue;
        }
        ++ledger.qualifying_count;
        const MemberId target = g.charged_curve();
        ledger.records.push_back({g.point, target, g.color()});
        auto& tally = ledger.per_curve[static_cast<std::size_t>(target)];
        (g.color() == ChargeColor::Red ? tally.red : tally.blue) += 1;
    }
    return ledger;
}

inline ChargeLedger build_ledger(const Family& f, int k) {
    detail::require_curves(f, "build_ledger");
    detail::require_level(f, k);
    const auto geometry = charge_geometry(f);
    return build_ledger(geometry, f.size(), k);
}

struct ClaimViolation {
    MemberId curve = 0;
    ChargeColor color = ChargeColor::Red;
    int count = 0;
    std::vector<Point> points;
};

struct CertificateReport {
    int k = 2;
    std::size_t n = 0;
    std::size_t qualifying_count = 0;
    std::size_t bound = 0;  // 2(k-1)n
    int max_red = 0;
    int max_blue = 0;
    MemberId max_red_curve = 0;
    MemberId max_blue_curve = 0;
    std::vector<ClaimViolation> violations;
    bool records_consistent = true;  // one record per qualifying point

    bool passed() const {
        return violations.empty() && records_consistent && qualifying_count <= bound;
    }
};

class CertificateFailure : public Error {
public:
    CertificateFailure(std::string what, CertificateReport report)
        : Error(std::move(what)), report_(std::move(report)) {}

    const CertificateReport& report() const noexcept { return report_; }

private:
    CertificateReport report_;
};

// Per-color tallies against k-1 and the total against 2(k-1)n. Throws
// CertificateFailure naming the first overcharged curve.
inline CertificateReport verify_claims(const ChargeLedger& ledger, const Family& f) {
    detail::require_curves(f, "verify_claims");
    if (ledger.n != f.size() || ledger.per_curve.size() != f.size()) {
        throw ParameterError("ledger was not built from this family");
    }
    CertificateReport rep;
    rep.k = ledger.k;
    rep.n = ledger.n;
    rep.qualifying_count = ledger.qualifying_count;
    rep.bound = 2 * static_cast<std::size_t>(ledger.k - 1) * ledger.n;
    rep.records_consistent = ledger.records.size() == ledger.qualifying_count;
    const int cap = ledger.k - 1;
    for (std::size_t id = 0; id < ledger.per_curve.size(); ++id) {
        const auto& t = ledger.per_curve[id];
        if (t.red > rep.max_red) {
            rep.max_red = t.red;
            rep.max_red_curve = static_cast<MemberId>(id);
        }
        if (t.blue > rep.max_blue) {
            rep.max_blue = t.blue;
            rep.max_blue_curve = static_cast<MemberId>(id);
        }
        for (ChargeColor color : {ChargeColor::Red, ChargeColor::Blue}) {
            const int count = color == ChargeColor::Red ? t.red : t.blue;
            if (count <= cap) {
                continue;
            }
            ClaimViolation v{static_cast<MemberId>(id), color, count, {}};
            for (const auto& r : ledger.records) {
                if (r.charged_curve == v.curve && r.color == color) {
                    v.points.push_back(r.point.p);
                }
            }
            rep.violations.push_back(std::move(v));
        }
    }
    if (!rep.passed()) {
        std::string what = "charging certificate failed at k=" + std::to_string(rep.k);
        if (!rep.violations.empty()) {
            const auto& v = rep.violations.front();
            what += ": curve #" + std::to_string(v.curve) + " has " + std::to_string(v.count) + " " +
                    to_string(v.color) + " charges (limit " + std::to_string(cap) + ")";
        } else if (!rep.records_consistent) {
            what += ": record count differs from qualifying count";
        } else {
            what += ": " + std::to_string(rep.qualifying_count) + " qualifying points exceed " +
                    std::to_string(rep.bound);
        }
        throw CertificateFailure(what, rep);
    }
    return rep;
}

inline nlohmann::ordered_json to_json(const CertificateReport& r) {
    nlohmann::ordered_json j;
    j["k"] = r.k;
    j["n"] = r.n;
    j["qualifying_count"] = r.qualifying_count;
    j["bound"] = r.bound;
    j["max_red"] = r.max_red;
    j["max_red_curve"] = r.max_red_curve;
    j["max_blue"] = r.max_blue;
    j["max_blue_curve"] = r.max_blue_curve;
    j["per_color_limit"] = r.k - 1;
    j["records_consistent"] = r.records_consistent;
    auto vs = nlohmann::ordered_json::array();
    for (const auto& v : r.violations) {
        auto pts = nlohmann::ordered_json::array();
        for (const Point& p : v.points) {
            pts.push_back({p.x, p.y});
        }
        vs.push_back({{"curve", v.curve}, {"color", to_string(v.color)}, {"count", v.count}, {"points", pts}});
    }
    j["violations"] = std::move(vs);
    j["pass"] = r.passed();
    return j;
}

}  // namespace ucb
