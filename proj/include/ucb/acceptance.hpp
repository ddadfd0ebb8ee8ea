#pragma once

// Self-contained acceptance suite over internally generated families. Each
// criterion yields one pass/fail line; `quick` shrinks the family counts.
//
// Criterion 4 (Kedem) is evaluated on every disc family generated for
// criteria 3, 5 and 6, and criterion 8 aggregates the g(F,k)/(kn) ratios of
// those same runs, so both are reported after the others have run.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ucb/charging.hpp"
#include "ucb/depth.hpp"
#include "ucb/family.hpp"
#include "ucb/graph.hpp"
#include "ucb/rng.hpp"
#include "ucb/sampling.hpp"

namespace ucb {

struct AcceptanceOptions {
    std::uint64_t seed = 1;
    bool quick = false;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
    double limit_seconds = 0.0;
};

inline std::string format_line(const CriterionResult& r) {
    char timing[96];
    std::snprintf(timing, sizeof timing, " (%.2f s, limit %.0f s)", r.seconds, r.limit_seconds);
    return std::string(r.pass ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.name + ": " + r.detail +
           timing;
}

namespace detail {

template <typename... Args>
std::string strf(const char* fmt, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return buf;
}

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Clique number by enumerating every vertex subset (n <= 20).
inline int exhaustive_clique_number(const IntersectionGraph& g) {
    const std::size_t n = g.n();
    std::vector<std::uint32_t> adj(n, 0);
    for (const Edge& e : g.edges()) {
        adj[static_cast<std::size_t>(e.u)] |= 1U << e.v;
        adj[static_cast<std::size_t>(e.v)] |= 1U << e.u;
    }
    std::vector<char> clique(std::size_t{1} << n, 0);
    clique[0] = 1;
    int best = 0;
    for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
        const int low = std::countr_zero(mask);
        const std::uint32_t rest = mask & (mask - 1);
        clique[mask] = clique[rest] && (adj[static_cast<std::size_t>(low)] & rest) == rest;
        if (clique[mask]) {
            best = std::max(best, std::popcount(mask));
        }
    }
    return best;
}

}  // namespace detail

class AcceptanceSuite {
public:
    explicit AcceptanceSuite(AcceptanceOptions opts) : opts_(opts) {}

    // Runs every criterion; results come back ordered by id.
    std::vector<CriterionResult> run(const std::function<void(const CriterionResult&)>& on_result = {}) {
        std::vector<CriterionResult> out;
        auto record = [&](CriterionResult r) {
            if (on_result) {
                on_result(r);
            }
            out.push_back(std::move(r));
        };
        record(guarded(1, "lines-parabolas tightness", 4.0, [this](CriterionResult& r) { lines_parabolas_tightness(r); }));
        record(guarded(2, "charging certificate", 300.0, [this](CriterionResult& r) { charging_certificate(r); }));
        record(guarded(3, "common-point bound", 600.0, [this](CriterionResult& r) { common_point_bound(r); }));
        record(guarded(5, "edge and coloring bounds", 900.0, [this](CriterionResult& r) { edge_bounds(r); }));
        record(guarded(6, "sampling chain", 600.0, [this](CriterionResult& r) { sampling_chain(r); }));
        record(guarded(7, "oracle equivalences", 600.0, [this](CriterionResult& r) { oracle_equivalences(r); }));
        record(kedem_result());
        record(ratio_result());
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
        return out;
    }

private:
    // Family counts and trial budget for the full and quick suites.
    int count(int full, int quick) const { return opts_.quick ? quick : full; }

    std::uint64_t family_seed(int criterion, int index) const {
        return derive_seed(derive_seed(opts_.seed, static_cast<std::uint64_t>(criterion)),
                           static_cast<std::uint64_t>(index));
    }

    static int pick(std::uint64_t s, int lo, int hi) {
        return lo + static_cast<int>(mix_seed(s) % static_cast<std::uint64_t>(hi - lo + 1));
    }

    template <typename Body>
    CriterionResult guarded(int id, const char* name, double limit, Body&& body) {
        CriterionResult r;
        r.id = id;
        r.name = name;
        r.limit_seconds = limit;
        const detail::Stopwatch clock;
        try {
            body(r);
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("error: ") + e.what();
        }
        r.seconds = clock.seconds();
        r.pass = r.pass && r.seconds < r.limit_seconds;
        return r;
    }

    void lines_parabolas_tightness(CriterionResult& r) {
        const std::pair<int, int> configs[] = {{2, 2}, {3, 10}, {4, 7}, {5, 40}};
        int exact = 0;
        double slowest = 0.0;
        std::string counts;
        for (auto [k, n] : configs) {
            const detail::Stopwatch clock;
            const std::size_t got = qualifying_points(gen_lines_parabolas(n, k), k).size();
            const std::size_t expected = 2 * static_cast<std::size_t>(k - 1) * static_cast<std::size_t>(n - k + 1);
            const double t = clock.seconds();
            slowest = std::max(slowest, t);
            exact += (got == expected && t < 1.0) ? 1 : 0;
            counts += (counts.empty() ? "" : " ") + detail::strf("(k=%d,n=%d):%zu/%zu", k, n, got, expected);
        }
        r.pass = exact == 4;
        r.detail = detail::strf("%d/4 exact ", exact) + counts + detail::strf(", slowest %.3f s", slowest);
    }

    void charging_certificate(CriterionResult& r) {
        const int families = count(1000, 60);
        std::size_t certificates = 0;
        std::size_t violations = 0;
        double worst = 0.0;  // max tally / (k-1)
        for (int i = 0; i < families; ++i) {
            GeneratorParams p;
            p.seed = family_seed(2, i);
            p.n = pick(p.seed, 2, 50);
            const Family f = gen_random_curves(p);
            const auto geometry = charge_geometry(f);
            for (int k = 2; k <= p.n; ++k) {
                ++certificates;
                try {
                    const auto cert = verify_claims(build_ledger(geometry, f.size(), k), f);
                    worst = std::max(worst, static_cast<double>(std::max(cert.max_red, cert.max_blue)) / (k - 1));
                } catch (const CertificateFailure&) {
                    ++violations;
                }
            }
        }
        r.pass = violations == 0;
        r.detail = detail::strf("%d families, %zu certificates, %zu violations, max charges/(k-1) = %.3f", families,
                                certificates, violations, worst);
    }

    void common_point_bound(CriterionResult& r) {
        const int families = count(500, 30);
        std::size_t checks = 0;
        std::size_t violations = 0;
        std::size_t no_common = 0;
        double worst = 0.0;  // max g / (2(k-1)n)
        for (int i = 0; i < families; ++i) {
            GeneratorParams p;
            p.seed = family_seed(3, i);
            p.n = pick(p.seed, 2, 200);
            const Family f = gen_common_point_discs(p, {0, 0});
            const auto pts = intersection_points(f);
            no_common += has_common_interior_point(f, pts) ? 0 : 1;
            const auto rep = check_common_point_bound(f, pts);
            checks += rep.checks.size();
            violations += rep.failures().size();
            for (const Check& c : rep.checks) {
                worst = std::max(worst, c.lhs / c.rhs);
            }
            observe(f, pts, std::nullopt, p.seed);
        }
        r.pass = violations == 0 && no_common == 0;
        r.detail = detail::strf("%d families, %zu (F,k) checks, %zu violations, max g/(2(k-1)n) = %.3f", families,
                                checks, violations, worst);
        if (no_common > 0) {
            r.detail += detail::strf(", %zu families without a detected common point", no_common);
        }
    }

    void edge_bounds(CriterionResult& r) {
        const int families = count(500, 30);
        std::size_t violations = 0;
        int max_omega = 0;
        double worst_col = 0.0;
        for (int i = 0; i < families; ++i) {
            GeneratorParams p;
            p.seed = family_seed(5, i);
            p.n = pick(p.seed, 3, 300);
            // Scale the box so the expected degree stays roughly between 2 and 10.
            const double per_member = 2.0 + 6.0 * static_cast<double>(mix_seed(p.seed ^ 0x5u) % 1000) / 999.0;
            p.box_max = std::max(10.0, std::sqrt(per_member * p.n));
            const Family f = gen_random_discs(p);
            const auto stats = graph_stats(f);
            violations += check_edge_bounds(stats).failures().size();
            violations += check_coloring_bounds(stats).failures().size();
            max_omega = std::max(max_omega, stats.omega);
            worst_col = std::max(worst_col, static_cast<double>(stats.col) / stats.omega);
            const auto pts = intersection_points(f);
            observe(f, pts, stats.omega, p.seed);
        }
        r.pass = violations == 0;
        r.detail = detail::strf("%d families, %zu violations, max omega %d, max col/omega = %.3f (limit %.3f)",
                                families, violations, max_omega, worst_col, 6 * std::numbers::e + 2);
    }

    void sampling_chain(CriterionResult& r) {
        // Quick mode keeps the 47-of-50 rule and only shortens each run.
        const int families = 50;
        const std::uint64_t trials = opts_.quick ? 20'000 : kDefaultTrials;
        const int required = 47;
        std::size_t chain_failures = 0;
        std::uint64_t trial_violations = 0;
        int within = 0;
        for (int i = 0; i < families; ++i) {
            GeneratorParams p;
            p.seed = family_seed(6, i);
            p.n = pick(p.seed, 10, 50);
            const Family f = gen_random_discs(p);
            const auto pts = intersection_points(f);
            const int omega = clique_number(build_graph(f)).omega;
            const auto chain = check_sampling_chain(f, pts, omega);
            chain_failures += chain.bounds.failures().size();
            const auto mc = run_trials(f, chain.p, trials, derive_seed(p.seed, 0x6d63), 6.0, omega);
            within += mc.mean_within_ci() ? 1 : 0;
            trial_violations += mc.per_trial_violations;
            observe(f, pts, omega, p.seed);
        }
        r.pass = chain_failures == 0 && trial_violations == 0 && within >= required;
        r.detail = detail::strf(
            "%d families, chain failures %zu, Monte Carlo within CI %d/%d (need %d) at %llu trials, per-trial "
            "violations %llu",
            families, chain_failures, within, families, required, static_cast<unsigned long long>(trials),
            static_cast<unsigned long long>(trial_violations));
    }

    void oracle_equivalences(CriterionResult& r) {
        const int clique_families = count(100, 30);
        const int depth_families = count(50, 10);
        int clique_match = 0;
        for (int i = 0; i < clique_families; ++i) {
            GeneratorParams p;
            p.seed = family_seed(7, i);
            p.n = pick(p.seed, 1, 15);
            p.box_max = 3.0 + static_cast<double>(mix_seed(p.seed ^ 0x7u) % 8);
            const auto g = build_graph(gen_random_discs(p));
            clique_match += clique_number(g).omega == detail::exhaustive_clique_number(g) ? 1 : 0;
        }
        int depth_match = 0;
        std::size_t points = 0;
        for (int i = 0; i < depth_families; ++i) {
            GeneratorParams p;
            p.seed = family_seed(7, 1000 + i);
            p.n = pick(p.seed, 100, 300);
            p.box_max = std::sqrt(5.0 * p.n);
            const Family f = gen_random_discs(p);
            const auto grid = intersection_points(f, DepthMethod::Grid);
            depth_match += grid == intersection_points(f, DepthMethod::Scan) ? 1 : 0;
            points += grid.size();
        }
        r.pass = clique_match == clique_families && depth_match == depth_families;
        r.detail = detail::strf("clique vs exhaustive %d/%d, grid vs scan depth %d/%d (%zu points)", clique_match,
                                clique_families, depth_match, depth_families, points);
    }

    // Per-family hooks for criteria 4 and 8 on every generated disc family.
    void observe(const Family& f, std::span<const IntersectionPoint> pts, std::optional<int> omega,
                 std::uint64_t seed) {
        const detail::Stopwatch clock;
        try {
            kedem_family(f, pts, seed);
        } catch (const std::exception& e) {
            ++kedem_.violations;
            kedem_.error = e.what();
        }
        kedem_.seconds += clock.seconds();

        const detail::Stopwatch depth_clock;
        const auto rep = check_depth_bounds(f, pts, omega);
        ratio_.seconds += depth_clock.seconds();
        ++ratio_.families;
        ratio_.flagged += rep.flagged() ? 1 : 0;
        ratio_.failures += rep.bounds.failures().size();
        if (rep.max_ratio > ratio_.max_ratio) {
            ratio_.max_ratio = rep.max_ratio;
            ratio_.where = f.label();
        }
    }

    void kedem_family(const Family& f, std::span<const IntersectionPoint> pts, std::uint64_t seed) {
        const std::size_t n = f.size();
        ++kedem_.families;
        if (n >= 3) {
            ++kedem_.checks;
            kedem_.violations += union_complexity(pts) <= 6 * n - 12 ? 0 : 1;
        }
        const SubfamilyUnionCounter counter(f, pts);
        Rng rng(derive_seed(seed, 0x4b));
        std::vector<char> kept(n);
        for (int t = 0; t < 200; ++t) {
            const double q = uniform(rng, 0.1, 0.9);
            std::vector<std::size_t> keep;
            for (std::size_t i = 0; i < n; ++i) {
                kept[i] = bernoulli(rng, q) ? 1 : 0;
                if (kept[i]) {
                    keep.push_back(i);
                }
            }
            if (keep.size() < 3) {
                continue;
            }
            const std::size_t s = counter.count(kept);
            ++kedem_.checks;
            kedem_.violations += s <= 6 * keep.size() - 12 ? 0 : 1;
            // Cross-check the shortcut against a recomputed arrangement now and then.
            if (t < 2) {
                ++kedem_.recomputed;
                kedem_.mismatches += union_complexity(f.subfamily(keep)) == s ? 0 : 1;
            }
        }
    }

    CriterionResult kedem_result() const {
        CriterionResult r;
        r.id = 4;
        r.name = "Kedem invariant";
        r.limit_seconds = 600.0;
        const detail::Stopwatch clock;
        bool triangle_ok = false;
        try {
            const double s = 1.8;
            const Family tri =
                Family::from_discs({{0, 0, 0, 1}, {1, s, 0, 1}, {2, s / 2, s * std::sqrt(3.0) / 2, 1}});
            const auto pts = intersection_points(tri);
            const auto discs = tri.discs();
            bool outside = pts.size() == 6;
            for (const auto& ip : pts) {
                const Circle& third = discs[static_cast<std::size_t>(3 - ip.a - ip.b)];
                outside = outside && contains_point(third, ip.p, tri.tol()) == Containment::Outside;
            }
            triangle_ok = outside && union_complexity(pts) == 6;
        } catch (const std::exception&) {
            triangle_ok = false;
        }
        r.seconds = kedem_.seconds + clock.seconds();
        r.pass = kedem_.families > 0 && kedem_.violations == 0 && kedem_.mismatches == 0 && triangle_ok &&
                 r.seconds < r.limit_seconds;
        r.detail = detail::strf(
            "%zu families, %zu (sub)family checks, %zu violations, %zu/%zu recomputed subfamilies agree, "
            "equilateral triple %s",
            kedem_.families, kedem_.checks, kedem_.violations, kedem_.recomputed - kedem_.mismatches,
            kedem_.recomputed, triangle_ok ? "= 6" : "!= 6");
        if (!kedem_.error.empty()) {
            r.detail += "; error: " + kedem_.error;
        }
        return r;
    }

    CriterionResult ratio_result() const {
        CriterionResult r;
        r.id = 8;
        r.name = "3ekn ratio";
        r.limit_seconds = 600.0;
        r.seconds = ratio_.seconds;
        r.pass = ratio_.families > 0 && ratio_.failures == 0 && r.seconds < r.limit_seconds;
        r.detail = detail::strf("%zu families analyzed, max g(F,k)/(kn) = %.4f (3e = %.4f), %zu flagged, %zu hard failures",
                                ratio_.families, ratio_.max_ratio, 3 * std::numbers::e, ratio_.flagged,
                                ratio_.failures);
        if (!ratio_.where.empty()) {
            r.detail += ", max at " + ratio_.where;
        }
        return r;
    }

    struct KedemTally {
        std::size_t families = 0;
        std::size_t checks = 0;
        std::size_t violations = 0;
        std::size_t recomputed = 0;
        std::size_t mismatches = 0;
        double seconds = 0.0;
        std::string error;
    };

    struct RatioTally {
        std::size_t families = 0;
        std::size_t flagged = 0;
        std::size_t failures = 0;
        double max_ratio = 0.0;
        double seconds = 0.0;
        std::string where;
    };

    AcceptanceOptions opts_;
    KedemTally kedem_;
    RatioTally ratio_;
};

inline std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                                   const std::function<void(const CriterionResult&)>& on_result = {}) {
    return AcceptanceSuite(opts).run(on_result);
}

}  // namespace ucb
