#pragma once

// Random-sample experiment on disc families: keep each member independently
// with probability p and count the union-boundary vertices of the sample.
//
// A vertex x of the full arrangement survives on the sample's union boundary
// iff both definers are kept and none of the depth(x) - 2 other members
// containing x is kept, so E(S*) = sum_x p^2 (1-p)^(depth(x)-2).

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "ucb/depth.hpp"
#include "ucb/errors.hpp"
#include "ucb/family.hpp"
#include "ucb/graph.hpp"
#include "ucb/report.hpp"
#include "ucb/rng.hpp"

namespace ucb {

// Probability that one vertex of depth d is on the sample's union boundary.
inline double survival_probability(int depth, double p) { return p * p * std::pow(1.0 - p, depth - 2); }

// Exact E(S*) from the depth multiset, summed per depth value.
inline double closed_form_expectation(std::span<const int> depths, double p) {
    std::map<int, std::size_t> hist;
    for (int d : depths) {
        ++hist[d];
    }
    double total = 0.0;
    for (const auto& [d, count] : hist) {
        total += static_cast<double>(count) * survival_probability(d, p);
    }
    return total;
}

inline std::vector<int> depths_of(std::span<const IntersectionPoint> points) {
    std::vector<int> out;
    out.reserve(points.size());
    for (const auto& ip : points) {
        out.push_back(ip.depth);
    }
    return out;
}

inline double closed_form_expectation(const Family& f, double p) {
    if (!f.is_discs()) {
        throw KindError("closed_form_expectation requires a discs family");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ParameterError("p must lie in [0, 1]");
    }
    const auto pts = intersection_points(f);
    return closed_form_expectation(depths_of(pts), p);
}

// Arrangement vertices with the members covering each one, so the union
// complexity of any subfamily is a single pass over the vertices.
class SubfamilyUnionCounter {
public:
    SubfamilyUnionCounter(const Family& f, std::span<const IntersectionPoint> points) : n_(f.size()) {
        const auto discs = f.discs();
        const DiscGrid grid(discs, 2.0 * f.tol().eps);
        offsets_.reserve(points.size() + 1);
        offsets_.push_back(0);
        for (const auto& ip : points) {
            definers_.push_back({static_cast<std::size_t>(ip.a), static_cast<std::size_t>(ip.b)});
            grid.for_each_candidate(ip.p, [&](std::size_t i) {
                if (discs[i].id != ip.a && discs[i].id != ip.b &&
                    contains_point(discs[i], ip.p, f.tol()) == Containment::Inside) {
                    covers_.push_back(i);
                }
            });
            offsets_.push_back(covers_.size());
        }
    }

    std::size_t members() const noexcept { return n_; }

    // Union complexity of the subfamily {i : kept[i]}.
    std::size_t count(std::span<const char> kept) const {
        std::size_t s = 0;
        for (std::size_t v = 0; v < definers_.size(); ++v) {
            if (!kept[definers_[v].first] || !kept[definers_[v].second]) {
                continue;
            }
            bool covered = false;
            for (std::size_t t = offsets_[v]; t < offsets_[v + 1] && !covered; ++t) {
                covered = kept[covers_[t]] != 0;
            }
            s += covered ? 0 : 1;
        }
        return s;
    }

private:
    std::size_t n_;
    std::vector<std::pair<std::size_t, std::size_t>> definers_;
    std::vector<std::size_t> offsets_;
    std::vector<std::size_t> covers_;
};

struct SampleReport {
    double p = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::size_t intersections = 0;  // |Z|
    int omega = 0;
    double c = 6.0;
    double mean_S = 0.0;
    double stddev_S = 0.0;
    double ci_halfwidth = 0.0;  // 95% normal approximation; infinite for one trial
    double exact_E = 0.0;
    double lower_bound = 0.0;  // |Z| p^2 (1-p)^(omega-2)
    double upper_bound = 0.0;  // c p n
    double mean_picked = 0.0;
    std::uint64_t per_trial_violations = 0;  // trials with S* > 6 n* - 12, n* >= 3

    bool mean_within_ci() const { return std::abs(mean_S - exact_E) <= ci_halfwidth; }
    bool chain_holds() const { return lower_bound <= exact_E && exact_E <= upper_bound; }
};

inline constexpr std::uint64_t kDefaultTrials = 100'000;

// Monte Carlo over `trials` independent samples; trial t draws from the
// stream derive_seed(seed, t), so results do not depend on evaluation order.
inline SampleReport run_trials(const Family& f, double p, std::uint64_t trials, std::uint64_t seed, double c = 6.0,
                               std::optional<int> omega = std::nullopt) {
    if (!f.is_discs()) {
        throw KindError("run_trials requires a discs family");
    }
    if (!(p > 0.0 && p < 1.0)) {
        throw ParameterError("p must lie strictly between 0 and 1");
    }
    if (trials < 1) {
        throw ParameterError("trials must be at least 1");
    }
    const auto pts = intersection_points(f);
    SampleReport rep;
    rep.p = p;
    rep.trials = trials;
    rep.seed = seed;
    rep.n = f.size();
    rep.intersections = pts.size();
    rep.c = c;
    rep.omega = omega ? *omega : clique_number(build_graph(f)).omega;
    rep.exact_E = closed_form_expectation(depths_of(pts), p);
    rep.lower_bound = static_cast<double>(pts.size()) * survival_probability(rep.omega, p);
    rep.upper_bound = c * p * static_cast<double>(rep.n);

    const SubfamilyUnionCounter counter(f, pts);
    std::vector<char> kept(rep.n, 0);
    // Integer accumulators keep the aggregate exact and order-independent.
    std::uint64_t sum = 0;
    std::uint64_t sum_sq = 0;
    std::uint64_t picked_total = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, t));
        std::uint64_t picked = 0;
        for (auto& k : kept) {
            k = bernoulli(rng, p) ? 1 : 0;
            picked += static_cast<std::uint64_t>(k);
        }
        const std::uint64_t s = counter.count(kept);
        sum += s;
        sum_sq += s * s;
        picked_total += picked;
        if (picked >= 3 && static_cast<double>(s) > 6.0 * static_cast<double>(picked) - 12.0) {
            ++rep.per_trial_violations;
        }
    }
    const double T = static_cast<double>(trials);
    rep.mean_S = static_cast<double>(sum) / T;
    rep.mean_picked = static_cast<double>(picked_total) / T;
    if (trials > 1) {
        const double var = (static_cast<double>(sum_sq) - T * rep.mean_S * rep.mean_S) / (T - 1.0);
        rep.stddev_S = std::sqrt(std::max(0.0, var));
        rep.ci_halfwidth = 1.96 * rep.stddev_S / std::sqrt(T);
    } else {
        rep.ci_halfwidth = std::numeric_limits<double>::infinity();
    }
    return rep;
}

// Sampling probability used when none is given: 1/omega (1/2 when omega < 2,
// where the arrangement has no vertices and any p gives the same chain).
inline double auto_probability(int omega) { return 1.0 / static_cast<double>(std::max(omega, 2)); }

struct SamplingChainReport {
    double p = 0.0;
    int omega = 0;
    std::size_t n = 0;
    std::size_t intersections = 0;
    double exact_E = 0.0;
    double lower_bound = 0.0;
    double upper_bound = 0.0;
    BoundReport bounds;

    bool passed() const { return bounds.passed(); }
};

// Deterministic replay of the expectation chain at p = 1/omega:
// |Z| p^2 (1-p)^(omega-2) <= E(S*) <= c p n, and |Z| <= c e omega n.
inline SamplingChainReport check_sampling_chain(const Family& f, std::span<const IntersectionPoint> points, int omega,
                                                double c = 6.0) {
    if (!f.is_discs()) {
        throw KindError("check_sampling_chain requires a discs family");
    }
    SamplingChainReport rep;
    rep.omega = omega;
    rep.p = auto_probability(omega);
    rep.n = f.size();
    rep.intersections = points.size();
    rep.exact_E = closed_form_expectation(depths_of(points), rep.p);
    rep.lower_bound = static_cast<double>(points.size()) * survival_probability(omega, rep.p);
    rep.upper_bound = c * rep.p * static_cast<double>(rep.n);
    const double n = static_cast<double>(rep.n);
    rep.bounds.add("|Z| p^2 (1-p)^(omega-2) <= E(S*)", rep.lower_bound, Relation::LessEqual, rep.exact_E);
    rep.bounds.add("E(S*) <= c p n", rep.exact_E, Relation::LessEqual, rep.upper_bound);
    rep.bounds.add("|Z| <= c e omega n", static_cast<double>(points.size()), Relation::LessEqual,
                   c * std::numbers::e * omega * n);
    return rep;
}

inline SamplingChainReport check_sampling_chain(const Family& f, double c = 6.0) {
    if (!f.is_discs()) {
        throw KindError("check_sampling_chain requires a discs family");
    }
    const auto pts = intersection_points(f);
    return check_sampling_chain(f, pts, clique_number(build_graph(f)).omega, c);
}

namespace detail {

inline nlohmann::ordered_json finite_or_null(double v) {
    return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const SampleReport& r) {
    nlohmann::ordered_json j;
    j["p"] = r.p;
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["n"] = r.n;
    j["intersections"] = r.intersections;
    j["omega"] = r.omega;
    j["c"] = r.c;
    j["mean_S"] = r.mean_S;
    j["stddev_S"] = r.stddev_S;
    j["ci_halfwidth"] = detail::finite_or_null(r.ci_halfwidth);
    j["exact_E"] = r.exact_E;
    j["lower_bound"] = r.lower_bound;
    j["upper_bound"] = r.upper_bound;
    j["mean_picked"] = r.mean_picked;
    j["per_trial_violations"] = r.per_trial_violations;
    j["mean_within_ci"] = r.mean_within_ci();
    return j;
}

inline nlohmann::ordered_json to_json(const SamplingChainReport& r) {
    nlohmann::ordered_json j;
    j["p"] = r.p;
    j["omega"] = r.omega;
    j["n"] = r.n;
    j["intersections"] = r.intersections;
    j["exact_E"] = r.exact_E;
    j["lower_bound"] = r.lower_bound;
    j["upper_bound"] = r.upper_bound;
    j["bounds"] = to_json(r.bounds);
    return j;
}

}  // namespace ucb
