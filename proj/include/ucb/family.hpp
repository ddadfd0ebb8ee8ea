#pragma once

// Families of discs or quadratic curves, and the generators that build them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ucb/errors.hpp"
#include "ucb/geom.hpp"
#include "ucb/rng.hpp"
#include "ucb/validation.hpp"

namespace ucb {

enum class FamilyKind { Discs, Curves };

inline const char* to_string(FamilyKind k) { return k == FamilyKind::Discs ? "discs" : "curves"; }

// Extent used to derive the default tolerance: bounding-box diameter for
// discs; for curves (unbounded) the largest coefficient magnitude, at least 1.
inline double family_extent(std::span<const Circle> discs) {
    BoundingBox box;
    for (const Circle& c : discs) {
        box.expand(c);
    }
    return box.diameter();
}

inline double family_extent(std::span<const QuadCurve> curves) {
    double m = 1.0;
    for (const QuadCurve& q : curves) {
        m = std::max({m, std::abs(q.a), std::abs(q.b), std::abs(q.c)});
    }
    return m;
}

// Immutable, validated, homogeneous family with ids 0..n-1.
class Family {
public:
    static Family from_discs(std::vector<Circle> discs, std::optional<Tolerance> tol = std::nullopt,
                             std::string label = {}) {
        return Family(std::move(discs), tol, std::move(label), true);
    }

    static Family from_curves(std::vector<QuadCurve> curves, std::optional<Tolerance> tol = std::nullopt,
                              std::string label = {}) {
        return Family(std::move(curves), tol, std::move(label), true);
    }

    FamilyKind kind() const noexcept {
        return std::holds_alternative<std::vector<Circle>>(members_) ? FamilyKind::Discs : FamilyKind::Curves;
    }
    bool is_discs() const noexcept { return kind() == FamilyKind::Discs; }
    bool is_curves() const noexcept { return kind() == FamilyKind::Curves; }

    std::size_t size() const noexcept {
        return std::visit([](const auto& v) { return v.size(); }, members_);
    }

    std::span<const Circle> discs() const {
        if (!is_discs()) {
            throw KindError("expected a discs family, got curves");
        }
        return std::get<std::vector<Circle>>(members_);
    }

    std::span<const QuadCurve> curves() const {
        if (!is_curves()) {
            throw KindError("expected a curves family, got discs");
        }
        return std::get<std::vector<QuadCurve>>(members_);
    }

    const Tolerance& tol() const noexcept { return tol_; }
    const std::string& label() const noexcept { return label_; }

    // Members at the given positions, renumbered 0..|keep|-1 in the given order.
    // General position is hereditary, so the result is not re-validated.
    Family subfamily(std::span<const std::size_t> keep) const {
        return std::visit(
            [&](const auto& v) {
                std::remove_cvref_t<decltype(v)> out;
                out.reserve(keep.size());
                for (std::size_t i : keep) {
                    auto m = v.at(i);
                    m.id = static_cast<MemberId>(out.size());
                    out.push_back(m);
                }
                return Family(std::move(out), tol_, label_ + " [subfamily]", false);
            },
            members_);
    }

    friend bool operator==(const Family&, const Family&) = default;

private:
    template <class Member>
    Family(std::vector<Member> members, std::optional<Tolerance> tol, std::string label, bool validate)
        : label_(std::move(label)) {
        if (members.empty()) {
            throw ValidationError("a family needs at least one member");
        }
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (members[i].id != static_cast<MemberId>(i)) {
                throw ValidationError("member ids must be 0..n-1 in order; position " + std::to_string(i) +
                                      " has id " + std::to_string(members[i].id));
            }
        }
        const double extent = family_extent(std::span<const Member>(members));
        tol_ = tol.value_or(Tolerance::for_extent(extent));
        if (!(tol_.eps > 0.0) || !std::isfinite(tol_.eps)) {
            throw ValidationError("tolerance must be positive and finite");
        }
        if (validate && !(tol_.eps < extent / 1e3)) {
            throw ValidationError("tolerance " + std::to_string(tol_.eps) +
                                  " is not small relative to the family extent " + std::to_string(extent));
        }
        if (validate) {
            const auto report = validate_general_position(std::span<const Member>(members), tol_);
            if (!report.accepted()) {
                throw ValidationError("family is not in general position: " + report.summary());
            }
        }
        members_ = std::move(members);
    }

    std::variant<std::vector<Circle>, std::vector<QuadCurve>> members_;
    Tolerance tol_;
    std::string label_;
};

struct GeneratorParams {
    int n = 1;
    std::uint64_t seed = 0;

    // Discs: centers uniform in [box_min, box_max]^2, radii uniform in [r_min, r_max].
    double box_min = 0.0;
    double box_max = 10.0;
    double r_min = 0.5;
    double r_max = 2.0;
    // Common-point discs: the common point lies at least this deep inside every disc.
    double margin = 0.05;

    // Curves: |a| stratified over [a_min_abs, a_max] with random sign; b, c uniform
    // in [-b_range, b_range] and [-c_range, c_range]; a line (a = 0) with
    // probability line_fraction.
    double a_min_abs = 0.1;
    double a_max = 1.0;
    double b_range = 3.0;
    double c_range = 3.0;
    double line_fraction = 0.2;

    int max_rounds = 100;
    std::optional<double> eps;

    void check() const {
        if (n < 1) {
            throw ParameterError("n must be at least 1");
        }
        if (!(r_min > 0.0) || !(r_max >= r_min)) {
            throw ParameterError("radius range must satisfy 0 < r_min <= r_max");
        }
        if (!(box_max > box_min)) {
            throw ParameterError("box must satisfy box_min < box_max");
        }
        if (!(margin >= 0.0)) {
            throw ParameterError("margin must be non-negative");
        }
        if (!(a_min_abs > 0.0) || !(a_max > a_min_abs)) {
            throw ParameterError("curve range must satisfy 0 < a_min_abs < a_max");
        }
        if (!(b_range >= 0.0) || !(c_range >= 0.0) || !(line_fraction >= 0.0 && line_fraction <= 1.0)) {
            throw ParameterError("curve coefficient ranges must be non-negative, line_fraction in [0,1]");
        }
        if (max_rounds < 1) {
            throw ParameterError("max_rounds must be at least 1");
        }
        if (eps && !(*eps > 0.0)) {
            throw ParameterError("eps must be positive");
        }
    }
};

namespace detail {

template <class Member, class Sample>
Family generate_until_valid(const GeneratorParams& params, const std::string& label, Sample&& sample) {
    params.check();
    for (int round = 0; round < params.max_rounds; ++round) {
        Rng rng(derive_seed(params.seed, static_cast<std::uint64_t>(round)));
        std::vector<Member> members = sample(rng);
        const std::span<const Member> view(members);
        const Tolerance tol = params.eps ? Tolerance{*params.eps} : Tolerance::for_extent(family_extent(view));
        if (!validate_general_position(view, tol, 1).accepted()) {
            continue;
        }
        return [&] {
            if constexpr (std::is_same_v<Member, Circle>) {
                return Family::from_discs(std::move(members), tol, label);
            } else {
                return Family::from_curves(std::move(members), tol, label);
            }
        }();
    }
    throw GenerationFailure(label + ": no family in general position after " +
                            std::to_string(params.max_rounds) + " rounds");
}

inline std::string seeded_label(const char* name, const GeneratorParams& p) {
    return std::string(name) + " n=" + std::to_string(p.n) + " seed=" + std::to_string(p.seed);
}

}  // namespace detail

inline Family gen_random_discs(const GeneratorParams& params) {
    return detail::generate_until_valid<Circle>(params, detail::seeded_label("random-discs", params), [&](Rng& rng) {
        std::vector<Circle> discs;
        discs.reserve(static_cast<std::size_t>(params.n));
        for (int i = 0; i < params.n; ++i) {
            const double cx = uniform(rng, params.box_min, params.box_max);
            const double cy = uniform(rng, params.box_min, params.box_max);
            const double r = uniform(rng, params.r_min, params.r_max);
            discs.push_back({i, cx, cy, r});
        }
        return discs;
    });
}

// Every disc contains `common` at depth at least params.margin.
inline Family gen_common_point_discs(const GeneratorParams& params, Point common) {
    if (!(params.r_min > params.margin)) {
        throw ParameterError("common-point discs need r_min > margin");
    }
    if (params.eps && !(params.margin > *params.eps)) {
        throw ParameterError("common-point discs need margin > eps");
    }
    auto label = detail::seeded_label("common-point-discs", params);
    Family f = detail::generate_until_valid<Circle>(params, label, [&](Rng& rng) {
        std::vector<Circle> discs;
        discs.reserve(static_cast<std::size_t>(params.n));
        for (int i = 0; i < params.n; ++i) {
            const double r = uniform(rng, params.r_min, params.r_max);
            const double reach = r - params.margin;
            const double rho = reach * std::sqrt(uniform(rng, 0.0, 1.0));
            const double theta = uniform(rng, 0.0, 2.0 * std::numbers::pi);
            discs.push_back({i, common.x + rho * std::cos(theta), common.y + rho * std::sin(theta), r});
        }
        return discs;
    });
    if (!(params.margin > f.tol().eps)) {
        throw ParameterError("common-point discs need margin > eps");
    }
    return f;
}

// k-1 horizontal lines y = i/(4k) under n-k+1 unit parabolas y = (x-i)^2.
inline Family gen_lines_parabolas(int n, int k) {
    if (k < 2 || k > n) {
        throw ParameterError("lines-parabolas needs 2 <= k <= n (got k=" + std::to_string(k) +
                             ", n=" + std::to_string(n) + ")");
    }
    std::vector<QuadCurve> curves;
    curves.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= k - 1; ++i) {
        curves.push_back({static_cast<MemberId>(curves.size()), 0.0, 0.0,
                          static_cast<double>(i) / (4.0 * static_cast<double>(k))});
    }
    for (int i = 1; i <= n - k + 1; ++i) {
        const double shift = static_cast<double>(i);
        curves.push_back({static_cast<MemberId>(curves.size()), 1.0, -2.0 * shift, shift * shift});
    }
    return Family::from_curves(std::move(curves), std::nullopt,
                               "lines-parabolas n=" + std::to_string(n) + " k=" + std::to_string(k));
}

inline Family gen_random_curves(const GeneratorParams& params) {
    return detail::generate_until_valid<QuadCurve>(params, detail::seeded_label("random-curves", params), [&](Rng& rng) {
        const auto n = static_cast<std::size_t>(params.n);
        // One |a| per stratum keeps leading coefficients of any two parabolas
        // apart, which bounds how far out their intersections can land.
        std::vector<double> magnitudes(n);
        const double width = (params.a_max - params.a_min_abs) / static_cast<double>(n);
        for (std::size_t s = 0; s < n; ++s) {
            magnitudes[s] = params.a_min_abs + width * (static_cast<double>(s) + uniform(rng, 0.25, 0.75));
        }
        ucb::shuffle(magnitudes.begin(), magnitudes.end(), rng);

        std::vector<QuadCurve> curves;
        curves.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            const bool line = bernoulli(rng, params.line_fraction);
            const double sign = bernoulli(rng, 0.5) ? 1.0 : -1.0;
            const double a = line ? 0.0 : sign * magnitudes[i];
            const double b = uniform(rng, -params.b_range, params.b_range);
            const double c = uniform(rng, -params.c_range, params.c_range);
            curves.push_back({static_cast<MemberId>(i), a, b, c});
        }
        return curves;
    });
}

}  // namespace ucb
