#pragma once

// Intersection graphs of disc families: construction, exact clique number,
// degeneracy order, first-fit coloring, and the edge / coloring bounds.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ucb/bitset.hpp"
#include "ucb/errors.hpp"
#include "ucb/family.hpp"
#include "ucb/report.hpp"

namespace ucb {

enum class EdgeClass { BoundaryCrossing, Containment };

inline const char* to_string(EdgeClass c) {
    return c == EdgeClass::Containment ? "containment" : "boundary_crossing";
}

struct Edge {
    MemberId u = 0;  // u < v
    MemberId v = 0;
    EdgeClass cls = EdgeClass::BoundaryCrossing;
};

class IntersectionGraph {
public:
    IntersectionGraph() = default;
    explicit IntersectionGraph(std::size_t n) : adj_(n), rows_(n, VertexSet(n)) {}

    IntersectionGraph(std::size_t n, std::span<const std::pair<int, int>> edges) : IntersectionGraph(n) {
        for (auto [u, v] : edges) {
            add_edge(static_cast<MemberId>(u), static_cast<MemberId>(v));
        }
    }

    void add_edge(MemberId u, MemberId v, EdgeClass cls = EdgeClass::BoundaryCrossing) {
        if (u == v || u < 0 || v < 0 || static_cast<std::size_t>(std::max(u, v)) >= adj_.size()) {
            throw ParameterError("invalid edge " + std::to_string(u) + "-" + std::to_string(v));
        }
        if (u > v) {
            std::swap(u, v);
        }
        if (adjacent(u, v)) {
            return;
        }
        edges_.push_back({u, v, cls});
        auto insert_sorted = [](std::vector<MemberId>& list, MemberId x) {
            list.insert(std::lower_bound(list.begin(), list.end(), x), x);
        };
        insert_sorted(adj_[static_cast<std::size_t>(u)], v);
        insert_sorted(adj_[static_cast<std::size_t>(v)], u);
        rows_[static_cast<std::size_t>(u)].set(static_cast<std::size_t>(v));
        rows_[static_cast<std::size_t>(v)].set(static_cast<std::size_t>(u));
    }

    std::size_t n() const noexcept { return adj_.size(); }
    std::size_t m() const noexcept { return edges_.size(); }
    std::span<const Edge> edges() const noexcept { return edges_; }
    std::span<const MemberId> neighbors(MemberId v) const { return adj_.at(static_cast<std::size_t>(v)); }
    std::size_t degree(MemberId v) const { return neighbors(v).size(); }
    bool adjacent(MemberId u, MemberId v) const {
        return rows_.at(static_cast<std::size_t>(u)).test(static_cast<std::size_t>(v));
    }
    const VertexSet& row(std::size_t v) const { return rows_.at(v); }

    std::size_t count(EdgeClass cls) const {
        return static_cast<std::size_t>(
            std::count_if(edges_.begin(), edges_.end(), [cls](const Edge& e) { return e.cls == cls; }));
    }

private:
    std::vector<std::vector<MemberId>> adj_;
    std::vector<VertexSet> rows_;
    std::vector<Edge> edges_;
};

// Two closed discs meet iff d < r_i + r_j; one lies inside the other iff
// d < |r_i - r_j|. General position keeps d away from both thresholds.
inline IntersectionGraph build_graph(const Family& f) {
    if (!f.is_discs()) {
        throw KindError("build_graph requires a discs family");
    }
    const auto discs = f.discs();
    IntersectionGraph g(discs.size());
    for (std::size_t i = 0; i < discs.size(); ++i) {
        for (std::size_t j = i + 1; j < discs.size(); ++j) {
            const Circle& a = discs[i];
            const Circle& b = discs[j];
            const double d = std::hypot(a.cx - b.cx, a.cy - b.cy);
            if (d < a.r + b.r) {
                g.add_edge(a.id, b.id, d < std::abs(a.r - b.r) ? EdgeClass::Containment : EdgeClass::BoundaryCrossing);
            }
        }
    }
    return g;
}

struct CliqueResult {
    int omega = 0;
    std::vector<MemberId> witness;  // lexicographically smallest maximum clique
    std::uint64_t nodes = 0;        // search nodes expanded
};

namespace detail {

// Branch and bound with greedy-coloring bounds. Finds a clique of size
// > `floor` inside `candidates` if one exists, and the largest such.
class CliqueSearch {
public:
    CliqueSearch(const IntersectionGraph& g, std::uint64_t budget) : g_(g), budget_(budget) {}

    // Largest clique inside `candidates` of size > floor; empty if none.
    std::vector<MemberId> run(const VertexSet& candidates, int floor) {
        best_size_ = floor;
        best_.clear();
        current_.clear();
        expand(candidates);
        return best_;
    }

    std::uint64_t nodes() const noexcept { return nodes_; }

private:
    void expand(const VertexSet& cand) {
        if (++nodes_ > budget_) {
            throw BudgetExceeded("clique search exceeded " + std::to_string(budget_) + " nodes");
        }
        std::vector<std::size_t> order;
        std::vector<int> bound;
        color_sort(cand, order, bound);
        VertexSet p = cand;
        for (std::size_t idx = order.size(); idx-- > 0;) {
            if (static_cast<int>(current_.size()) + bound[idx] <= best_size_) {
                return;
            }
            const std::size_t v = order[idx];
            current_.push_back(static_cast<MemberId>(v));
            VertexSet next = p & g_.row(v);
            if (next.any()) {
                expand(next);
            } else if (static_cast<int>(current_.size()) > best_size_) {
                best_size_ = static_cast<int>(current_.size());
                best_ = current_;
            }
            current_.pop_back();
            p.reset(v);
        }
    }

    // Greedy coloring of the candidate set into independent classes;
    // bound[i] = number of classes used by order[0..i].
    void color_sort(const VertexSet& cand, std::vector<std::size_t>& order, std::vector<int>& bound) const {
        VertexSet uncolored = cand;
        int color = 0;
        while (uncolored.any()) {
            ++color;
            VertexSet open = uncolored;
            for (std::size_t v = open.first(); v != VertexSet::npos; v = open.first()) {
                open.reset(v);
                open.subtract(g_.row(v));
                uncolored.reset(v);
                order.push_back(v);
                bound.push_back(color);
            }
        }
    }

    const IntersectionGraph& g_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    int best_size_ = 0;
    std::vector<MemberId> best_;
    std::vector<MemberId> current_;
};

}  // namespace detail

inline constexpr std::uint64_t kDefaultCliqueBudget = 50'000'000;

// Exact clique number. With want_witness, also the lexicographically smallest
// clique of maximum size, found by fixing members in increasing id order.
inline CliqueResult clique_number(const IntersectionGraph& g, std::uint64_t budget = kDefaultCliqueBudget,
                                  bool want_witness = false) {
    if (g.n() == 0) {
        throw ParameterError("clique_number needs at least one vertex");
    }
    detail::CliqueSearch search(g, budget);
    VertexSet all(g.n());
    for (std::size_t v = 0; v < g.n(); ++v) {
        all.set(v);
    }
    CliqueResult res;
    res.omega = static_cast<int>(search.run(all, 0).size());

    // Lexicographic witness: smallest next vertex that still extends to an omega-clique.
    VertexSet cand = all;
    while (want_witness && static_cast<int>(res.witness.size()) < res.omega) {
        bool extended = false;
        for (std::size_t v = 0; v < g.n() && !extended; ++v) {
            if (!cand.test(v)) {
                continue;
            }
            VertexSet rest = cand & g.row(v);
            for (std::size_t u = 0; u <= v; ++u) {
                rest.reset(u);
            }
            const int need = res.omega - static_cast<int>(res.witness.size()) - 1;
            if (need == 0 || static_cast<int>(search.run(rest, need - 1).size()) >= need) {
                res.witness.push_back(static_cast<MemberId>(v));
                cand = rest;
                extended = true;
            }
        }
        if (!extended) {
            throw Error("clique witness reconstruction failed");
        }
    }
    res.nodes = search.nodes();
    return res;
}

struct DegeneracyResult {
    std::vector<MemberId> order;     // every vertex has < col neighbors before it
    std::vector<int> removal_degree;  // degree of each vertex when it was removed
    int col = 1;
};

// Repeatedly removes a minimum-degree vertex (smallest id on ties); the
// reversed removal sequence is the order, col = 1 + max degree at removal.
inline DegeneracyResult degeneracy_order(const IntersectionGraph& g) {
    const std::size_t n = g.n();
    if (n == 0) {
        throw ParameterError("degeneracy_order needs at least one vertex");
    }
    DegeneracyResult res;
    res.removal_degree.assign(n, 0);
    std::vector<int> deg(n);
    std::vector<bool> removed(n, false);
    std::set<std::pair<int, MemberId>> queue;
    for (std::size_t v = 0; v < n; ++v) {
        deg[v] = static_cast<int>(g.degree(static_cast<MemberId>(v)));
        queue.insert({deg[v], static_cast<MemberId>(v)});
    }
    std::vector<MemberId> removal;
    removal.reserve(n);
    int max_removal_degree = 0;
    while (!queue.empty()) {
        const auto [d, v] = *queue.begin();
        queue.erase(queue.begin());
        removed[static_cast<std::size_t>(v)] = true;
        res.removal_degree[static_cast<std::size_t>(v)] = d;
        max_removal_degree = std::max(max_removal_degree, d);
        removal.push_back(v);
        for (MemberId u : g.neighbors(v)) {
            const auto ui = static_cast<std::size_t>(u);
            if (!removed[ui]) {
                queue.erase({deg[ui], u});
                --deg[ui];
                queue.insert({deg[ui], u});
            }
        }
    }
    res.order.assign(removal.rbegin(), removal.rend());
    res.col = max_removal_degree + 1;
    return res;
}

struct Coloring {
    std::vector<int> color;  // indexed by vertex, colors 0..count-1
    int count = 0;
};

// First-fit along `order`.
inline Coloring greedy_color(const IntersectionGraph& g, std::span<const MemberId> order) {
    const std::size_t n = g.n();
    if (order.size() != n) {
        throw ParameterError("greedy_color needs a permutation of all vertices");
    }
    Coloring res;
    res.color.assign(n, -1);
    std::vector<char> used;
    for (MemberId v : order) {
        const auto vi = static_cast<std::size_t>(v);
        if (vi >= n || res.color[vi] != -1) {
            throw ParameterError("greedy_color order is not a permutation");
        }
        used.assign(g.degree(v) + 1, 0);
        for (MemberId u : g.neighbors(v)) {
            const int c = res.color[static_cast<std::size_t>(u)];
            if (c >= 0 && static_cast<std::size_t>(c) < used.size()) {
                used[static_cast<std::size_t>(c)] = 1;
            }
        }
        int c = 0;
        while (used[static_cast<std::size_t>(c)]) {
            ++c;
        }
        res.color[vi] = c;
        res.count = std::max(res.count, c + 1);
    }
    return res;
}

inline bool is_proper(const IntersectionGraph& g, const Coloring& coloring) {
    return std::all_of(g.edges().begin(), g.edges().end(), [&](const Edge& e) {
        return coloring.color[static_cast<std::size_t>(e.u)] != coloring.color[static_cast<std::size_t>(e.v)];
    });
}

struct GraphStats {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t crossing_pairs = 0;
    std::size_t containment_pairs = 0;
    int omega = 0;
    std::vector<MemberId> omega_witness;
    std::vector<MemberId> degeneracy_order;
    int col = 0;
    int chi_greedy = 0;
};

inline GraphStats graph_stats(const IntersectionGraph& g, bool want_witness = false,
                              std::uint64_t clique_budget = kDefaultCliqueBudget) {
    GraphStats s;
    s.n = g.n();
    s.m = g.m();
    s.crossing_pairs = g.count(EdgeClass::BoundaryCrossing);
    s.containment_pairs = g.count(EdgeClass::Containment);
    auto clique = clique_number(g, clique_budget, want_witness);
    s.omega = clique.omega;
    s.omega_witness = std::move(clique.witness);
    auto degen = degeneracy_order(g);
    s.col = degen.col;
    s.chi_greedy = greedy_color(g, degen.order).count;
    s.degeneracy_order = std::move(degen.order);
    return s;
}

inline GraphStats graph_stats(const Family& f, bool want_witness = false) {
    return graph_stats(build_graph(f), want_witness);
}

// Edge bound m <= ((c e / 2 + 1) omega - 1) n and its two constituents.
inline BoundReport check_edge_bounds(const GraphStats& s, double c = 6.0) {
    const double e = std::numbers::e;
    const double n = static_cast<double>(s.n);
    const double w = static_cast<double>(s.omega);
    BoundReport rep;
    rep.add("m <= ((ce/2+1)omega-1)n", static_cast<double>(s.m), Relation::LessEqual, ((c * e / 2.0 + 1.0) * w - 1.0) * n);
    rep.add("crossing_pairs <= (ce/2)omega n", static_cast<double>(s.crossing_pairs), Relation::LessEqual,
            c * e / 2.0 * w * n);
    rep.add("containment_pairs <= (omega-1)n", static_cast<double>(s.containment_pairs), Relation::LessEqual,
            (w - 1.0) * n);
    return rep;
}

inline BoundReport check_edge_bounds(const Family& f, double c = 6.0) {
    if (!f.is_discs()) {
        throw KindError("check_edge_bounds requires a discs family");
    }
    return check_edge_bounds(graph_stats(f), c);
}

inline BoundReport check_coloring_bounds(const GraphStats& s) {
    const double w = static_cast<double>(s.omega);
    BoundReport rep;
    rep.add("chi_greedy <= col", s.chi_greedy, Relation::LessEqual, s.col);
    rep.add("col < (6e+2)omega", s.col, Relation::Less, (6.0 * std::numbers::e + 2.0) * w);
    rep.add("col < 19 omega", s.col, Relation::Less, 19.0 * w);
    return rep;
}

inline BoundReport check_coloring_bounds(const Family& f) {
    if (!f.is_discs()) {
        throw KindError("check_coloring_bounds requires a discs family");
    }
    return check_coloring_bounds(graph_stats(f));
}

inline nlohmann::ordered_json stats_to_json(const GraphStats& s, double c = 6.0) {
    const BoundReport edges = check_edge_bounds(s, c);
    const BoundReport coloring = check_coloring_bounds(s);
    nlohmann::ordered_json j;
    j["n"] = s.n;
    j["m"] = s.m;
    j["crossing_pairs"] = s.crossing_pairs;
    j["containment_pairs"] = s.containment_pairs;
    j["omega"] = s.omega;
    j["col"] = s.col;
    j["chi_greedy"] = s.chi_greedy;
    if (!s.omega_witness.empty()) {
        j["omega_witness"] = s.omega_witness;
    }
    j["bounds"]["edges"] = {{"bound", edges.checks.front().rhs}, {"pass", edges.passed()}, {"checks", to_json(edges)["checks"]}};
    j["bounds"]["coloring"] = {{"col_over_omega", s.omega > 0 ? static_cast<double>(s.col) / s.omega : 0.0},
                                {"pass", coloring.passed()},
                                {"checks", to_json(coloring)["checks"]}};
    return j;
}

}  // namespace ucb
