#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "vc2ss/cover.hpp"
#include "vc2ss/decompose.hpp"
#include "vc2ss/graph.hpp"

namespace vc2ss {

// The exact solvers below are reference implementations used to validate the
// fast pipeline.  They enumerate, so they refuse inputs beyond a budget; that
// refusal (BudgetExceeded) is never confused with "no solution exists"
// (invalid_argument) or a defect (InternalError).
struct OracleBudget {
    int max_vertices;
    std::uint64_t max_nodes;  // branch-and-bound node limit
};

inline constexpr OracleBudget k_default_2vcss_budget{8, 20'000'000};
inline constexpr OracleBudget k_default_cover_budget{10, 20'000'000};
inline constexpr OracleBudget k_default_matching_budget{10, 50'000'000};

namespace detail {

inline void require_vertices(const Graph& g, const OracleBudget& budget, const char* who) {
    if (g.n() > budget.max_vertices)
        throw BudgetExceeded(std::string(who) + ": graph has " + std::to_string(g.n()) +
                             " vertices, budget allows " + std::to_string(budget.max_vertices));
}

inline void count_node(std::uint64_t& nodes, const OracleBudget& budget, const char* who) {
    if (++nodes > budget.max_nodes)
        throw BudgetExceeded(std::string(who) + ": exceeded " + std::to_string(budget.max_nodes) +
                             " search nodes");
}

}  // namespace detail

// Minimum-cardinality spanning 2-vertex-connected subgraph, by edge-wise
// include/exclude search.  Bounds: any solution needs >= n edges and each
// further edge fixes at most two units of degree deficiency.
inline EdgeSet exact_2vcss(const Graph& g, OracleBudget budget = k_default_2vcss_budget) {
    if (g.n() < 3 || !is_2vc(g))
        throw std::invalid_argument("exact_2vcss: input must be 2-vertex-connected");
    detail::require_vertices(g, budget, "exact_2vcss");

    // greedy upper bound: drop edges while the remainder stays feasible
    EdgeSet best = full_set(g);
    for (EdgeId id = 0; id < g.m(); ++id) {
        best.remove(id);
        if (!is_spanning_2vc(best)) best.add(id);
    }
    int ub = best.count();

    EdgeSet chosen(g);
    EdgeSet available = full_set(g);
    std::uint64_t nodes = 0;

    auto deficiency = [&]() {
        int d = 0;
        for (Vertex v = 0; v < g.n(); ++v) d += std::max(0, 2 - chosen.degree(v));
        return d;
    };

    auto rec = [&](auto&& self, EdgeId i) -> void {
        detail::count_node(nodes, budget, "exact_2vcss");
        if (is_spanning_2vc(chosen)) {
            // supersets only grow, so this node is settled
            if (chosen.count() < ub) {
                ub = chosen.count();
                best = chosen;
            }
            return;
        }
        if (i == g.m()) return;
        int lb = std::max(g.n(), chosen.count() + (deficiency() + 1) / 2);
        if (lb >= ub) return;

        chosen.add(i);
        self(self, i + 1);
        chosen.remove(i);

        available.remove(i);
        if (is_spanning_2vc(available)) self(self, i + 1);
        available.add(i);
    };
    rec(rec, 0);
    check(is_spanning_2vc(best), "exact_2vcss: search lost feasibility");
    return best;
}

// Minimum edge set giving every vertex degree >= 2.
inline EdgeSet exact_min_2edge_cover(const Graph& g, OracleBudget budget = k_default_cover_budget) {
    for (Vertex v = 0; v < g.n(); ++v)
        if (g.degree(v) < 2)
            throw std::invalid_argument("exact_min_2edge_cover: vertex of degree < 2");
    detail::require_vertices(g, budget, "exact_min_2edge_cover");

    EdgeSet best = full_set(g);
    for (EdgeId id = 0; id < g.m(); ++id) {
        auto [u, v] = g.edge(id);
        if (best.degree(u) >= 3 && best.degree(v) >= 3) best.remove(id);
    }
    int ub = best.count();

    EdgeSet chosen(g);
    EdgeSet available = full_set(g);
    std::uint64_t nodes = 0;

    auto deficiency = [&]() {
        int d = 0;
        for (Vertex v = 0; v < g.n(); ++v) d += std::max(0, 2 - chosen.degree(v));
        return d;
    };

    auto rec = [&](auto&& self, EdgeId i) -> void {
        detail::count_node(nodes, budget, "exact_min_2edge_cover");
        int def = deficiency();
        if (def == 0) {
            if (chosen.count() < ub) {
                ub = chosen.count();
                best = chosen;
            }
            return;
        }
        if (i == g.m()) return;
        if (chosen.count() + (def + 1) / 2 >= ub) return;

        chosen.add(i);
        self(self, i + 1);
        chosen.remove(i);

        auto [u, v] = g.edge(i);
        available.remove(i);
        if (available.degree(u) >= 2 && available.degree(v) >= 2) self(self, i + 1);
        available.add(i);
    };
    rec(rec, 0);
    check(is_2edge_cover(best), "exact_min_2edge_cover: search lost feasibility");
    return best;
}

// Maximum-cardinality matching by include/exclude search.
inline EdgeSet exact_max_matching(const Graph& g,
                                  OracleBudget budget = k_default_matching_budget) {
    detail::require_vertices(g, budget, "exact_max_matching");

    EdgeSet best(g);
    EdgeSet chosen(g);
    std::uint64_t nodes = 0;
    int free_vertices = g.n();

    auto rec = [&](auto&& self, EdgeId i) -> void {
        detail::count_node(nodes, budget, "exact_max_matching");
        if (chosen.count() > best.count()) best = chosen;
        if (i == g.m()) return;
        int cap = chosen.count() + std::min(g.m() - i, free_vertices / 2);
        if (cap <= best.count()) return;

        auto [u, v] = g.edge(i);
        if (chosen.degree(u) == 0 && chosen.degree(v) == 0) {
            chosen.add(i);
            free_vertices -= 2;
            self(self, i + 1);
            free_vertices += 2;
            chosen.remove(i);
        }
        self(self, i + 1);
    };
    rec(rec, 0);
    for (Vertex v = 0; v < g.n(); ++v)
        check(best.degree(v) <= 1, "exact_max_matching: result is not a matching");
    return best;
}

}  // namespace vc2ss
