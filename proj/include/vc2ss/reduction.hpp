#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "vc2ss/decompose.hpp"
#include "vc2ss/graph.hpp"
#include "vc2ss/rational.hpp"
#include "vc2ss/structure.hpp"

namespace vc2ss {

struct ReductionConfig {
    Rational alpha{4, 3};  // approximation target; only affects the brute-force cutoff
};

// Graphs below this size are solved exactly. The cutoff grows as the target
// ratio approaches 1 (exactness on small instances buys the additive slack
// the divide steps consume); at the default 4/3 it is 6.
inline int small_graph_threshold(const ReductionConfig& cfg) {
    if (!(Rational(1) < cfg.alpha))
        throw std::invalid_argument("approximation target must exceed 1");
    Rational cutoff = Rational(2) / (cfg.alpha - Rational(1));
    return static_cast<int>(std::max<std::int64_t>(6, cutoff.ceil()));
}

struct ReductionStats {
    int brute_calls = 0;
    int irrelevant_deletions = 0;
    int cut_splits = 0;
    int five_cycle_deletions = 0;
    int structured_calls = 0;
};

// Exact minimum spanning 2-connected subgraph by subset enumeration in
// increasing cardinality. Deliberately naive: this is the base case of the
// divide phase and doubles as a second, structure-free reference answer.
inline EdgeSet brute_force_small(const Graph& g, std::uint64_t max_subsets = 100'000'000) {
    if (g.n() < 3 || !is_2vc(g))
        throw std::invalid_argument("brute_force_small: input must be 2-vertex-connected");
    std::uint64_t tried = 0;
    for (int k = g.n(); k <= g.m(); ++k) {
        std::vector<char> sel(static_cast<std::size_t>(g.m()), 0);
        std::fill(sel.begin(), sel.begin() + k, 1);
        do {
            if (++tried > max_subsets)
                throw BudgetExceeded("brute_force_small: subset budget exhausted; "
                                     "the chosen approximation target brute-forces too large a graph");
            EdgeSet s(g);
            for (EdgeId id = 0; id < g.m(); ++id)
                if (sel[id]) s.add(id);
            if (is_spanning_2vc(s)) return s;
        } while (std::prev_permutation(sel.begin(), sel.end()));
    }
    throw InternalError("brute_force_small: full edge set infeasible on 2-connected input");
}

// Divide step on a non-isolating 2-cut {u,v}: the components of G - {u,v}
// are packed into two sides of at least two vertices each, and each side is
// solved on the graph where the other side collapses to one vertex.
struct CutSplit {
    std::vector<Vertex> side1, side2;  // partition of V minus {u,v}, each >= 2
    Contraction part1;                 // keeps side1 and {u,v}; side2 shrinks to `merged`
    Contraction part2;                 // keeps side2 and {u,v}; side1 shrinks to `merged`
};

inline CutSplit split_on_cut(const Graph& g, const TwoCut& cut) {
    check(g.n() >= 6, "split_on_cut: needs at least 6 vertices");
    check(cut.comps.size() >= 2 && !cut_is_isolating(cut.comps),
          "split_on_cut: cut must be non-isolating");

    // smallest components first, stable so equal sizes keep canonical order
    std::vector<std::size_t> order(cut.comps.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return cut.comps[a].size() < cut.comps[b].size();
    });

    CutSplit res;
    std::size_t i = 0;
    while (res.side1.size() < 2) {
        check(i < order.size(), "split_on_cut: ran out of components packing side 1");
        const auto& comp = cut.comps[order[i++]];
        res.side1.insert(res.side1.end(), comp.begin(), comp.end());
    }
    for (; i < order.size(); ++i) {
        const auto& comp = cut.comps[order[i]];
        res.side2.insert(res.side2.end(), comp.begin(), comp.end());
    }
    check(res.side1.size() >= 2 && res.side2.size() >= 2,
          "split_on_cut: both sides must hold at least two vertices");
    std::sort(res.side1.begin(), res.side1.end());
    std::sort(res.side2.begin(), res.side2.end());

    res.part1 = contract(g, res.side2);
    res.part2 = contract(g, res.side1);

    // each side sees the other only through {u,v}; 2-connectedness of g makes
    // both attachments real, so the merged vertex has exactly these two edges
    for (const Contraction* c : {&res.part1, &res.part2}) {
        check(c->graph.degree(c->merged) == 2, "split_on_cut: merged vertex degree must be 2");
        check(c->graph.has_edge(c->merged, c->old_to_new[cut.u]) &&
                  c->graph.has_edge(c->merged, c->old_to_new[cut.v]),
              "split_on_cut: merged vertex must attach to the cut pair");
        check(is_2vc(c->graph), "split_on_cut: parts must stay 2-connected");
    }
    return res;
}

namespace detail {

// Rebuild an edge set on `g` from a solution on a same-vertex-set subgraph.
inline EdgeSet lift_from_subgraph(const Graph& g, const Graph& sub, const EdgeSet& s) {
    EdgeSet out(g);
    for (EdgeId id : s.edge_ids()) {
        auto [u, v] = sub.edge(id);
        EdgeId orig = g.edge_id(u, v);
        check(orig >= 0, "lift_from_subgraph: edge missing in supergraph");
        out.add(orig);
    }
    return out;
}

// Copy a contracted part's solution onto `g`, dropping the two forced edges
// at the merged vertex (they stand in for the other side, not for real edges).
inline void lift_from_part(const Graph& g, const Contraction& part, const EdgeSet& s,
                           EdgeSet& out) {
    check(s.degree(part.merged) == 2,
          "lift_from_part: solution must keep exactly the two forced edges");
    for (EdgeId id : s.edge_ids()) {
        auto [a, b] = part.graph.edge(id);
        if (a == part.merged || b == part.merged) continue;
        EdgeId orig = g.edge_id(part.new_to_old[a], part.new_to_old[b]);
        check(orig >= 0, "lift_from_part: edge missing in original graph");
        if (!out.contains(orig)) out.add(orig);
    }
}

}  // namespace detail

// Peeling loop: solve small graphs exactly; otherwise delete a redundant
// edge, split on a 2-cut, or drop the spare edge of a two-chord 5-cycle, and
// recurse; graphs with none of those features go to `solve_core`.
inline EdgeSet reduce_and_solve(const Graph& g, const ReductionConfig& cfg,
                                const std::function<EdgeSet(const Graph&)>& solve_core,
                                ReductionStats& stats) {
    struct Driver {
        const ReductionConfig& cfg;
        const std::function<EdgeSet(const Graph&)>& solve_core;
        ReductionStats& stats;
        int split_cap;

        EdgeSet run(const Graph& g) {
            if (g.n() < small_graph_threshold(cfg)) {
                ++stats.brute_calls;
                return brute_force_small(g);
            }
            if (auto e = find_irrelevant_edge(g)) {
                ++stats.irrelevant_deletions;
                return drop_edge(g, *e);
            }
            if (auto cut = find_non_isolating_cut(g)) {
                ++stats.cut_splits;
                check(stats.cut_splits <= split_cap, "reduce_and_solve: divide steps exceeded n^2");
                CutSplit sp = split_on_cut(g, *cut);
                EdgeSet s1 = run(sp.part1.graph);
                EdgeSet s2 = run(sp.part2.graph);
                EdgeSet out(g);
                detail::lift_from_part(g, sp.part1, s1, out);
                detail::lift_from_part(g, sp.part2, s2, out);
                check(is_spanning_2vc(out), "reduce_and_solve: glued divide answer not 2-connected");
                return out;
            }
            if (auto rc = find_removable_5cycle(g)) {
                ++stats.five_cycle_deletions;
                return drop_edge(g, rc->removable);
            }
            ++stats.structured_calls;
            EdgeSet s = solve_core(g);
            check(is_spanning_2vc(s), "reduce_and_solve: core answer not 2-connected");
            return s;
        }

        EdgeSet drop_edge(const Graph& g, EdgeId id) {
            std::vector<Edge> edges;
            edges.reserve(static_cast<std::size_t>(g.m()) - 1);
            for (EdgeId other = 0; other < g.m(); ++other)
                if (other != id) edges.push_back(g.edge(other));
            Graph sub(g.n(), std::move(edges));
            check(is_2vc(sub), "reduce_and_solve: deletion broke 2-connectedness");
            EdgeSet s = run(sub);
            return detail::lift_from_subgraph(g, sub, s);
        }
    };

    if (g.n() < 3 || !is_2vc(g))
        throw std::invalid_argument("reduce_and_solve: input must be 2-vertex-connected");
    Driver driver{cfg, solve_core, stats, g.n() * g.n()};
    return driver.run(g);
}

}  // namespace vc2ss
