#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "vc2ss/check.hpp"
#include "vc2ss/decompose.hpp"
#include "vc2ss/graph.hpp"

namespace vc2ss {

// Detectors for the three local reductions applied before the core solver
// runs: an edge whose endpoints already form a 2-cut, a 2-cut with at least
// two vertices on each side, and a 5-cycle whose two degree-2 vertices let
// one cycle edge be dropped. All scans are lexicographic, so results are
// deterministic.

// First edge uv (by edge id) such that {u,v} disconnects the rest. Deleting
// such an edge preserves both 2-connectivity and the optimum.
inline std::optional<EdgeId> find_irrelevant_edge(const Graph& g) {
    for (EdgeId id = 0; id < g.m(); ++id) {
        const Edge& e = g.edge(id);
        if (components_excluding(g, e.u, e.v).size() >= 2) return id;
    }
    return std::nullopt;
}

struct TwoCut {
    Vertex u = -1, v = -1;
    std::vector<std::vector<Vertex>> comps;  // components of G minus {u,v}
};

// A 2-cut is isolating when it chips off exactly one vertex; those cannot
// seed a divide step with two vertices per side and are skipped.
inline bool cut_is_isolating(const std::vector<std::vector<Vertex>>& comps) {
    return comps.size() == 2 && (comps[0].size() == 1 || comps[1].size() == 1);
}

inline std::optional<TwoCut> find_non_isolating_cut(const Graph& g) {
    for (Vertex u = 0; u < g.n(); ++u)
        for (Vertex v = u + 1; v < g.n(); ++v) {
            auto comps = components_excluding(g, u, v);
            if (comps.size() >= 2 && !cut_is_isolating(comps))
                return TwoCut{u, v, std::move(comps)};
        }
    return std::nullopt;
}

// All 5-cycles, each reported once: smallest vertex first, then oriented
// toward the smaller of its two neighbors. Lexicographic in that form.
inline std::vector<std::array<Vertex, 5>> five_cycles(const Graph& g) {
    std::vector<std::array<Vertex, 5>> out;
    std::array<Vertex, 5> path{};
    std::vector<char> used(static_cast<std::size_t>(g.n()), 0);
    auto dfs = [&](auto&& self, int depth) -> void {
        if (depth == 5) {
            if (path[1] < path[4] && g.has_edge(path[4], path[0])) out.push_back(path);
            return;
        }
        for (auto [w, id] : g.neighbors(path[depth - 1])) {
            (void)id;
            if (w <= path[0] || used[w]) continue;
            used[w] = 1;
            path[depth] = w;
            self(self, depth + 1);
            used[w] = 0;
        }
    };
    for (Vertex s = 0; s < g.n(); ++s) {
        path[0] = s;
        dfs(dfs, 1);
    }
    return out;
}

struct Removable5Cycle {
    std::array<Vertex, 5> cycle;  // rotated so cycle[0] and cycle[2] have degree 2
    EdgeId removable;             // the edge {cycle[3], cycle[4]}
};

// Requires: no 2-cut splitting off two or more vertices per side (checked
// indirectly; see below) and n >= 6. On a 5-cycle, two degree-2 vertices are
// adjacent only if their outer neighbors form exactly such a 2-cut, so
// running into an adjacent pair means the caller skipped a reduction.
inline std::optional<Removable5Cycle> find_removable_5cycle(const Graph& g) {
    if (g.n() < 6)
        throw std::invalid_argument("find_removable_5cycle: needs at least 6 vertices");
    auto cycles = five_cycles(g);
    for (const auto& c : cycles) {
        for (int i = 0; i < 5; ++i)
            check(!(g.degree(c[i]) == 2 && g.degree(c[(i + 1) % 5]) == 2),
                  "find_removable_5cycle: adjacent degree-2 pair implies an unreduced 2-cut");
    }
    for (const auto& c : cycles) {
        for (int i = 0; i < 5; ++i) {
            if (g.degree(c[i]) != 2 || g.degree(c[(i + 2) % 5]) != 2) continue;
            Removable5Cycle res;
            for (int j = 0; j < 5; ++j) res.cycle[j] = c[(i + j) % 5];
            res.removable = g.edge_id(res.cycle[3], res.cycle[4]);
            check(res.removable >= 0, "find_removable_5cycle: cycle edge missing");
            return res;
        }
    }
    return std::nullopt;
}

// A graph is fully reduced ("structured") when none of the three detectors
// fires. Callers must have n >= 6 and 2-connectivity; the evaluation order
// below is what makes the degree-2 invariant inside the 5-cycle scan sound.
inline bool is_structured(const Graph& g) {
    if (g.n() < 6 || !is_2vc(g))
        throw std::invalid_argument("is_structured: requires a 2-connected graph on >= 6 vertices");
    return !find_irrelevant_edge(g) && !find_non_isolating_cut(g) &&
           !find_removable_5cycle(g);
}

}  // namespace vc2ss
