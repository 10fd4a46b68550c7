#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "vc2ss/check.hpp"
#include "vc2ss/decompose.hpp"
#include "vc2ss/graph.hpp"
#include "vc2ss/matching.hpp"

namespace vc2ss {

// A 2-edge-cover: every vertex of the host graph has degree >= 2 in the set.
inline bool is_2edge_cover(const EdgeSet& s) {
    for (Vertex v = 0; v < s.graph().n(); ++v)
        if (s.degree(v) < 2) return false;
    return true;
}

// Maximum subset F of edges with deg_F(v) <= 2 for all v, via the standard
// reduction to matching: vertex v becomes deg(v) stubs (one per incident
// edge) plus max(deg(v)-2, 0) absorbers joined to all of v's stubs; each
// graph edge becomes a stub-stub edge. A maximum matching that saturates all
// absorbers leaves at most two stub-stub pairs per vertex, and those pairs
// are the 2-matching.
inline EdgeSet max_two_matching(const Graph& g) {
    const int n = g.n(), m = g.m();
    // layout: stubs [0, 2m), absorbers [2m, N)
    std::vector<int> stub_base(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> abs_base(static_cast<std::size_t>(n) + 1, 0);
    for (Vertex v = 0; v < n; ++v) {
        stub_base[v + 1] = stub_base[v] + g.degree(v);
        abs_base[v + 1] = abs_base[v] + std::max(g.degree(v) - 2, 0);
    }
    const int stub_count = stub_base[n];
    const int total = stub_count + abs_base[n];
    auto absorber = [&](Vertex v, int j) { return stub_count + abs_base[v] + j; };

    std::vector<int> stub_u(static_cast<std::size_t>(m)), stub_v(static_cast<std::size_t>(m));
    for (Vertex v = 0; v < n; ++v) {
        const auto& adj = g.neighbors(v);
        for (std::size_t i = 0; i < adj.size(); ++i) {
            auto [w, id] = adj[i];
            (v < w ? stub_u[id] : stub_v[id]) = stub_base[v] + static_cast<int>(i);
        }
    }

    std::vector<Edge> gadget_edges;
    for (EdgeId id = 0; id < m; ++id) gadget_edges.push_back(make_edge(stub_u[id], stub_v[id]));
    for (Vertex v = 0; v < n; ++v)
        for (int j = 0; j < g.degree(v) - 2; ++j)
            for (int i = 0; i < g.degree(v); ++i)
                gadget_edges.push_back(make_edge(absorber(v, j), stub_base[v] + i));
    Graph gadget(total, std::move(gadget_edges));

    // Warm start: greedy 2-matching as stub-stub pairs, then absorbers onto
    // the remaining free stubs (degree bound <= 2 leaves enough of them).
    std::vector<Vertex> init(static_cast<std::size_t>(total), -1);
    std::vector<int> used(static_cast<std::size_t>(n), 0);
    for (EdgeId id = 0; id < m; ++id) {
        const Edge& e = g.edge(id);
        if (used[e.u] >= 2 || used[e.v] >= 2) continue;
        ++used[e.u];
        ++used[e.v];
        init[stub_u[id]] = stub_v[id];
        init[stub_v[id]] = stub_u[id];
    }
    for (Vertex v = 0; v < n; ++v) {
        int j = 0;
        for (int i = 0; i < g.degree(v) && j < g.degree(v) - 2; ++i) {
            const int s = stub_base[v] + i;
            if (init[s] != -1) continue;
            init[s] = absorber(v, j);
            init[absorber(v, j)] = s;
            ++j;
        }
        check(j == std::max(g.degree(v) - 2, 0), "max_two_matching: warm start left an absorber out");
    }

    std::vector<Vertex> match = maximum_matching(gadget, std::move(init));

    // Saturate every absorber (size-neutral swaps; possible because an
    // exposed absorber forces >= 3 stub-stub pairs at its vertex).
    for (Vertex v = 0; v < n; ++v) {
        for (int j = 0; j < g.degree(v) - 2; ++j) {
            const int a = absorber(v, j);
            if (match[a] != -1) continue;
            bool fixed = false;
            for (int i = 0; i < g.degree(v) && !fixed; ++i) {
                const int s = stub_base[v] + i;
                const int partner = match[s];
                if (partner < 0 || partner >= stub_count) continue;  // free or absorber-held
                match[partner] = -1;
                match[s] = a;
                match[a] = s;
                fixed = true;
            }
            check(fixed, "max_two_matching: could not saturate an absorber");
        }
    }

    EdgeSet f(g);
    for (EdgeId id = 0; id < m; ++id)
        if (match[stub_u[id]] == stub_v[id]) f.add(id);
    for (Vertex v = 0; v < n; ++v)
        check(f.degree(v) <= 2, "max_two_matching: degree bound violated");
    return f;
}

// Minimum 2-edge-cover. With F a maximum 2-matching, greedily topping up
// deficient vertices adds exactly one cover unit per edge (no remaining edge
// can join two deficient vertices, or F was not maximum), giving the tight
// size 2n - |F|.
inline EdgeSet min_2edge_cover(const Graph& g) {
    for (Vertex v = 0; v < g.n(); ++v)
        if (g.degree(v) < 2)
            throw std::invalid_argument("min_2edge_cover: a vertex has degree < 2");
    EdgeSet s = max_two_matching(g);
    const int two_matching = s.count();
    for (Vertex v = 0; v < g.n(); ++v) {
        while (s.degree(v) < 2) {
            bool added = false;
            for (auto [w, id] : g.neighbors(v)) {
                if (s.contains(id)) continue;
                check(s.degree(w) >= 2, "min_2edge_cover: augmenting edge between deficient vertices");
                s.add(id);
                added = true;
                break;
            }
            check(added, "min_2edge_cover: no edge available at deficient vertex");
        }
    }
    check(s.count() == 2 * g.n() - two_matching, "min_2edge_cover: size identity broken");
    check(is_2edge_cover(s), "min_2edge_cover: not a cover");
    return s;
}

// Component taxonomy of an edge set: small (<= 5 edges) vs large, cycles,
// complex (large but not 2-connected), and pendant 4-cycles (4-cycles whose
// external edges in G all lead to one single large component).
struct CoverClasses {
    Decomposition decomp;
    std::vector<char> comp_small;
    std::vector<char> comp_cycle;
    std::vector<char> comp_complex;
    std::vector<int> pendant_host;  // host component index, -1 if not pendant
};

inline CoverClasses classify(const EdgeSet& s) {
    const Graph& g = s.graph();
    CoverClasses c;
    c.decomp = decompose(s);
    const auto& d = c.decomp;
    const std::size_t k = d.comp_vertices.size();
    c.comp_small.assign(k, 0);
    c.comp_cycle.assign(k, 0);
    c.comp_complex.assign(k, 0);
    c.pendant_host.assign(k, -1);
    for (std::size_t i = 0; i < k; ++i) {
        const bool small = d.comp_edges[i].size() <= 5;
        c.comp_small[i] = small;
        bool cycle = d.comp_vertices[i].size() == d.comp_edges[i].size();
        for (Vertex v : d.comp_vertices[i])
            if (s.degree(v) != 2) cycle = false;
        c.comp_cycle[i] = cycle;
        const bool two_connected =
            d.comp_block_count[i] == 1 && d.comp_bridge_count[i] == 0 &&
            d.comp_vertices[i].size() >= 3;
        c.comp_complex[i] = !small && !two_connected;
    }
    for (std::size_t i = 0; i < k; ++i) {
        if (!c.comp_cycle[i] || d.comp_edges[i].size() != 4) continue;
        int host = -1;
        bool pendant = true;
        for (Vertex v : d.comp_vertices[i]) {
            for (auto [w, id] : g.neighbors(v)) {
                (void)id;
                const int other = d.vertex_comp[w];
                if (other == static_cast<int>(i)) continue;
                if (host == -1) host = other;
                if (other != host) pendant = false;
            }
        }
        if (pendant && host != -1 && d.comp_edges[host].size() >= 6)
            c.pendant_host[i] = host;
    }
    return c;
}

// Canonical form: every small component is a cycle, and every leaf-block of
// a complex component has at least 5 nodes.
inline bool is_canonical(const EdgeSet& s) {
    CoverClasses c = classify(s);
    for (std::size_t i = 0; i < c.comp_small.size(); ++i) {
        if (c.comp_small[i] && !c.comp_cycle[i]) return false;
        if (c.comp_complex[i])
            for (int b : c.decomp.comp_leaf_blocks[i])
                if (c.decomp.block_vertices[b].size() < 5) return false;
    }
    return true;
}

// (component count, blocks + bridges inside large components): the measure
// the canonicalizing swaps drive lexicographically downward.
inline std::pair<int, int> canonical_potential(const EdgeSet& s) {
    Decomposition d = decompose(s);
    int classes = 0;
    for (std::size_t i = 0; i < d.comp_vertices.size(); ++i)
        if (d.comp_edges[i].size() >= 6)
            classes += d.comp_block_count[i] + d.comp_bridge_count[i];
    return {static_cast<int>(d.comp_vertices.size()), classes};
}

// One-edge swaps S + e - e' that keep the cover property and reduce the
// potential, applied first-improvement until fixed point. For a minimum
// 2-edge-cover of a structured graph the fixed point is canonical; that is
// asserted, not assumed.
inline EdgeSet canonicalize(EdgeSet s) {
    const Graph& g = s.graph();
    if (!is_2edge_cover(s))
        throw std::invalid_argument("canonicalize: input is not a 2-edge-cover");
    auto cur = canonical_potential(s);
    const long cap = static_cast<long>(g.m()) * g.n() + 16;
    for (long iter = 0;; ++iter) {
        check(iter <= cap, "canonicalize: swap loop exceeded its budget");
        bool improved = false;
        for (EdgeId e = 0; e < g.m() && !improved; ++e) {
            if (s.contains(e)) continue;
            s.add(e);
            for (EdgeId f = 0; f < g.m() && !improved; ++f) {
                if (f == e || !s.contains(f)) continue;
                const Edge& fe = g.edge(f);
                if (s.degree(fe.u) < 3 || s.degree(fe.v) < 3) continue;
                s.remove(f);
                auto p = canonical_potential(s);
                if (p < cur) {
                    cur = p;
                    improved = true;
                } else {
                    s.add(f);
                }
            }
            if (!improved) s.remove(e);
        }
        if (!improved) break;
    }
    check(is_canonical(s), "canonicalize: fixed point is not canonical");
    return s;
}

}  // namespace vc2ss
