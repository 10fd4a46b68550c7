#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vc2ss/check.hpp"
#include "vc2ss/credits.hpp"
#include "vc2ss/decompose.hpp"
#include "vc2ss/graph.hpp"

namespace vc2ss {

// A partition of the vertex set into nonempty disjoint parts.
struct Partition {
    std::vector<std::vector<Vertex>> parts;
};

// Crossing edges that close a single cycle once every part is collapsed.
// Two parallel crossing edges are the shortest legal cycle.
struct NiceCycle {
    std::vector<EdgeId> edges;
};

namespace detail {

inline std::vector<int> part_map(const Graph& g, const Partition& p, const std::string& who) {
    std::vector<int> part_of(static_cast<std::size_t>(g.n()), -1);
    for (std::size_t i = 0; i < p.parts.size(); ++i) {
        if (p.parts[i].empty()) throw std::invalid_argument(who + ": empty part");
        for (Vertex v : p.parts[i]) {
            if (v < 0 || v >= g.n())
                throw std::invalid_argument(who + ": part vertex out of range");
            if (part_of[static_cast<std::size_t>(v)] != -1)
                throw std::invalid_argument(who + ": parts overlap");
            part_of[static_cast<std::size_t>(v)] = static_cast<int>(i);
        }
    }
    for (Vertex v = 0; v < g.n(); ++v)
        if (part_of[static_cast<std::size_t>(v)] == -1)
            throw std::invalid_argument(who + ": partition does not cover every vertex");
    return part_of;
}

}  // namespace detail

// Both defining conditions, checked literally: the edges close exactly one
// cycle of length at least two after collapsing every part, and the two
// edges meeting a multi-vertex part enter it at distinct vertices.
inline bool is_nice_cycle(const Graph& g, const Partition& p, const NiceCycle& n) {
    std::vector<int> part_of = detail::part_map(g, p, "is_nice_cycle");
    for (EdgeId id : n.edges)
        if (id < 0 || id >= g.m()) throw std::invalid_argument("is_nice_cycle: edge out of range");
    if (n.edges.size() < 2) return false;
    std::vector<EdgeId> ids = n.edges;
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) return false;

    const int k = static_cast<int>(p.parts.size());
    std::vector<int> deg(static_cast<std::size_t>(k), 0);
    std::vector<std::vector<Vertex>> ports(static_cast<std::size_t>(k));
    for (EdgeId id : ids) {
        Edge e = g.edge(id);
        int a = part_of[static_cast<std::size_t>(e.u)];
        int b = part_of[static_cast<std::size_t>(e.v)];
        if (a == b) return false;
        ++deg[static_cast<std::size_t>(a)], ++deg[static_cast<std::size_t>(b)];
        ports[static_cast<std::size_t>(a)].push_back(e.u);
        ports[static_cast<std::size_t>(b)].push_back(e.v);
    }
    int touched = 0;
    for (int i = 0; i < k; ++i) {
        if (deg[static_cast<std::size_t>(i)] == 0) continue;
        if (deg[static_cast<std::size_t>(i)] != 2) return false;
        ++touched;
        const auto& at = ports[static_cast<std::size_t>(i)];
        if (p.parts[static_cast<std::size_t>(i)].size() >= 2 && at[0] == at[1]) return false;
    }
    if (static_cast<int>(ids.size()) != touched) return false;

    // one cycle, not several: the touched parts must be connected by the edges
    std::map<int, std::vector<int>> adj;
    for (EdgeId id : ids) {
        Edge e = g.edge(id);
        int a = part_of[static_cast<std::size_t>(e.u)];
        int b = part_of[static_cast<std::size_t>(e.v)];
        adj[a].push_back(b), adj[b].push_back(a);
    }
    std::set<int> seen;
    std::vector<int> stack{adj.begin()->first};
    seen.insert(stack.back());
    while (!stack.empty()) {
        int at = stack.back();
        stack.pop_back();
        for (int to : adj[at])
            if (seen.insert(to).second) stack.push_back(to);
    }
    return static_cast<int>(seen.size()) == touched;
}

namespace detail {

// Crossing edges bucketed by part pair, plus the collapsed simple adjacency.
struct ContractedView {
    int k = 0;
    std::vector<int> part_of;
    std::map<std::pair<int, int>, std::vector<EdgeId>> between;
    std::vector<std::vector<int>> adj;

    const std::vector<EdgeId>* edges_between(int a, int b) const {
        auto it = between.find({std::min(a, b), std::max(a, b)});
        return it == between.end() ? nullptr : &it->second;
    }
};

inline ContractedView contract(const Graph& g, std::vector<int> part_of, int k) {
    ContractedView cv;
    cv.k = k;
    cv.part_of = std::move(part_of);
    cv.adj.resize(static_cast<std::size_t>(k));
    for (EdgeId e = 0; e < g.m(); ++e) {
        int a = cv.part_of[static_cast<std::size_t>(g.edge(e).u)];
        int b = cv.part_of[static_cast<std::size_t>(g.edge(e).v)];
        if (a == b) continue;
        cv.between[{std::min(a, b), std::max(a, b)}].push_back(e);
    }
    for (const auto& [key, list] : cv.between) {
        cv.adj[static_cast<std::size_t>(key.first)].push_back(key.second);
        cv.adj[static_cast<std::size_t>(key.second)].push_back(key.first);
    }
    for (auto& list : cv.adj) std::sort(list.begin(), list.end());
    return cv;
}

// Exact edge choice for a fixed cyclic part sequence: one crossing edge per
// consecutive pair, distinct vertices at every multi-vertex part. The first
// edge is enumerated; the rest is a sweep over reachable entry vertices, so
// failure here means no choice exists for this sequence.
inline std::optional<std::vector<EdgeId>> assign_cycle_edges(const Graph& g,
                                                             const std::vector<std::size_t>& size,
                                                             const ContractedView& cv,
                                                             const std::vector<int>& cyc) {
    const int L = static_cast<int>(cyc.size());
    std::vector<const std::vector<EdgeId>*> dom(static_cast<std::size_t>(L));
    for (int t = 0; t < L; ++t) {
        dom[static_cast<std::size_t>(t)] = cv.edges_between(cyc[static_cast<std::size_t>(t)],
                                                            cyc[static_cast<std::size_t>((t + 1) % L)]);
        if (!dom[static_cast<std::size_t>(t)]) return std::nullopt;
    }
    auto end_in = [&](EdgeId e, int part) {
        Edge ed = g.edge(e);
        return cv.part_of[static_cast<std::size_t>(ed.u)] == part ? ed.u : ed.v;
    };
    auto loose = [&](int part) { return size[static_cast<std::size_t>(part)] < 2; };

    struct State {
        Vertex entry;
        int parent;
        EdgeId via;
    };
    for (EdgeId e0 : *dom[0]) {
        const Vertex a0 = end_in(e0, cyc[0]);
        std::vector<std::vector<State>> layer(static_cast<std::size_t>(L));
        layer[1].push_back({end_in(e0, cyc[1]), -1, e0});
        for (int t = 1; t < L; ++t) {
            const int part = cyc[static_cast<std::size_t>(t)];
            const int next = cyc[static_cast<std::size_t>((t + 1) % L)];
            std::set<Vertex> filled;
            for (int si = 0; si < static_cast<int>(layer[static_cast<std::size_t>(t)].size()); ++si) {
                const Vertex entry = layer[static_cast<std::size_t>(t)][static_cast<std::size_t>(si)].entry;
                for (EdgeId f : *dom[static_cast<std::size_t>(t)]) {
                    if (L == 2 && f == e0) continue;
                    if (!loose(part) && end_in(f, part) == entry) continue;
                    const Vertex out = end_in(f, next);
                    if (t == L - 1) {
                        if (!loose(cyc[0]) && out == a0) continue;
                        std::vector<EdgeId> picked{f};
                        for (int at = t, p = si; at >= 1; --at) {
                            const State& st = layer[static_cast<std::size_t>(at)][static_cast<std::size_t>(p)];
                            picked.push_back(st.via);
                            p = st.parent;
                        }
                        std::reverse(picked.begin(), picked.end());
                        return picked;
                    }
                    if (filled.insert(out).second)
                        layer[static_cast<std::size_t>(t + 1)].push_back({out, si, f});
                }
            }
        }
    }
    return std::nullopt;
}

// Smallest part first and ascending second neighbour, so each cyclic
// sequence is generated once regardless of rotation or direction.
inline std::vector<int> canonical_cycle(std::vector<int> cyc) {
    auto lo = std::min_element(cyc.begin(), cyc.end());
    std::rotate(cyc.begin(), lo, cyc.end());
    if (cyc.size() > 2 && cyc[1] > cyc.back())
        std::reverse(cyc.begin() + 1, cyc.end());
    return cyc;
}

// Budgeted local search over part sequences: seed with parallel pairs and
// the tree back-edge cycles of the collapsed graph, and whenever no edge
// choice fits a sequence, rewire it — bypass one part, or detour through an
// unused part that reaches both neighbours. The exhaustive sweep below is
// the completeness backstop; this loop just finds the cycle fast.
inline std::optional<std::vector<EdgeId>> repair_search(const Graph& g,
                                                        const std::vector<std::size_t>& size,
                                                        const ContractedView& cv, int budget) {
    std::deque<std::vector<int>> queue;
    std::set<std::vector<int>> seen;
    auto push = [&](std::vector<int> cyc) {
        cyc = canonical_cycle(std::move(cyc));
        if (seen.insert(cyc).second) queue.push_back(std::move(cyc));
    };

    for (const auto& [key, list] : cv.between)
        if (list.size() >= 2) push({key.first, key.second});
    {
        std::vector<int> state(static_cast<std::size_t>(cv.k), 0);  // 0 fresh, 1 open, 2 done
        std::vector<int> from(static_cast<std::size_t>(cv.k), -1);
        for (int root = 0; root < cv.k; ++root) {
            if (state[static_cast<std::size_t>(root)] != 0) continue;
            std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
            state[static_cast<std::size_t>(root)] = 1;
            while (!stack.empty()) {
                auto& [at, it] = stack.back();
                const auto& nbrs = cv.adj[static_cast<std::size_t>(at)];
                if (it == nbrs.size()) {
                    state[static_cast<std::size_t>(at)] = 2;
                    stack.pop_back();
                    continue;
                }
                const int to = nbrs[it++];
                if (state[static_cast<std::size_t>(to)] == 0) {
                    state[static_cast<std::size_t>(to)] = 1;
                    from[static_cast<std::size_t>(to)] = at;
                    stack.push_back({to, 0});
                } else if (state[static_cast<std::size_t>(to)] == 1 && to != from[static_cast<std::size_t>(at)]) {
                    std::vector<int> cyc{at};
                    for (int walk = at; walk != to;) {
                        walk = from[static_cast<std::size_t>(walk)];
                        cyc.push_back(walk);
                    }
                    if (cyc.size() >= 3) push(std::move(cyc));
                }
            }
        }
    }

    while (!queue.empty() && budget-- > 0) {
        std::vector<int> cyc = queue.front();
        queue.pop_front();
        if (auto got = assign_cycle_edges(g, size, cv, cyc)) return got;

        const int L = static_cast<int>(cyc.size());
        if (L >= 3)
            for (int t = 0; t < L; ++t) {
                const int prev = cyc[static_cast<std::size_t>((t + L - 1) % L)];
                const int next = cyc[static_cast<std::size_t>((t + 1) % L)];
                if (!cv.edges_between(prev, next)) continue;
                std::vector<int> shorter;
                for (int j = 0; j < L; ++j)
                    if (j != t) shorter.push_back(cyc[static_cast<std::size_t>(j)]);
                push(std::move(shorter));
            }
        std::vector<char> used(static_cast<std::size_t>(cv.k), 0);
        for (int q : cyc) used[static_cast<std::size_t>(q)] = 1;
        for (int t = 0; t < L; ++t) {
            const int at = cyc[static_cast<std::size_t>(t)];
            const int next = cyc[static_cast<std::size_t>((t + 1) % L)];
            for (int r : cv.adj[static_cast<std::size_t>(at)]) {
                if (used[static_cast<std::size_t>(r)] || !cv.edges_between(r, next)) continue;
                std::vector<int> longer;
                for (int j = 0; j <= t; ++j) longer.push_back(cyc[static_cast<std::size_t>(j)]);
                longer.push_back(r);
                for (int j = t + 1; j < L; ++j) longer.push_back(cyc[static_cast<std::size_t>(j)]);
                push(std::move(longer));
            }
        }
    }
    return std::nullopt;
}

// Every parallel pair and every simple cycle of the collapsed graph, each
// run through the exact edge-choice test. Exponential in the number of
// parts, which desk-scale inputs keep harmless; a miss here means no nice
// cycle exists at all.
inline std::optional<std::vector<EdgeId>> exhaustive_search(const Graph& g,
                                                            const std::vector<std::size_t>& size,
                                                            const ContractedView& cv) {
    for (const auto& [key, list] : cv.between)
        if (list.size() >= 2)
            if (auto got = assign_cycle_edges(g, size, cv, {key.first, key.second})) return got;

    std::vector<int> path;
    std::vector<char> on(static_cast<std::size_t>(cv.k), 0);
    std::optional<std::vector<EdgeId>> found;
    auto walk = [&](auto&& self, int at, int root) -> void {
        if (found) return;
        for (int to : cv.adj[static_cast<std::size_t>(at)]) {
            if (found) return;
            if (to == root && path.size() >= 3) {
                if (path[1] < path.back())
                    if (auto got = assign_cycle_edges(g, size, cv, path)) {
                        found = got;
                        return;
                    }
            }
            if (to <= root || on[static_cast<std::size_t>(to)]) continue;
            on[static_cast<std::size_t>(to)] = 1;
            path.push_back(to);
            self(self, to, root);
            path.pop_back();
            on[static_cast<std::size_t>(to)] = 0;
        }
    };
    for (int root = 0; root < cv.k && !found; ++root) {
        path = {root};
        std::fill(on.begin(), on.end(), 0);
        on[static_cast<std::size_t>(root)] = 1;
        walk(walk, root, root);
    }
    return found;
}

}  // namespace detail

// Crossing-edge cycle over the partition: found by a budgeted cycle repair
// in the collapsed graph with an exhaustive sweep as backstop, and always
// certified against the defining conditions before being returned.
inline NiceCycle nice_cycle(const Graph& g, const Partition& p) {
    std::vector<int> part_of = detail::part_map(g, p, "nice_cycle");
    if (p.parts.size() < 2) throw std::invalid_argument("nice_cycle: need at least two parts");
    if (!is_2vc(g)) throw std::invalid_argument("nice_cycle: graph is not 2-vertex-connected");

    const int k = static_cast<int>(p.parts.size());
    std::vector<std::size_t> size;
    for (const auto& part : p.parts) size.push_back(part.size());
    detail::ContractedView cv = detail::contract(g, std::move(part_of), k);

    auto got = detail::repair_search(g, size, cv, g.n() * g.n());
    if (!got) got = detail::exhaustive_search(g, size, cv);
    check(got.has_value(), "nice cycle: no crossing cycle admits distinct attachments");
    NiceCycle nc{std::move(*got)};
    std::sort(nc.edges.begin(), nc.edges.end());
    check(is_nice_cycle(g, p, nc), "nice cycle: construction violated its defining conditions");
    return nc;
}

// Welds the 2VC components of a cover into one spanning 2VC subgraph by
// repeatedly adding a nice cycle over the component partition. Each round
// retires at least one component and returns its credits, so the certified
// cost never grows.
inline EdgeSet glue_components(const EdgeSet& s, std::ostream* trace = nullptr) {
    const Graph& g = s.graph();
    {
        Decomposition d = decompose(s);
        for (std::size_t c = 0; c < d.comp_vertices.size(); ++c) {
            const bool two_vc = d.comp_block_count[c] == 1 && d.comp_bridge_count[c] == 0 &&
                                d.comp_vertices[c].size() >= 3;
            if (!two_vc || d.comp_edges[c].size() < 6)
                throw std::invalid_argument(
                    "glue_components: component is not large and 2-vertex-connected");
        }
    }

    EdgeSet out = s;
    Decomposition d = decompose(out);
    int rounds = static_cast<int>(d.comp_vertices.size());
    while (d.comp_vertices.size() > 1) {
        check(rounds-- > 0, "glue: merging outlived the component budget");
        Partition p{d.comp_vertices};
        NiceCycle nc = nice_cycle(g, p);
        Move mv{nc.edges, {}, "glue.cycle"};
        CertifyOptions opt;
        opt.components_strictly_down = true;
        opt.require_canonical = false;
        apply_certified(out, mv, opt, trace);
        d = decompose(out);
    }
    check(is_spanning_2vc(out), "glue: merged cover is not spanning 2-connected");
    return out;
}

}  // namespace vc2ss
