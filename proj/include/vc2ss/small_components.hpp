#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "vc2ss/cover.hpp"
#include "vc2ss/credits.hpp"
#include "vc2ss/decompose.hpp"
#include "vc2ss/graph.hpp"
#include "vc2ss/matching.hpp"

namespace vc2ss {

// Vertex order of a small (cycle) component, starting at its smallest vertex
// and moving toward that vertex's smaller neighbor.
inline std::vector<Vertex> small_cycle_order(const EdgeSet& s, const std::vector<Vertex>& comp) {
    check(comp.size() >= 3 && comp.size() <= 5, "small_cycle_order: component size out of range");
    const Graph& g = s.graph();
    auto two_neighbors = [&](Vertex v) {
        std::vector<Vertex> r;
        for (auto [w, id] : g.neighbors(v))
            if (s.contains(id)) r.push_back(w);
        check(r.size() == 2, "small_cycle_order: component is not a cycle");
        return r;
    };
    std::vector<Vertex> order{comp[0]};
    auto nb = two_neighbors(comp[0]);
    Vertex prev = comp[0], cur = std::min(nb[0], nb[1]);
    while (cur != comp[0]) {
        order.push_back(cur);
        check(order.size() <= comp.size(), "small_cycle_order: walk left the component");
        auto nn = two_neighbors(cur);
        Vertex nxt = (nn[0] == prev) ? nn[1] : nn[0];
        prev = cur;
        cur = nxt;
    }
    check(order.size() == comp.size(), "small_cycle_order: component is not a single cycle");
    return order;
}

struct MatchEdge {
    Vertex inside = -1, outside = -1;
};

// Three vertex-disjoint edges leaving the component. Existence for every
// small component is exactly what having no non-isolating 2-cut, no
// irrelevant edge and no removable 5-cycle buys us, so a deficit here means
// the input was not reduced and we fail loudly.
inline std::vector<MatchEdge> three_matching(const Graph& g, const std::vector<Vertex>& comp) {
    std::vector<char> in(static_cast<std::size_t>(g.n()), 0);
    for (Vertex v : comp) in[v] = 1;
    std::vector<std::pair<Vertex, Vertex>> crossing;
    for (EdgeId id = 0; id < g.m(); ++id) {
        auto [u, v] = g.edge(id);
        if (in[u] && !in[v]) crossing.push_back({u, v});
        if (!in[u] && in[v]) crossing.push_back({v, u});
    }
    auto matched = bipartite_matching(crossing);
    check(matched.size() >= 3,
          "three_matching: fewer than three disjoint edges leave a small component");
    std::vector<MatchEdge> out;
    for (int i = 0; i < 3; ++i) out.push_back({matched[i].first, matched[i].second});
    return out;
}

// A way to traverse a small cycle component while hooking both ends to the
// outside: a Hamiltonian path through the component whose end edges lie on
// the cycle, plus one outside edge per endpoint.
struct ShortcutPair {
    Vertex u = -1, v = -1;     // path endpoints inside the component
    std::vector<Vertex> path;  // Hamiltonian u..v path in G restricted to the component
    Vertex x = -1, y = -1;     // outside attachments: edges (u,x) and (v,y)
};

namespace detail {

inline int cycle_pos(const std::vector<Vertex>& cycle, Vertex v) {
    for (std::size_t i = 0; i < cycle.size(); ++i)
        if (cycle[i] == v) return static_cast<int>(i);
    return -1;
}

inline bool cycle_adjacent(const std::vector<Vertex>& cycle, Vertex a, Vertex b) {
    int k = static_cast<int>(cycle.size());
    int ia = cycle_pos(cycle, a), ib = cycle_pos(cycle, b);
    check(ia >= 0 && ib >= 0, "cycle_adjacent: vertex not on cycle");
    return (ia + 1) % k == ib || (ib + 1) % k == ia;
}

// Hamiltonian path from p to q along the cycle, avoiding the edge pq.
inline std::vector<Vertex> cycle_path_avoiding(const std::vector<Vertex>& cycle, Vertex p,
                                               Vertex q) {
    int k = static_cast<int>(cycle.size());
    int ip = cycle_pos(cycle, p), iq = cycle_pos(cycle, q);
    check(ip >= 0 && iq >= 0, "cycle_path_avoiding: vertex not on cycle");
    int step;
    if ((ip + 1) % k == iq)
        step = -1;  // q sits right after p: walk the other way round
    else if ((iq + 1) % k == ip)
        step = 1;
    else
        throw InternalError("cycle_path_avoiding: endpoints not adjacent on cycle");
    std::vector<Vertex> path;
    for (int i = 0, pos = ip; i < k; ++i, pos = (pos + step + k) % k)
        path.push_back(cycle[static_cast<std::size_t>(pos)]);
    check(path.back() == q, "cycle_path_avoiding: walk missed the far endpoint");
    return path;
}

inline void validate_shortcut_pair(const Graph& g, const EdgeSet& s,
                                   const std::vector<Vertex>& cycle, const ShortcutPair& sp) {
    check(sp.path.size() == cycle.size(), "shortcut pair: path must cover the component");
    check(sp.path.front() == sp.u && sp.path.back() == sp.v, "shortcut pair: endpoint mismatch");
    std::vector<Vertex> a = sp.path, b = cycle;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    check(a == b, "shortcut pair: path is not a permutation of the component");
    for (std::size_t i = 0; i + 1 < sp.path.size(); ++i)
        check(g.edge_id(sp.path[i], sp.path[i + 1]) >= 0, "shortcut pair: path edge missing");
    check(s.contains(sp.path[0], sp.path[1]), "shortcut pair: first path edge must lie on cycle");
    check(s.contains(sp.path[sp.path.size() - 2], sp.path.back()),
          "shortcut pair: last path edge must lie on cycle");
    check(g.edge_id(sp.u, sp.x) >= 0 && g.edge_id(sp.v, sp.y) >= 0,
          "shortcut pair: attachment edge missing");
    check(sp.x != sp.y, "shortcut pair: attachments must be disjoint");
    check(cycle_pos(cycle, sp.x) < 0 && cycle_pos(cycle, sp.y) < 0,
          "shortcut pair: attachments must leave the component");
}

}  // namespace detail

// Shortcut pairs of a small cycle component anchored at a given edge (w,x),
// w inside, x outside: the anchor endpoint of every returned pair is matched
// to x. Triangles yield two pairs with distinct far attachments; larger
// cycles yield one.
inline std::vector<ShortcutPair> anchored_shortcut_pairs(const Graph& g, const EdgeSet& s,
                                                         const std::vector<Vertex>& cycle,
                                                         Vertex w, Vertex x) {
    const int k = static_cast<int>(cycle.size());
    check(detail::cycle_pos(cycle, w) >= 0 && detail::cycle_pos(cycle, x) < 0 &&
              g.edge_id(w, x) >= 0,
          "anchored_shortcut_pairs: anchor must cross the component boundary");

    std::vector<MatchEdge> m = three_matching(g, cycle);
    std::vector<MatchEdge> nm;
    int ax = -1;
    for (int i = 0; i < 3; ++i)
        if (m[i].outside == x) ax = i;
    if (ax >= 0) {
        nm.push_back(m[ax]);
        for (int i = 0; i < 3; ++i)
            if (i != ax) nm.push_back(m[i]);
    } else {
        nm.push_back({w, x});
        for (const auto& e : m)
            if (e.inside != w) nm.push_back(e);
        if (nm.size() > 3) nm.resize(3);
    }
    check(nm.size() == 3, "anchored_shortcut_pairs: could not rebase the matching on the anchor");
    const Vertex u = nm[0].inside;

    std::vector<ShortcutPair> out;
    if (k == 3) {
        for (int i : {1, 2}) {
            ShortcutPair sp;
            sp.u = u;
            sp.v = nm[i].inside;
            sp.x = x;
            sp.y = nm[i].outside;
            sp.path = detail::cycle_path_avoiding(cycle, sp.u, sp.v);
            detail::validate_shortcut_pair(g, s, cycle, sp);
            out.push_back(std::move(sp));
        }
        check(out[0].y != out[1].y, "anchored_shortcut_pairs: triangle attachments must differ");
        return out;
    }

    for (int i : {1, 2}) {
        if (detail::cycle_adjacent(cycle, u, nm[i].inside)) {
            ShortcutPair sp{u, nm[i].inside, detail::cycle_path_avoiding(cycle, u, nm[i].inside),
                            x, nm[i].outside};
            detail::validate_shortcut_pair(g, s, cycle, sp);
            return {sp};
        }
    }
    check(k == 5, "anchored_shortcut_pairs: a 4-cycle always has an adjacent matched vertex");

    // both matched partners avoid u's cycle neighbors a and b, so the cycle
    // reads u a m2 m3 b and nm[1], nm[2] sit on m2, m3
    int iu = detail::cycle_pos(cycle, u);
    auto at = [&](int off) { return cycle[static_cast<std::size_t>((iu + off + 5) % 5)]; };
    Vertex a = at(1), m2 = at(2), m3 = at(3), b = at(4);
    MatchEdge e2 = (nm[1].inside == m2) ? nm[1] : nm[2];
    MatchEdge e3 = (nm[1].inside == m3) ? nm[1] : nm[2];
    check(e2.inside == m2 && e3.inside == m3,
          "anchored_shortcut_pairs: matched vertices must be the two non-neighbors");

    // an outside edge at a neighbor of u turns into an adjacent pair directly
    const std::array<std::tuple<Vertex, Vertex, MatchEdge>, 2> flanks{
        {{a, m2, e2}, {b, m3, e3}}};
    for (const auto& [side, partner, far] : flanks) {
        for (auto [t, id] : g.neighbors(side)) {
            (void)id;
            if (detail::cycle_pos(cycle, t) >= 0) continue;
            ShortcutPair sp;
            if (t == x) {
                // x itself reaches `side`: re-anchor there and pair with its
                // matched cycle neighbor
                sp = {side, partner, detail::cycle_path_avoiding(cycle, side, partner), x,
                      far.outside};
            } else {
                sp = {u, side, detail::cycle_path_avoiding(cycle, u, side), x, t};
            }
            detail::validate_shortcut_pair(g, s, cycle, sp);
            return {sp};
        }
    }

    // neighbors of u have no outside edges; a chord must exist, else the
    // component would be a removable 5-cycle of the host graph
    ShortcutPair sp;
    if (g.edge_id(a, b) >= 0)
        sp = {u, m2, {u, a, b, m3, m2}, x, e2.outside};
    else if (g.edge_id(a, m3) >= 0)
        sp = {u, m2, {u, b, m3, a, m2}, x, e2.outside};
    else if (g.edge_id(b, m2) >= 0)
        sp = {u, m3, {u, a, m2, b, m3}, x, e3.outside};
    else
        throw InternalError("anchored_shortcut_pairs: chordless low-degree 5-cycle; "
                            "input graph was not reduced");
    detail::validate_shortcut_pair(g, s, cycle, sp);
    return {sp};
}

// Shortcut pair of a small component whose two attachments land in two
// different components of S. Requires the component to be adjacent to at
// least two other components.
inline ShortcutPair cross_shortcut_pair(const Graph& g, const EdgeSet& s, const Decomposition& d,
                                        int comp) {
    const std::vector<Vertex> cycle = small_cycle_order(s, d.comp_vertices[comp]);
    auto comp_of = [&](Vertex v) { return d.vertex_comp[v]; };

    std::vector<MatchEdge> m = three_matching(g, cycle);
    MatchEdge a, b;
    for (int i = 0; i < 3 && a.inside < 0; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (comp_of(m[i].outside) != comp_of(m[j].outside)) {
                a = m[i];
                b = m[j];
                break;
            }
    if (a.inside < 0) {
        // whole matching leans on one component: swap in the lex-first edge
        // reaching any other component
        const int cprime = comp_of(m[0].outside);
        std::vector<char> in(static_cast<std::size_t>(g.n()), 0);
        for (Vertex v : cycle) in[v] = 1;
        for (EdgeId id = 0; id < g.m() && a.inside < 0; ++id) {
            auto [p, q] = g.edge(id);
            if (in[p] && !in[q] && comp_of(q) != cprime) a = {p, q};
            if (in[q] && !in[p] && comp_of(p) != cprime) a = {q, p};
        }
        check(a.inside >= 0, "cross_shortcut_pair: component adjacent to a single component");
        for (const auto& e : m)
            if (e.inside != a.inside) {
                b = e;
                break;
            }
    }

    ShortcutPair sp1 = anchored_shortcut_pairs(g, s, cycle, a.inside, a.outside)[0];
    ShortcutPair sp2 = anchored_shortcut_pairs(g, s, cycle, b.inside, b.outside)[0];
    if (comp_of(sp1.y) != comp_of(sp1.x)) return sp1;
    if (comp_of(sp2.y) != comp_of(sp2.x)) return sp2;

    // both far attachments fell back into their anchor components; combine
    if (sp1.v == sp2.u || sp1.v == sp2.v) {
        ShortcutPair sp{sp1.u, sp1.v, sp1.path, sp1.x, (sp1.v == sp2.u) ? sp2.x : sp2.y};
        detail::validate_shortcut_pair(g, s, cycle, sp);
        check(comp_of(sp.x) != comp_of(sp.y), "cross_shortcut_pair: combination not crossing");
        return sp;
    }
    if (sp1.u == sp2.u || sp1.u == sp2.v) {
        ShortcutPair sp{sp2.u, sp2.v, sp2.path,
                        (sp1.u == sp2.u) ? sp1.x : sp2.x,
                        (sp1.u == sp2.u) ? sp2.y : sp1.x};
        detail::validate_shortcut_pair(g, s, cycle, sp);
        check(comp_of(sp.x) != comp_of(sp.y), "cross_shortcut_pair: combination not crossing");
        return sp;
    }

    // four distinct vertices on a cycle of length <= 5: some pair with one
    // endpoint per side is adjacent
    const std::array<std::pair<Vertex, Vertex>, 2> side1{{{sp1.u, sp1.x}, {sp1.v, sp1.y}}};
    const std::array<std::pair<Vertex, Vertex>, 2> side2{{{sp2.u, sp2.x}, {sp2.v, sp2.y}}};
    for (const auto& [p, px] : side1)
        for (const auto& [q, qx] : side2)
            if (detail::cycle_adjacent(cycle, p, q)) {
                ShortcutPair sp{p, q, detail::cycle_path_avoiding(cycle, p, q), px, qx};
                detail::validate_shortcut_pair(g, s, cycle, sp);
                check(comp_of(sp.x) != comp_of(sp.y),
                      "cross_shortcut_pair: combination not crossing");
                return sp;
            }
    throw InternalError("cross_shortcut_pair: no adjacent combination across the two anchors");
}

namespace detail {

inline Move move_from_target(const EdgeSet& s, const EdgeSet& target, std::string rule) {
    Move m;
    m.rule = std::move(rule);
    const Graph& g = s.graph();
    for (EdgeId id = 0; id < g.m(); ++id) {
        if (target.contains(id) && !s.contains(id)) m.add.push_back(id);
        if (!target.contains(id) && s.contains(id)) m.remove.push_back(id);
    }
    return m;
}

struct FlankState {
    int comp = -1;        // component the path currently ends in
    Vertex attach = -1;   // last path vertex outside that component
    Vertex endpoint = -1; // path end, inside the component
    bool small_halt = false;
    ShortcutPair halt;
    std::optional<ShortcutPair> halt_other;  // triangles offer a second candidate
};

}  // namespace detail

// Merges a small component that touches two or more other components of S:
// grows a path through a run of small components, then stitches everything
// into one component. One move; component count drops; cost does not grow.
inline MoveOutcome merge_bridging_small_component(const Graph& g, EdgeSet& s, int comp,
                                                  std::ostream* trace = nullptr) {
    const Decomposition d = decompose(s);
    auto comp_of = [&](Vertex v) { return d.vertex_comp[v]; };
    auto comp_is_small = [&](int c) { return d.comp_edges[c].size() <= 5; };
    auto comp_cycle = [&](int c) { return small_cycle_order(s, d.comp_vertices[c]); };

    const ShortcutPair seed = cross_shortcut_pair(g, s, d, comp);

    // the path runs  endpoint_L .. interior .. endpoint_R;  the flank whose
    // attachment edge is lexicographically smaller plays L
    std::vector<Vertex> path;
    detail::FlankState L, R;
    if (make_edge(seed.u, seed.x) < make_edge(seed.v, seed.y)) {
        path.push_back(seed.x);
        path.insert(path.end(), seed.path.begin(), seed.path.end());
        path.push_back(seed.y);
        L = {comp_of(seed.x), seed.u, seed.x, false, {}, std::nullopt};
        R = {comp_of(seed.y), seed.v, seed.y, false, {}, std::nullopt};
    } else {
        path.push_back(seed.y);
        path.insert(path.end(), seed.path.rbegin(), seed.path.rend());
        path.push_back(seed.x);
        L = {comp_of(seed.y), seed.v, seed.y, false, {}, std::nullopt};
        R = {comp_of(seed.x), seed.u, seed.x, false, {}, std::nullopt};
    }
    std::vector<int> interior{comp};

    auto on_path = [&](Vertex v) {
        return std::find(path.begin(), path.end(), v) != path.end();
    };

    int guard = 0;
    // grow rightward, then leftward; `front` flips the geometry
    for (bool front : {false, true}) {
        detail::FlankState& side = front ? L : R;
        const detail::FlankState& other = front ? R : L;
        while (comp_is_small(side.comp)) {
            check(++guard <= 2 * g.n(), "bridging merge: expansion failed to terminate");
            auto cands = anchored_shortcut_pairs(g, s, comp_cycle(side.comp), side.endpoint,
                                                 side.attach);
            int grow = -1;
            for (std::size_t i = 0; i < cands.size() && grow < 0; ++i)
                if (!on_path(cands[i].y) && comp_of(cands[i].y) != other.comp)
                    grow = static_cast<int>(i);
            if (grow >= 0) {
                const ShortcutPair& c = cands[static_cast<std::size_t>(grow)];
                interior.push_back(side.comp);
                if (front) {
                    path.erase(path.begin());
                    path.insert(path.begin(), c.path.rbegin(), c.path.rend());
                    path.insert(path.begin(), c.y);
                } else {
                    path.pop_back();
                    path.insert(path.end(), c.path.begin(), c.path.end());
                    path.push_back(c.y);
                }
                side.comp = comp_of(c.y);
                side.attach = c.v;
                side.endpoint = c.y;
                continue;
            }
            // halting: keep the candidate whose far attachment lies farthest
            // from this end of the path (outside the path counts as infinite)
            auto farness = [&](Vertex y) {
                auto it = std::find(path.begin(), path.end(), y);
                if (it == path.end()) return static_cast<int>(path.size()) + 1;
                int idx = static_cast<int>(it - path.begin());
                return front ? idx : static_cast<int>(path.size()) - 1 - idx;
            };
            std::size_t pick = 0;
            if (cands.size() == 2 && farness(cands[1].y) > farness(cands[0].y)) pick = 1;
            side.small_halt = true;
            side.halt = cands[pick];
            if (cands.size() == 2) side.halt_other = cands[1 - pick];
            side.endpoint = side.halt.u;
            if (front) {
                path.erase(path.begin());
                path.insert(path.begin(), side.halt.u);
            } else {
                path.pop_back();
                path.push_back(side.halt.u);
            }
            break;
        }
    }

    const int n_path = static_cast<int>(path.size());
    check(n_path >= 5, "bridging merge: path must have at least four edges");

    auto cycle_edges_of = [&](int c) { return d.comp_edges[c]; };

    // a far attachment pointing right next to this end of the path lets the
    // flank cycle fuse with its neighbor component into one plain cycle
    auto try_local_merge = [&](const detail::FlankState& side, bool front,
                               std::optional<MoveOutcome>& done) {
        if (done || !side.small_halt) return;
        const Vertex u1 = front ? path[1] : path[n_path - 2];
        const Vertex u2 = front ? path[2] : path[n_path - 3];
        const ShortcutPair* use = nullptr;
        if (side.halt.y == u2) {
            use = &side.halt;
        } else if (side.halt_other && side.halt.y == (front ? path[3] : path[n_path - 4])) {
            check(side.halt_other->y == u2,
                  "bridging merge: triangle alternate must attach beside the anchor");
            use = &*side.halt_other;
        }
        if (!use) return;
        check(use->x == u1, "bridging merge: local merge anchor mismatch");
        check(s.contains(u1, u2), "bridging merge: local merge needs a cycle edge to cut");
        EdgeSet target = s;
        for (EdgeId id : cycle_edges_of(side.comp)) target.remove(id);
        for (std::size_t i = 0; i + 1 < use->path.size(); ++i)
            target.add(g.edge_id(use->path[i], use->path[i + 1]));
        target.add(g.edge_id(use->u, u1));
        target.add(g.edge_id(use->v, u2));
        target.remove(g.edge_id(u1, u2));
        check(target.count() == s.count(), "bridging merge: local merge must preserve size");
        Move m = detail::move_from_target(s, target,
                                          use == &side.halt ? "bridging.b2" : "bridging.b3");
        CertifyOptions opt;
        opt.components_strictly_down = true;
        done = apply_certified(s, m, opt, trace);
    };

    std::optional<MoveOutcome> done;
    try_local_merge(L, true, done);
    try_local_merge(R, false, done);
    if (done) return *done;

    // standard stitch: interior cycles dissolve into the path, halted flank
    // cycles become a traversal path plus their far attachment
    EdgeSet target = s;
    for (int c : interior)
        for (EdgeId id : cycle_edges_of(c)) target.remove(id);
    for (int i = 0; i + 1 < n_path; ++i) {
        EdgeId id = g.edge_id(path[static_cast<std::size_t>(i)],
                              path[static_cast<std::size_t>(i + 1)]);
        check(id >= 0, "bridging merge: path edge missing");
        if (!target.contains(id)) target.add(id);
    }
    for (const detail::FlankState* side : {&L, &R}) {
        if (!side->small_halt) continue;
        for (EdgeId id : cycle_edges_of(side->comp))
            if (target.contains(id)) target.remove(id);
        for (std::size_t i = 0; i + 1 < side->halt.path.size(); ++i) {
            EdgeId id = g.edge_id(side->halt.path[i], side->halt.path[i + 1]);
            if (!target.contains(id)) target.add(id);
        }
        EdgeId far = g.edge_id(side->halt.v, side->halt.y);
        check(far >= 0, "bridging merge: far attachment edge missing");
        if (!target.contains(far)) target.add(far);
    }
    check(target.count() == s.count() + 1, "bridging merge: stitched set must grow by one edge");

    std::string rule = "bridging.a";
    if (L.small_halt || R.small_halt) {
        const detail::FlankState& primary = L.small_halt ? L : R;
        const detail::FlankState& opposite = L.small_halt ? R : L;
        if (comp_of(primary.halt.y) == opposite.comp)
            rule = "bridging.b1";
        else
            rule = comp_is_small(opposite.comp) ? "bridging.b42" : "bridging.b41";
    }
    Move m = detail::move_from_target(s, target, rule);
    CertifyOptions opt;
    opt.components_strictly_down = true;
    return apply_certified(s, m, opt, trace);
}

// Absorbs a small component that touches exactly one other component of S
// (and is not a pendant 4-cycle) into that neighbor.
inline MoveOutcome absorb_leaf_small_component(const Graph& g, EdgeSet& s, int comp,
                                               std::ostream* trace = nullptr) {
    const Decomposition d = decompose(s);
    const std::vector<Vertex> cycle = small_cycle_order(s, d.comp_vertices[comp]);
    const int k = static_cast<int>(cycle.size());

    std::vector<MatchEdge> m = three_matching(g, cycle);
    int host = d.vertex_comp[m[0].outside];
    for (const auto& e : m)
        check(d.vertex_comp[e.outside] == host,
              "absorb_leaf_small_component: attachments must share one component");

    auto certify = [&](EdgeSet& target, const char* rule) {
        Move mv = detail::move_from_target(s, target, rule);
        CertifyOptions opt;
        opt.components_strictly_down = true;
        return apply_certified(s, mv, opt, trace);
    };

    const bool host_small = d.comp_edges[host].size() <= 5;
    if (host_small) {
        const std::vector<Vertex> hcycle = small_cycle_order(s, d.comp_vertices[host]);
        const int kh = static_cast<int>(hcycle.size());
        const char* rule = (k == 4 && kh == 4)  ? "leaf.1.1"
                           : (k == 3 || kh == 3) ? "leaf.1.2"
                                                 : "leaf.1.3";
        const bool need_host_adjacent = !(k >= 4 && kh >= 4 && (k == 5 || kh == 5));
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                if (!detail::cycle_adjacent(cycle, m[i].inside, m[j].inside)) continue;
                if (need_host_adjacent &&
                    !detail::cycle_adjacent(hcycle, m[i].outside, m[j].outside))
                    continue;
                EdgeSet target = s;
                target.add(g.edge_id(m[i].inside, m[i].outside));
                target.add(g.edge_id(m[j].inside, m[j].outside));
                target.remove(g.edge_id(m[i].inside, m[j].inside));
                if (need_host_adjacent)
                    target.remove(g.edge_id(m[i].outside, m[j].outside));
                return certify(target, rule);
            }
        throw InternalError("absorb_leaf_small_component: no workable pair between two cycles");
    }

    check(k == 3 || k == 5,
          "absorb_leaf_small_component: pendant 4-cycles are handled separately");
    const int need_bridges = (k == 5) ? 2 : 4;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (detail::cycle_adjacent(cycle, m[i].inside, m[j].inside)) pairs.push_back({i, j});
    check(!pairs.empty(), "absorb_leaf_small_component: no adjacent matched pair");

    // the two attachments see enough structure between them: hooking the
    // component across pays for itself
    for (auto [i, j] : pairs) {
        Trajectory t = d.trajectory(m[i].outside, m[j].outside);
        check(t.connected, "absorb_leaf_small_component: attachments disconnected in host");
        if (!t.block_seq.empty() || static_cast<int>(t.bridge_seq.size()) >= need_bridges) {
            EdgeSet target = s;
            target.add(g.edge_id(m[i].inside, m[i].outside));
            target.add(g.edge_id(m[j].inside, m[j].outside));
            target.remove(g.edge_id(m[i].inside, m[j].inside));
            return certify(target, k == 5 ? "leaf.2.1.1" : "leaf.2.2.1");
        }
    }
    // the attachments span a single bridge: the component replaces it
    for (auto [i, j] : pairs) {
        EdgeId direct = g.edge_id(m[i].outside, m[j].outside);
        if (direct < 0 || !s.contains(direct)) continue;
        check(d.edge_bridge[direct] >= 0,
              "absorb_leaf_small_component: direct host edge should be a bridge here");
        EdgeSet target = s;
        target.add(g.edge_id(m[i].inside, m[i].outside));
        target.add(g.edge_id(m[j].inside, m[j].outside));
        target.remove(g.edge_id(m[i].inside, m[j].inside));
        target.remove(direct);
        return certify(target, k == 5 ? "leaf.2.1.2" : "leaf.2.2.2");
    }

    check(k == 3, "absorb_leaf_small_component: a 5-cycle always resolves by path or bridge");

    // triangle whose attachments sit on short all-bridge paths: reroute
    // around the junction on the longest such path
    int bi = -1, bj = -1, blen = -1;
    for (auto [i, j] : pairs) {
        Trajectory t = d.trajectory(m[i].outside, m[j].outside);
        check(t.block_seq.empty() && t.bridge_seq.size() >= 2 && t.bridge_seq.size() <= 3,
              "absorb_leaf_small_component: residual paths must be two or three bridges");
        if (static_cast<int>(t.bridge_seq.size()) > blen) {
            blen = static_cast<int>(t.bridge_seq.size());
            bi = i;
            bj = j;
        }
    }
    Trajectory t = d.trajectory(m[bi].outside, m[bj].outside);
    std::vector<Vertex> walk = pure_bridge_walk(g, d, t, m[bi].outside, m[bj].outside);
    for (std::size_t w = 1; w + 1 < walk.size(); ++w) {
        if (s.degree(walk[w]) < 3) continue;
        int near = -1;
        if (s.contains(m[bi].outside, walk[w]))
            near = bi;
        else if (s.contains(m[bj].outside, walk[w]))
            near = bj;
        if (near < 0) continue;
        EdgeSet target = s;
        target.add(g.edge_id(m[bi].inside, m[bi].outside));
        target.add(g.edge_id(m[bj].inside, m[bj].outside));
        target.remove(g.edge_id(m[bi].inside, m[bj].inside));
        target.remove(g.edge_id(m[near].outside, walk[w]));
        return certify(target, "leaf.2.2.3");
    }
    throw InternalError("absorb_leaf_small_component: no junction beside an attachment");
}

struct SmallRemovalReport {
    int bridging_moves = 0;
    int leaf_moves = 0;
};

// Drains every small component except pendant 4-cycles, preferring merges
// that bridge several components. Each move keeps S canonical, never raises
// the cost, and strictly lowers the component count.
inline SmallRemovalReport remove_small_components(const Graph& g, EdgeSet& s,
                                                  std::ostream* trace = nullptr) {
    SmallRemovalReport rep;
    int guard = 0;
    for (;;) {
        check(++guard <= 2 * g.n(), "remove_small_components: failed to converge");
        CoverClasses c = classify(s);
        const Decomposition& d = c.decomp;
        int bridging = -1, leaf = -1;
        for (int comp = 0; comp < static_cast<int>(d.comp_vertices.size()); ++comp) {
            if (!c.comp_small[comp]) continue;
            std::vector<char> adj(d.comp_vertices.size(), 0);
            int adj_count = 0;
            for (Vertex v : d.comp_vertices[comp])
                for (auto [w, id] : g.neighbors(v)) {
                    (void)id;
                    int other = d.vertex_comp[w];
                    if (other != comp && !adj[static_cast<std::size_t>(other)]) {
                        adj[static_cast<std::size_t>(other)] = 1;
                        ++adj_count;
                    }
                }
            check(adj_count >= 1, "remove_small_components: isolated small component");
            if (adj_count >= 2) {
                bridging = comp;
                break;
            }
            if (leaf < 0 && c.pendant_host[comp] < 0) leaf = comp;
        }
        if (bridging >= 0) {
            merge_bridging_small_component(g, s, bridging, trace);
            ++rep.bridging_moves;
        } else if (leaf >= 0) {
            absorb_leaf_small_component(g, s, leaf, trace);
            ++rep.leaf_moves;
        } else {
            break;
        }
    }
    CoverClasses c = classify(s);
    for (std::size_t comp = 0; comp < c.comp_small.size(); ++comp)
        check(!c.comp_small[comp] || c.pendant_host[comp] >= 0,
              "remove_small_components: a non-pendant small component survived");
    return rep;
}

}  // namespace vc2ss
