#pragma once

#include <algorithm>
#include <map>
#include <queue>
#include <utility>
#include <vector>

#include "vc2ss/check.hpp"
#include "vc2ss/graph.hpp"

namespace vc2ss {

// Maximum cardinality matching via blossom contraction (base-array variant),
// O(V * E) per augmentation. `init` may carry a valid partial matching to
// start from (partner per vertex, -1 for exposed); when empty, a greedy pass
// seeds the search. Adjacency order is deterministic, hence so is the result.
inline std::vector<Vertex> maximum_matching(const Graph& g, std::vector<Vertex> init = {}) {
    const int n = g.n();
    std::vector<Vertex> match;
    if (init.empty()) {
        match.assign(static_cast<std::size_t>(n), -1);
        for (Vertex v = 0; v < n; ++v) {
            if (match[v] != -1) continue;
            for (auto [w, id] : g.neighbors(v)) {
                (void)id;
                if (match[w] == -1) {
                    match[v] = w;
                    match[w] = v;
                    break;
                }
            }
        }
    } else {
        check(static_cast<int>(init.size()) == n, "maximum_matching: bad init size");
        for (Vertex v = 0; v < n; ++v)
            if (init[v] != -1)
                check(init[init[v]] == v && g.has_edge(v, init[v]),
                      "maximum_matching: init is not a matching");
        match = std::move(init);
    }

    std::vector<Vertex> p(static_cast<std::size_t>(n)), base(static_cast<std::size_t>(n));
    std::vector<char> used(static_cast<std::size_t>(n)), blossom(static_cast<std::size_t>(n));

    auto lca = [&](Vertex a, Vertex b) {
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        while (true) {
            a = base[a];
            seen[a] = 1;
            if (match[a] == -1) break;
            a = p[match[a]];
        }
        while (true) {
            b = base[b];
            if (seen[b]) return b;
            b = p[match[b]];
        }
    };
    auto mark_path = [&](Vertex v, Vertex b, Vertex child) {
        while (base[v] != b) {
            blossom[base[v]] = 1;
            blossom[base[match[v]]] = 1;
            p[v] = child;
            child = match[v];
            v = p[match[v]];
        }
    };
    auto find_augmenting = [&](Vertex root) {
        std::fill(used.begin(), used.end(), 0);
        std::fill(p.begin(), p.end(), -1);
        for (Vertex i = 0; i < n; ++i) base[i] = i;
        used[root] = 1;
        std::queue<Vertex> q;
        q.push(root);
        while (!q.empty()) {
            Vertex v = q.front();
            q.pop();
            for (auto [to, id] : g.neighbors(v)) {
                (void)id;
                if (base[v] == base[to] || match[v] == to) continue;
                if (to == root || (match[to] != -1 && p[match[to]] != -1)) {
                    Vertex curbase = lca(v, to);
                    std::fill(blossom.begin(), blossom.end(), 0);
                    mark_path(v, curbase, to);
                    mark_path(to, curbase, v);
                    for (Vertex i = 0; i < n; ++i)
                        if (blossom[base[i]]) {
                            base[i] = curbase;
                            if (!used[i]) {
                                used[i] = 1;
                                q.push(i);
                            }
                        }
                } else if (p[to] == -1) {
                    p[to] = v;
                    if (match[to] == -1) return to;
                    used[match[to]] = 1;
                    q.push(match[to]);
                }
            }
        }
        return -1;
    };

    for (Vertex v = 0; v < n; ++v) {
        if (match[v] != -1) continue;
        Vertex u = find_augmenting(v);
        while (u != -1) {
            Vertex pv = p[u], ppv = match[pv];
            match[u] = pv;
            match[pv] = u;
            u = ppv;
        }
    }
    return match;
}

inline int matching_size(const std::vector<Vertex>& match) {
    int cnt = 0;
    for (Vertex v = 0; v < static_cast<int>(match.size()); ++v)
        if (match[v] > v) ++cnt;
    return cnt;
}

// Maximum matching of an explicit bipartite edge list (left, right); vertex
// ids on the two sides live in separate namespaces. Kuhn's augmenting-path
// search, stopping once `cap` pairs are matched (cap < 0: no limit). Returns
// matched pairs sorted by left vertex.
inline std::vector<std::pair<Vertex, Vertex>> bipartite_matching(
    const std::vector<std::pair<Vertex, Vertex>>& edges, int cap = -1) {
    std::vector<Vertex> lefts, rights;
    for (auto& [a, b] : edges) {
        lefts.push_back(a);
        rights.push_back(b);
    }
    auto dedup = [](std::vector<Vertex>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    dedup(lefts);
    dedup(rights);
    auto index_of = [](const std::vector<Vertex>& v, Vertex x) {
        return static_cast<int>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
    };
    std::vector<std::vector<int>> adj(lefts.size());
    for (auto& [a, b] : edges) adj[index_of(lefts, a)].push_back(index_of(rights, b));
    for (auto& list : adj) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }

    std::vector<int> match_r(rights.size(), -1);
    std::vector<char> visited(rights.size());
    auto try_augment = [&](auto&& self, int a) -> bool {
        for (int b : adj[a]) {
            if (visited[b]) continue;
            visited[b] = 1;
            if (match_r[b] == -1 || self(self, match_r[b])) {
                match_r[b] = a;
                return true;
            }
        }
        return false;
    };
    int size = 0;
    for (std::size_t a = 0; a < lefts.size() && (cap < 0 || size < cap); ++a) {
        std::fill(visited.begin(), visited.end(), 0);
        if (try_augment(try_augment, static_cast<int>(a))) ++size;
    }
    std::vector<std::pair<Vertex, Vertex>> out;
    for (std::size_t b = 0; b < rights.size(); ++b)
        if (match_r[b] != -1) out.push_back({lefts[match_r[b]], rights[b]});
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace vc2ss
