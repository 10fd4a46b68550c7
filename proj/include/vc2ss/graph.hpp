#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "vc2ss/check.hpp"

namespace vc2ss {

using Vertex = int;
using EdgeId = int;

struct Edge {
    Vertex u = -1;  // u < v always
    Vertex v = -1;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend bool operator<(const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    }
};

inline Edge make_edge(Vertex a, Vertex b) {
    check(a != b, "make_edge: loop");
    return a < b ? Edge{a, b} : Edge{b, a};
}

// Simple undirected graph with a fixed vertex set {0..n-1}. Edges are stored
// sorted, so edge ids are stable and lexicographic; adjacency lists carry
// (neighbor, edge id) pairs and are sorted by neighbor.
class Graph {
public:
    Graph() = default;
    Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
        check(n_ >= 0, "Graph: negative vertex count");
        std::sort(edges_.begin(), edges_.end());
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            const Edge& e = edges_[i];
            check(0 <= e.u && e.u < e.v && e.v < n_, "Graph: edge endpoint out of range");
            check(i == 0 || edges_[i - 1] != e, "Graph: duplicate edge");
        }
        adj_.resize(n_);
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            adj_[edges_[i].u].push_back({edges_[i].v, static_cast<EdgeId>(i)});
            adj_[edges_[i].v].push_back({edges_[i].u, static_cast<EdgeId>(i)});
        }
        for (auto& list : adj_) std::sort(list.begin(), list.end());
    }

    int n() const { return n_; }
    int m() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(EdgeId id) const { return edges_[id]; }

    // (neighbor, edge id) pairs, sorted by neighbor.
    const std::vector<std::pair<Vertex, EdgeId>>& neighbors(Vertex v) const {
        return adj_[v];
    }
    int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }

    // Id of edge {a,b}, or -1 if absent.
    EdgeId edge_id(Vertex a, Vertex b) const {
        if (a == b) return -1;
        Edge e = make_edge(a, b);
        auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
        if (it == edges_.end() || *it != e) return -1;
        return static_cast<EdgeId>(it - edges_.begin());
    }
    bool has_edge(Vertex a, Vertex b) const { return edge_id(a, b) >= 0; }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<Vertex, EdgeId>>> adj_;
};

// Subset of a graph's edges with membership by edge id. Tracks degrees so
// checks like "every vertex covered twice" are O(1) per vertex.
class EdgeSet {
public:
    EdgeSet() = default;
    explicit EdgeSet(const Graph& g)
        : g_(&g), member_(static_cast<std::size_t>(g.m()), 0),
          degree_(static_cast<std::size_t>(g.n()), 0) {}

    const Graph& graph() const { return *g_; }
    int count() const { return count_; }
    bool contains(EdgeId id) const { return member_[id] != 0; }
    bool contains(Vertex a, Vertex b) const {
        EdgeId id = g_->edge_id(a, b);
        return id >= 0 && member_[id] != 0;
    }
    int degree(Vertex v) const { return degree_[v]; }

    void add(EdgeId id) {
        check(!member_[id], "EdgeSet::add: already present");
        member_[id] = 1;
        ++count_;
        ++degree_[g_->edge(id).u];
        ++degree_[g_->edge(id).v];
    }
    void remove(EdgeId id) {
        check(member_[id], "EdgeSet::remove: not present");
        member_[id] = 0;
        --count_;
        --degree_[g_->edge(id).u];
        --degree_[g_->edge(id).v];
    }

    // Member edge ids in increasing order.
    std::vector<EdgeId> edge_ids() const {
        std::vector<EdgeId> ids;
        ids.reserve(count_);
        for (std::size_t i = 0; i < member_.size(); ++i)
            if (member_[i]) ids.push_back(static_cast<EdgeId>(i));
        return ids;
    }

    friend bool operator==(const EdgeSet& a, const EdgeSet& b) {
        return a.member_ == b.member_;
    }

private:
    const Graph* g_ = nullptr;
    std::vector<char> member_;
    std::vector<int> degree_;
    int count_ = 0;
};

// Result of contracting a vertex set W into a single vertex. Kept vertices
// are renumbered in increasing order; the merged vertex comes last. Parallel
// edges collapse and inner edges of W vanish.
struct Contraction {
    Graph graph;
    std::vector<Vertex> old_to_new;  // size = old n
    std::vector<Vertex> new_to_old;  // size = new n; merged slot holds -1
    Vertex merged = -1;              // new id of the contracted vertex
};

inline Contraction contract(const Graph& g, const std::vector<Vertex>& w) {
    check(!w.empty() && static_cast<int>(w.size()) < g.n(),
          "contract: set must be a proper nonempty subset");
    std::vector<char> in_w(static_cast<std::size_t>(g.n()), 0);
    for (Vertex v : w) {
        check(0 <= v && v < g.n(), "contract: vertex out of range");
        check(!in_w[v], "contract: duplicate vertex in set");
        in_w[v] = 1;
    }
    Contraction res;
    res.old_to_new.assign(static_cast<std::size_t>(g.n()), -1);
    int next = 0;
    for (Vertex v = 0; v < g.n(); ++v)
        if (!in_w[v]) res.old_to_new[v] = next++;
    res.merged = next;
    for (Vertex v = 0; v < g.n(); ++v)
        if (in_w[v]) res.old_to_new[v] = res.merged;
    res.new_to_old.assign(static_cast<std::size_t>(next + 1), -1);
    for (Vertex v = 0; v < g.n(); ++v)
        if (!in_w[v]) res.new_to_old[res.old_to_new[v]] = v;

    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        Vertex a = res.old_to_new[e.u], b = res.old_to_new[e.v];
        if (a != b) edges.push_back(make_edge(a, b));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    res.graph = Graph(next + 1, std::move(edges));
    return res;
}

// Subgraph induced on `keep` (renumbered by increasing old id).
struct InducedSubgraph {
    Graph graph;
    std::vector<Vertex> old_to_new;  // -1 for dropped vertices
    std::vector<Vertex> new_to_old;
};

inline InducedSubgraph induced_subgraph(const Graph& g, const std::vector<Vertex>& keep) {
    InducedSubgraph res;
    res.old_to_new.assign(static_cast<std::size_t>(g.n()), -1);
    std::vector<Vertex> sorted = keep;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        check(0 <= sorted[i] && sorted[i] < g.n(), "induced_subgraph: vertex out of range");
        check(i == 0 || sorted[i - 1] != sorted[i], "induced_subgraph: duplicate vertex");
        res.old_to_new[sorted[i]] = static_cast<Vertex>(i);
    }
    res.new_to_old = sorted;
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        Vertex a = res.old_to_new[e.u], b = res.old_to_new[e.v];
        if (a >= 0 && b >= 0) edges.push_back(make_edge(a, b));
    }
    res.graph = Graph(static_cast<int>(sorted.size()), std::move(edges));
    return res;
}

}  // namespace vc2ss
