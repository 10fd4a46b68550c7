#pragma once

#include <algorithm>
#include <queue>
#include <vector>

#include "vc2ss/check.hpp"
#include "vc2ss/graph.hpp"

namespace vc2ss {

inline EdgeSet full_set(const Graph& g) {
    EdgeSet s(g);
    for (EdgeId id = 0; id < g.m(); ++id) s.add(id);
    return s;
}

inline bool is_spanning_connected(const EdgeSet& s) {
    const Graph& g = s.graph();
    const int n = g.n();
    if (n == 0) return true;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    int cnt = 1;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (auto [w, id] : g.neighbors(v)) {
            if (!s.contains(id) || seen[w]) continue;
            seen[w] = 1;
            ++cnt;
            stack.push_back(w);
        }
    }
    return cnt == n;
}

inline bool is_connected(const Graph& g) { return is_spanning_connected(full_set(g)); }

// 2-vertex-connectivity of the spanning subgraph (V(G), S): n >= 3, connected
// over all of V(G), and no articulation vertex. Single DFS, no allocation of
// class lists; used inside search loops.
inline bool is_spanning_2vc(const EdgeSet& s) {
    const Graph& g = s.graph();
    const int n = g.n();
    if (n < 3) return false;
    for (Vertex v = 0; v < n; ++v)
        if (s.degree(v) < 2) return false;
    std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
    struct Frame {
        Vertex v;
        EdgeId pe;
        std::size_t i;
    };
    std::vector<Frame> st;
    int timer = 0, root_children = 0;
    disc[0] = low[0] = timer++;
    st.push_back({0, -1, 0});
    while (!st.empty()) {
        Frame& f = st.back();
        const auto& adj = g.neighbors(f.v);
        bool descended = false;
        while (f.i < adj.size()) {
            auto [w, id] = adj[f.i++];
            if (!s.contains(id) || id == f.pe) continue;
            if (disc[w] < 0) {
                disc[w] = low[w] = timer++;
                if (f.v == 0) ++root_children;
                st.push_back({w, id, 0});
                descended = true;
                break;
            }
            low[f.v] = std::min(low[f.v], disc[w]);
        }
        if (descended) continue;
        Vertex vdone = f.v;
        st.pop_back();
        if (!st.empty()) {
            Vertex p = st.back().v;
            low[p] = std::min(low[p], low[vdone]);
            if (p != 0 && low[vdone] >= disc[p]) return false;
        }
    }
    return root_children <= 1 && timer == n;
}

inline bool is_2vc(const Graph& g) { return is_spanning_2vc(full_set(g)); }

// Connected components of G with two vertices deleted, each component sorted,
// components ordered by smallest vertex. Pass -1 to delete fewer vertices.
inline std::vector<std::vector<Vertex>> components_excluding(const Graph& g, Vertex a, Vertex b) {
    std::vector<char> seen(static_cast<std::size_t>(g.n()), 0);
    if (a >= 0) seen[a] = 1;
    if (b >= 0) seen[b] = 1;
    std::vector<std::vector<Vertex>> comps;
    for (Vertex root = 0; root < g.n(); ++root) {
        if (seen[root]) continue;
        std::vector<Vertex> comp{root};
        seen[root] = 1;
        std::vector<Vertex> stack{root};
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (auto [w, id] : g.neighbors(v)) {
                (void)id;
                if (seen[w]) continue;
                seen[w] = 1;
                comp.push_back(w);
                stack.push_back(w);
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

// Walk through the block/bridge forest of an edge set between two vertices.
// block_seq / bridge_seq list the classes crossed, in order from x to y.
struct Trajectory {
    bool connected = false;
    std::vector<int> block_seq;
    std::vector<int> bridge_seq;
    std::vector<int> node_path;  // raw forest node ids
};

// Full structural decomposition of an edge set: connected components, blocks
// (2-connected edge classes with >= 2 edges), bridges, cut vertices, and the
// block/cut forest. All lists are sorted, so results are deterministic.
struct Decomposition {
    std::vector<std::vector<Vertex>> comp_vertices;
    std::vector<std::vector<EdgeId>> comp_edges;
    std::vector<int> vertex_comp;

    std::vector<std::vector<EdgeId>> blocks;
    std::vector<std::vector<Vertex>> block_vertices;
    std::vector<EdgeId> bridge_edges;
    std::vector<int> edge_block;    // block index, -1 otherwise
    std::vector<int> edge_bridge;   // bridge index, -1 otherwise
    std::vector<char> is_cut;
    std::vector<int> block_comp;
    std::vector<int> bridge_comp;
    std::vector<int> comp_block_count;
    std::vector<int> comp_bridge_count;

    // Forest node ids: blocks, then bridges, then cut vertices.
    std::vector<Vertex> cut_list;  // sorted
    std::vector<int> cut_index;    // vertex -> index into cut_list, -1 otherwise
    std::vector<std::vector<int>> bc_adj;
    std::vector<int> home_node;    // vertex -> containing forest node (-1 if isolated)

    // Leaf blocks per component: exactly one cut vertex, and the component
    // has at least two edge classes.
    std::vector<std::vector<int>> comp_leaf_blocks;

    int block_node(int b) const { return b; }
    int bridge_node(int r) const { return static_cast<int>(blocks.size()) + r; }
    int cut_node(int ci) const {
        return static_cast<int>(blocks.size() + bridge_edges.size()) + ci;
    }
    bool node_is_block(int id) const { return id < static_cast<int>(blocks.size()); }
    bool node_is_bridge(int id) const {
        return !node_is_block(id) &&
               id < static_cast<int>(blocks.size() + bridge_edges.size());
    }

    std::vector<Vertex> block_cuts(int b) const {
        std::vector<Vertex> cuts;
        for (Vertex v : block_vertices[b])
            if (is_cut[v]) cuts.push_back(v);
        return cuts;
    }

    Trajectory trajectory(Vertex x, Vertex y) const {
        Trajectory t;
        if (home_node[x] < 0 || home_node[y] < 0) return t;
        if (vertex_comp[x] != vertex_comp[y]) return t;
        t.connected = true;
        if (x == y) {
            t.node_path = {home_node[x]};
            return t;
        }
        const int start = home_node[x], goal = home_node[y];
        std::vector<int> parent(bc_adj.size(), -2);
        std::queue<int> q;
        parent[start] = -1;
        q.push(start);
        while (!q.empty() && parent[goal] == -2) {
            int u = q.front();
            q.pop();
            for (int w : bc_adj[u]) {
                if (parent[w] != -2) continue;
                parent[w] = u;
                q.push(w);
            }
        }
        check(parent[goal] != -2, "trajectory: forest path missing within component");
        for (int u = goal; u != -1; u = parent[u]) t.node_path.push_back(u);
        std::reverse(t.node_path.begin(), t.node_path.end());
        for (int id : t.node_path) {
            if (node_is_block(id))
                t.block_seq.push_back(id);
            else if (node_is_bridge(id))
                t.bridge_seq.push_back(id - static_cast<int>(blocks.size()));
        }
        return t;
    }
};

inline Decomposition decompose(const EdgeSet& s) {
    const Graph& g = s.graph();
    const int n = g.n(), m = g.m();
    Decomposition d;
    d.vertex_comp.assign(static_cast<std::size_t>(n), -1);
    d.edge_block.assign(static_cast<std::size_t>(m), -1);
    d.edge_bridge.assign(static_cast<std::size_t>(m), -1);
    d.is_cut.assign(static_cast<std::size_t>(n), 0);

    std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
    std::vector<EdgeId> estack;
    struct Frame {
        Vertex v;
        EdgeId pe;
        std::size_t i;
    };
    std::vector<Frame> st;
    std::vector<std::vector<EdgeId>> classes;
    int timer = 0;

    for (Vertex root = 0; root < n; ++root) {
        if (disc[root] >= 0) continue;
        const int comp = static_cast<int>(d.comp_vertices.size());
        d.comp_vertices.emplace_back();
        d.comp_edges.emplace_back();
        int root_children = 0;
        disc[root] = low[root] = timer++;
        d.vertex_comp[root] = comp;
        d.comp_vertices[comp].push_back(root);
        st.push_back({root, -1, 0});
        while (!st.empty()) {
            Frame& f = st.back();
            const auto& adj = g.neighbors(f.v);
            bool descended = false;
            while (f.i < adj.size()) {
                auto [w, id] = adj[f.i++];
                if (!s.contains(id) || id == f.pe) continue;
                if (disc[w] < 0) {
                    estack.push_back(id);
                    d.comp_edges[comp].push_back(id);
                    disc[w] = low[w] = timer++;
                    d.vertex_comp[w] = comp;
                    d.comp_vertices[comp].push_back(w);
                    if (f.v == root) ++root_children;
                    st.push_back({w, id, 0});
                    descended = true;
                    break;
                }
                if (disc[w] < disc[f.v]) {  // back edge, first sighting
                    estack.push_back(id);
                    d.comp_edges[comp].push_back(id);
                    low[f.v] = std::min(low[f.v], disc[w]);
                }
            }
            if (descended) continue;
            const Vertex vdone = f.v;
            const EdgeId pe = f.pe;
            st.pop_back();
            if (st.empty()) continue;
            const Vertex p = st.back().v;
            low[p] = std::min(low[p], low[vdone]);
            if (low[vdone] >= disc[p]) {
                if (p != root) d.is_cut[p] = 1;
                std::vector<EdgeId> cls;
                EdgeId eid;
                do {
                    eid = estack.back();
                    estack.pop_back();
                    cls.push_back(eid);
                } while (eid != pe);
                classes.push_back(std::move(cls));
            }
        }
        check(estack.empty(), "decompose: dangling class edges");
        if (root_children > 1) d.is_cut[root] = 1;
        std::sort(d.comp_vertices[comp].begin(), d.comp_vertices[comp].end());
        std::sort(d.comp_edges[comp].begin(), d.comp_edges[comp].end());
    }

    // Split classes into blocks and bridges, in canonical order.
    for (auto& cls : classes) std::sort(cls.begin(), cls.end());
    std::sort(classes.begin(), classes.end());
    for (auto& cls : classes) {
        if (cls.size() == 1)
            d.bridge_edges.push_back(cls[0]);
        else
            d.blocks.push_back(std::move(cls));
    }
    std::sort(d.bridge_edges.begin(), d.bridge_edges.end());

    d.block_vertices.resize(d.blocks.size());
    for (std::size_t b = 0; b < d.blocks.size(); ++b) {
        std::vector<Vertex>& vs = d.block_vertices[b];
        for (EdgeId id : d.blocks[b]) {
            d.edge_block[id] = static_cast<int>(b);
            vs.push_back(g.edge(id).u);
            vs.push_back(g.edge(id).v);
        }
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        d.block_comp.push_back(d.vertex_comp[vs[0]]);
    }
    for (std::size_t r = 0; r < d.bridge_edges.size(); ++r) {
        d.edge_bridge[d.bridge_edges[r]] = static_cast<int>(r);
        d.bridge_comp.push_back(d.vertex_comp[g.edge(d.bridge_edges[r]).u]);
    }
    d.comp_block_count.assign(d.comp_vertices.size(), 0);
    d.comp_bridge_count.assign(d.comp_vertices.size(), 0);
    for (int c : d.block_comp) ++d.comp_block_count[c];
    for (int c : d.bridge_comp) ++d.comp_bridge_count[c];

    // Block/cut forest.
    d.cut_index.assign(static_cast<std::size_t>(n), -1);
    for (Vertex v = 0; v < n; ++v)
        if (d.is_cut[v]) {
            d.cut_index[v] = static_cast<int>(d.cut_list.size());
            d.cut_list.push_back(v);
        }
    const int node_count =
        static_cast<int>(d.blocks.size() + d.bridge_edges.size() + d.cut_list.size());
    d.bc_adj.assign(static_cast<std::size_t>(node_count), {});
    auto link = [&](int a, int b) {
        d.bc_adj[a].push_back(b);
        d.bc_adj[b].push_back(a);
    };
    for (std::size_t b = 0; b < d.blocks.size(); ++b)
        for (Vertex v : d.block_vertices[b])
            if (d.is_cut[v]) link(d.block_node(static_cast<int>(b)), d.cut_node(d.cut_index[v]));
    for (std::size_t r = 0; r < d.bridge_edges.size(); ++r) {
        const Edge& e = g.edge(d.bridge_edges[r]);
        if (d.is_cut[e.u]) link(d.bridge_node(static_cast<int>(r)), d.cut_node(d.cut_index[e.u]));
        if (d.is_cut[e.v]) link(d.bridge_node(static_cast<int>(r)), d.cut_node(d.cut_index[e.v]));
    }

    d.home_node.assign(static_cast<std::size_t>(n), -1);
    for (Vertex v = 0; v < n; ++v)
        if (d.is_cut[v]) d.home_node[v] = d.cut_node(d.cut_index[v]);
    for (std::size_t b = 0; b < d.blocks.size(); ++b)
        for (Vertex v : d.block_vertices[b])
            if (!d.is_cut[v]) {
                check(d.home_node[v] == -1, "decompose: vertex in two classes but not cut");
                d.home_node[v] = d.block_node(static_cast<int>(b));
            }
    for (std::size_t r = 0; r < d.bridge_edges.size(); ++r) {
        const Edge& e = g.edge(d.bridge_edges[r]);
        for (Vertex v : {e.u, e.v})
            if (!d.is_cut[v]) {
                check(d.home_node[v] == -1, "decompose: vertex in two classes but not cut");
                d.home_node[v] = d.bridge_node(static_cast<int>(r));
            }
    }

    d.comp_leaf_blocks.assign(d.comp_vertices.size(), {});
    for (std::size_t b = 0; b < d.blocks.size(); ++b) {
        const int c = d.block_comp[b];
        if (d.comp_block_count[c] + d.comp_bridge_count[c] < 2) continue;
        if (d.block_cuts(static_cast<int>(b)).size() == 1)
            d.comp_leaf_blocks[c].push_back(static_cast<int>(b));
    }
    return d;
}

// Concrete vertex walk for a trajectory that crosses only bridges.
inline std::vector<Vertex> pure_bridge_walk(const Graph& g, const Decomposition& d,
                                            const Trajectory& t, Vertex x, Vertex y) {
    check(t.connected && t.block_seq.empty(), "pure_bridge_walk: trajectory crosses a block");
    std::vector<Vertex> walk{x};
    for (int r : t.bridge_seq) {
        const Edge& e = g.edge(d.bridge_edges[r]);
        check(e.u == walk.back() || e.v == walk.back(),
              "pure_bridge_walk: bridge chain broken");
        walk.push_back(e.u == walk.back() ? e.v : e.u);
    }
    check(walk.back() == y, "pure_bridge_walk: walk does not end at target");
    return walk;
}

}  // namespace vc2ss
