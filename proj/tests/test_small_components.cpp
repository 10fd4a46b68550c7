#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "testutil.hpp"
#include "vc2ss/small_components.hpp"
#include "vc2ss/structure.hpp"

using namespace vc2ss;
namespace test = vc2ss::testutil;

namespace {

Graph make_graph(int n, const std::vector<std::pair<Vertex, Vertex>>& pairs) {
    std::vector<Edge> edges;
    for (auto [a, b] : pairs) edges.push_back(make_edge(a, b));
    return Graph(n, std::move(edges));
}

EdgeSet cover_from(const Graph& g, const std::vector<std::pair<Vertex, Vertex>>& edges) {
    EdgeSet s(g);
    for (auto [a, b] : edges) {
        EdgeId id = g.edge_id(a, b);
        REQUIRE(id >= 0);
        s.add(id);
    }
    return s;
}

std::vector<std::pair<Vertex, Vertex>> cycle_edges(const std::vector<Vertex>& vs) {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (std::size_t i = 0; i < vs.size(); ++i) out.push_back({vs[i], vs[(i + 1) % vs.size()]});
    return out;
}

std::vector<std::pair<Vertex, Vertex>> operator+(std::vector<std::pair<Vertex, Vertex>> a,
                                                 const std::vector<std::pair<Vertex, Vertex>>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

}  // namespace

TEST_CASE("cycle order of a small component starts low and walks low") {
    Graph g = make_graph(5, {{0, 2}, {2, 4}, {4, 1}, {1, 3}, {3, 0}});
    EdgeSet s(g);
    for (EdgeId id = 0; id < g.m(); ++id) s.add(id);
    Decomposition d = decompose(s);
    auto order = small_cycle_order(s, d.comp_vertices[0]);
    REQUIRE(order == std::vector<Vertex>{0, 2, 4, 1, 3});

    Graph t = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
    EdgeSet st(t);
    for (EdgeId id = 0; id < t.m(); ++id) st.add(id);
    REQUIRE(small_cycle_order(st, {0, 1, 2}) == std::vector<Vertex>{0, 1, 2});
}

TEST_CASE("three disjoint edges out of a small component") {
    Graph g = test::complete_graph(6);
    std::vector<Vertex> comp{0, 1, 2};
    auto m = three_matching(g, comp);
    REQUIRE(m.size() == 3);
    std::vector<char> in_seen(6, 0), out_seen(6, 0);
    for (const auto& e : m) {
        REQUIRE(e.inside <= 2);
        REQUIRE(e.outside >= 3);
        REQUIRE(g.edge_id(e.inside, e.outside) >= 0);
        REQUIRE(!in_seen[e.inside]);
        REQUIRE(!out_seen[e.outside]);
        in_seen[e.inside] = 1;
        out_seen[e.outside] = 1;
    }

    // only two outside vertices reachable: the guarantee is gone and we must hear about it
    Graph bad = make_graph(
        6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {0, 4}});
    REQUIRE_THROWS_AS(three_matching(bad, {0, 1, 2}), InternalError);
}

TEST_CASE("anchored shortcut pairs on a triangle") {
    Graph g = test::complete_graph(6);
    EdgeSet s = cover_from(g, cycle_edges({0, 1, 2}) + cycle_edges({3, 4, 5}));

    auto pairs = anchored_shortcut_pairs(g, s, {0, 1, 2}, 0, 3);
    REQUIRE(pairs.size() == 2);
    REQUIRE(pairs[0].u == 2);
    REQUIRE(pairs[0].v == 0);
    REQUIRE(pairs[0].path == std::vector<Vertex>{2, 1, 0});
    REQUIRE(pairs[0].x == 3);
    REQUIRE(pairs[0].y == 5);
    REQUIRE(pairs[1].v == 1);
    REQUIRE(pairs[1].y == 4);

    // the anchor endpoint follows the matching partner of x, not the caller's vertex
    auto re = anchored_shortcut_pairs(g, s, {0, 1, 2}, 0, 4);
    REQUIRE(re.size() == 2);
    REQUIRE(re[0].u == 1);
    REQUIRE(re[0].v == 0);
    REQUIRE(re[0].y == 5);
    REQUIRE(re[1].v == 2);
    REQUIRE(re[1].y == 3);
}

TEST_CASE("anchored shortcut pair on a square") {
    Graph g = make_graph(7, cycle_edges({0, 1, 2, 3}) + std::vector<std::pair<Vertex, Vertex>>{
                                                            {0, 4}, {1, 5}, {2, 6}});
    EdgeSet s = cover_from(g, cycle_edges({0, 1, 2, 3}));
    auto pairs = anchored_shortcut_pairs(g, s, {0, 1, 2, 3}, 0, 4);
    REQUIRE(pairs.size() == 1);
    REQUIRE(pairs[0].u == 0);
    REQUIRE(pairs[0].v == 1);
    REQUIRE(pairs[0].path == std::vector<Vertex>{0, 3, 2, 1});
    REQUIRE(pairs[0].y == 5);
}

TEST_CASE("anchored shortcut pair on a pentagon") {
    const auto penta = cycle_edges({0, 1, 2, 3, 4});
    const std::vector<std::pair<Vertex, Vertex>> hooks{{0, 5}, {2, 6}, {3, 7}};

    SECTION("matched partner adjacent to the anchor") {
        Graph g = make_graph(8, penta + std::vector<std::pair<Vertex, Vertex>>{
                                            {0, 5}, {1, 6}, {3, 7}});
        EdgeSet s = cover_from(g, penta);
        auto pairs = anchored_shortcut_pairs(g, s, {0, 1, 2, 3, 4}, 0, 5);
        REQUIRE(pairs.size() == 1);
        REQUIRE(pairs[0].u == 0);
        REQUIRE(pairs[0].v == 1);
        REQUIRE(pairs[0].path == std::vector<Vertex>{0, 4, 3, 2, 1});
        REQUIRE(pairs[0].y == 6);
    }
    SECTION("outside edge at a neighbor of the anchor") {
        Graph g = make_graph(9, penta + hooks + std::vector<std::pair<Vertex, Vertex>>{{1, 8}});
        EdgeSet s = cover_from(g, penta);
        auto pairs = anchored_shortcut_pairs(g, s, {0, 1, 2, 3, 4}, 0, 5);
        REQUIRE(pairs.size() == 1);
        REQUIRE(pairs[0].u == 0);
        REQUIRE(pairs[0].v == 1);
        REQUIRE(pairs[0].path == std::vector<Vertex>{0, 4, 3, 2, 1});
        REQUIRE(pairs[0].y == 8);
    }
    SECTION("neighbor of the anchor sees x itself: re-anchor there") {
        Graph g = make_graph(8, penta + hooks + std::vector<std::pair<Vertex, Vertex>>{{1, 5}});
        EdgeSet s = cover_from(g, penta);
        auto pairs = anchored_shortcut_pairs(g, s, {0, 1, 2, 3, 4}, 0, 5);
        REQUIRE(pairs.size() == 1);
        REQUIRE(pairs[0].u == 1);
        REQUIRE(pairs[0].v == 2);
        REQUIRE(pairs[0].path == std::vector<Vertex>{1, 0, 4, 3, 2});
        REQUIRE(pairs[0].x == 5);
        REQUIRE(pairs[0].y == 6);
    }
    SECTION("chord between the anchor's neighbors") {
        Graph g = make_graph(8, penta + hooks + std::vector<std::pair<Vertex, Vertex>>{{1, 4}});
        EdgeSet s = cover_from(g, penta);
        auto pairs = anchored_shortcut_pairs(g, s, {0, 1, 2, 3, 4}, 0, 5);
        REQUIRE(pairs.size() == 1);
        REQUIRE(pairs[0].u == 0);
        REQUIRE(pairs[0].v == 2);
        REQUIRE(pairs[0].path == std::vector<Vertex>{0, 1, 4, 3, 2});
        REQUIRE(pairs[0].y == 6);
    }
    SECTION("no chord at all means the input was never reduced") {
        Graph g = make_graph(8, penta + hooks);
        EdgeSet s = cover_from(g, penta);
        REQUIRE_THROWS_AS(anchored_shortcut_pairs(g, s, {0, 1, 2, 3, 4}, 0, 5), InternalError);
    }
}

TEST_CASE("cross shortcut pair reaches two different components") {
    SECTION("direct: the rebased matching already crosses") {
        Graph g = test::complete_graph(9);
        EdgeSet s = cover_from(g, cycle_edges({0, 1, 2}) + cycle_edges({3, 4, 5}) +
                                      cycle_edges({6, 7, 8}));
        Decomposition d = decompose(s);
        ShortcutPair sp = cross_shortcut_pair(g, s, d, 0);
        REQUIRE(sp.u == 0);
        REQUIRE(sp.v == 1);
        REQUIRE(sp.path == std::vector<Vertex>{0, 2, 1});
        REQUIRE(sp.x == 6);
        REQUIRE(sp.y == 4);
        REQUIRE(d.vertex_comp[sp.x] != d.vertex_comp[sp.y]);
    }
    SECTION("combined: both anchors fall back and a mixed pair is assembled") {
        auto edges = cycle_edges({0, 1, 2, 3, 4}) + cycle_edges({5, 6, 7, 9}) +
                     cycle_edges({8, 10, 11}) +
                     std::vector<std::pair<Vertex, Vertex>>{{0, 5}, {2, 8}, {3, 10}, {4, 9}};
        Graph g = make_graph(12, edges);
        EdgeSet s = cover_from(g, cycle_edges({0, 1, 2, 3, 4}) + cycle_edges({5, 6, 7, 9}) +
                                      cycle_edges({8, 10, 11}));
        Decomposition d = decompose(s);
        ShortcutPair sp = cross_shortcut_pair(g, s, d, 0);
        REQUIRE(sp.u == 4);
        REQUIRE(sp.v == 3);
        REQUIRE(sp.path == std::vector<Vertex>{4, 0, 1, 2, 3});
        REQUIRE(sp.x == 9);
        REQUIRE(sp.y == 10);
        REQUIRE(d.vertex_comp[sp.x] != d.vertex_comp[sp.y]);
    }
}

TEST_CASE("bridging merge: two large flanks take the path as-is") {
    auto sedges = cycle_edges({0, 1, 2, 3, 4, 5}) + cycle_edges({6, 7, 8}) +
                  cycle_edges({9, 10, 11, 12, 13, 14});
    Graph g = make_graph(15, sedges + std::vector<std::pair<Vertex, Vertex>>{
                                          {0, 6}, {2, 8}, {7, 9}});
    EdgeSet s = cover_from(g, sedges);
    const Rational before = ledger(s).cost;

    std::ostringstream trace;
    auto rep = remove_small_components(g, s, &trace);
    REQUIRE(rep.bridging_moves == 1);
    REQUIRE(rep.leaf_moves == 0);
    REQUIRE(trace.str().find("move=bridging.a") != std::string::npos);
    REQUIRE(s.count() == 16);
    REQUIRE(decompose(s).comp_vertices.size() == 1);
    REQUIRE(ledger(s).cost == before);
    REQUIRE(is_canonical(s));
}

TEST_CASE("bridging merge: a halted flank hooks back into the far flank") {
    auto sedges = cycle_edges({0, 1, 2, 3, 4, 5}) + cycle_edges({6, 7, 8}) +
                  cycle_edges({9, 10, 11});
    Graph g = make_graph(12, sedges + std::vector<std::pair<Vertex, Vertex>>{
                                          {0, 6}, {2, 8}, {7, 9}, {1, 10}, {2, 11}});
    EdgeSet s = cover_from(g, sedges);

    std::ostringstream trace;
    auto rep = remove_small_components(g, s, &trace);
    REQUIRE(rep.bridging_moves == 1);
    REQUIRE(trace.str().find("move=bridging.b1") != std::string::npos);
    REQUIRE(s.count() == 13);
    Decomposition d = decompose(s);
    REQUIRE(d.comp_vertices.size() == 1);
    REQUIRE(is_spanning_2vc(s));
    REQUIRE(is_canonical(s));
}

TEST_CASE("bridging merge: flank cycle fuses with its neighbor component") {
    auto sedges = cycle_edges({0, 1, 2, 3, 4, 5}) + cycle_edges({6, 7, 8, 9}) +
                  cycle_edges({10, 11, 12, 13});
    Graph g = make_graph(14, sedges + std::vector<std::pair<Vertex, Vertex>>{
                                          {0, 7}, {1, 8}, {6, 10}, {9, 11}, {0, 12}});
    EdgeSet s = cover_from(g, sedges);
    const Rational before = ledger(s).cost;

    std::ostringstream trace;
    auto rep = remove_small_components(g, s, &trace);
    REQUIRE(rep.bridging_moves == 1);
    REQUIRE(trace.str().find("move=bridging.b2") != std::string::npos);
    REQUIRE(s.count() == 14);
    Decomposition d = decompose(s);
    REQUIRE(d.comp_vertices.size() == 2);
    REQUIRE(ledger(s).cost < before);
    REQUIRE(is_canonical(s));
    // the two 4-cycles became one 8-cycle
    for (const auto& comp : d.comp_edges) REQUIRE(comp.size() >= 6);
}

TEST_CASE("bridging merge: triangle flank fuses via its alternate pair") {
    auto sedges = cycle_edges({0, 1, 2, 3, 4, 5}) + cycle_edges({6, 7, 8, 9}) +
                  cycle_edges({10, 11, 12});
    Graph g = make_graph(13, sedges + std::vector<std::pair<Vertex, Vertex>>{
                                          {0, 7}, {1, 8}, {6, 10}, {9, 11}, {8, 12}});
    EdgeSet s = cover_from(g, sedges);
    const Rational before = ledger(s).cost;

    std::ostringstream trace;
    auto rep = remove_small_components(g, s, &trace);
    REQUIRE(rep.bridging_moves == 1);
    REQUIRE(trace.str().find("move=bridging.b3") != std::string::npos);
    REQUIRE(s.count() == 13);
    REQUIRE(decompose(s).comp_vertices.size() == 2);
    REQUIRE(ledger(s).cost < before);
    REQUIRE(is_canonical(s));
}

TEST_CASE("bridging merge: expansion walks through a chain of small components") {
    auto sedges = cycle_edges({0, 1, 2, 3, 4, 5}) + cycle_edges({6, 7, 8}) +
                  cycle_edges({9, 10, 11, 12}) + cycle_edges({13, 14, 15});
    Graph g = make_graph(16, sedges + std::vector<std::pair<Vertex, Vertex>>{
                                          {0, 7}, {1, 8}, {6, 9}, {10, 13}, {2, 11},
                                          {8, 14}, {6, 15}});
    EdgeSet s = cover_from(g, sedges);
    const Rational before = ledger(s).cost;

    std::ostringstream trace;
    auto rep = remove_small_components(g, s, &trace);
    REQUIRE(rep.bridging_moves == 1);
    REQUIRE(rep.leaf_moves == 0);
    REQUIRE(trace.str().find("move=bridging.b41") != std::string::npos);
    REQUIRE(s.count() == 17);
    REQUIRE(decompose(s).comp_vertices.size() == 1);
    REQUIRE(ledger(s).cost < before);
    REQUIRE(is_canonical(s));
}

TEST_CASE("leaf absorption: two triangles into one hexagon") {
    Graph g = test::complete_graph(6);
    EdgeSet s = cover_from(g, cycle_edges({0, 1, 2}) + cycle_edges({3, 4, 5}));
    const Rational before = ledger(s).cost;

    std::ostringstream trace;
    auto rep = remove_small_components(g, s, &trace);
    REQUIRE(rep.bridging_moves == 0);
    REQUIRE(rep.leaf_moves == 1);
    REQUIRE(trace.str().find("move=leaf.1.2") != std::string::npos);
    REQUIRE(s.count() == 6);
    REQUIRE(is_spanning_2vc(s));
    REQUIRE(ledger(s).cost == before);
}

TEST_CASE("leaf absorption: two squares into one octagon") {
    Graph g = test::complete_graph(8);
    EdgeSet s = cover_from(g, cycle_edges({0, 1, 2, 3}) + cycle_edges({4, 5, 6, 7}));
    const Rational before = ledger(s).cost;

    std::ostringstream trace;
    auto rep = remove_small_components(g, s, &trace);
    REQUIRE(rep.leaf_moves == 1);
    REQUIRE(trace.str().find("move=leaf.1.1") != std::string::npos);
    REQUIRE(s.count() == 8);
    REQUIRE(is_spanning_2vc(s));
    REQUIRE(ledger(s).cost < before);
}

TEST_CASE("leaf absorption: square and pentagon keep the pentagon intact") {
    Graph g = test::complete_graph(9);
    EdgeSet s = cover_from(g, cycle_edges({0, 1, 2, 3}) + cycle_edges({4, 5, 6, 7, 8}));
    const Rational before = ledger(s).cost;

    std::ostringstream trace;
    auto rep = remove_small_components(g, s, &trace);
    REQUIRE(rep.leaf_moves == 1);
    REQUIRE(trace.str().find("move=leaf.1.3") != std::string::npos);
    REQUIRE(s.count() == 10);
    REQUIRE(is_spanning_2vc(s));
    REQUIRE(ledger(s).cost == before);
}

TEST_CASE("leaf absorption: pentagon beside a large cycle hooks into its block") {
    Graph g = test::complete_graph(11);
    EdgeSet s = cover_from(g, cycle_edges({0, 1, 2, 3, 4, 5}) + cycle_edges({6, 7, 8, 9, 10}));
    std::ostringstream trace;
    MoveOutcome out = absorb_leaf_small_component(g, s, 1, &trace);
    REQUIRE(trace.str().find("move=leaf.2.1.1") != std::string::npos);
    REQUIRE(s.count() == 12);
    REQUIRE(decompose(s).comp_vertices.size() == 1);
    REQUIRE(out.cost_after < out.cost_before);
    REQUIRE(is_canonical(s));
}

TEST_CASE("leaf absorption: pentagon replaces the bridge its hooks span") {
    auto host = cycle_edges({0, 1, 2, 3, 4}) + cycle_edges({5, 6, 7, 8, 9}) +
                std::vector<std::pair<Vertex, Vertex>>{{4, 5}};
    auto leaf = cycle_edges({10, 11, 12, 13, 14});
    Graph g = make_graph(15, host + leaf + std::vector<std::pair<Vertex, Vertex>>{
                                               {4, 10}, {5, 11}, {2, 13}});
    EdgeSet s = cover_from(g, host + leaf);
    REQUIRE(is_canonical(s));

    std::ostringstream trace;
    MoveOutcome out = absorb_leaf_small_component(g, s, 1, &trace);
    REQUIRE(trace.str().find("move=leaf.2.1.2") != std::string::npos);
    REQUIRE(s.count() == 16);
    REQUIRE(decompose(s).comp_vertices.size() == 1);
    REQUIRE(!s.contains(4, 5));
    REQUIRE(out.cost_after < out.cost_before);
    REQUIRE(is_canonical(s));
}

TEST_CASE("leaf absorption: triangle across a long bridge run closes a new block") {
    auto host = cycle_edges({0, 1, 2, 3, 4}) + cycle_edges({5, 6, 7, 8, 9}) +
                std::vector<std::pair<Vertex, Vertex>>{{4, 10}, {10, 11}, {11, 12}, {12, 5}};
    auto leaf = cycle_edges({13, 14, 15});
    Graph g = make_graph(16, host + leaf + std::vector<std::pair<Vertex, Vertex>>{
                                               {4, 13}, {5, 14}, {10, 15}});
    EdgeSet s = cover_from(g, host + leaf);
    const Rational before = ledger(s).cost;

    std::ostringstream trace;
    MoveOutcome out = absorb_leaf_small_component(g, s, 1, &trace);
    REQUIRE(trace.str().find("move=leaf.2.2.1") != std::string::npos);
    REQUIRE(s.count() == 18);
    REQUIRE(decompose(s).comp_vertices.size() == 1);
    REQUIRE(out.cost_after == before);
    REQUIRE(is_canonical(s));
}

TEST_CASE("leaf absorption: triangle replaces a bridge between its hooks") {
    auto host = cycle_edges({0, 1, 2, 3, 4}) + cycle_edges({5, 6, 7, 8, 9}) +
                std::vector<std::pair<Vertex, Vertex>>{{4, 10}, {10, 5}};
    auto leaf = cycle_edges({11, 12, 13});
    Graph g = make_graph(14, host + leaf + std::vector<std::pair<Vertex, Vertex>>{
                                               {4, 11}, {10, 12}, {5, 13}});
    EdgeSet s = cover_from(g, host + leaf);

    std::ostringstream trace;
    MoveOutcome out = absorb_leaf_small_component(g, s, 1, &trace);
    REQUIRE(trace.str().find("move=leaf.2.2.2") != std::string::npos);
    REQUIRE(s.count() == 15);
    REQUIRE(decompose(s).comp_vertices.size() == 1);
    REQUIRE(!s.contains(4, 10));
    REQUIRE(out.cost_after < out.cost_before);
    REQUIRE(is_canonical(s));
}

TEST_CASE("leaf absorption: triangle reroutes around a junction vertex") {
    auto host = cycle_edges({0, 1, 2, 3, 4}) + cycle_edges({5, 6, 7, 8, 9}) +
                cycle_edges({10, 11, 12, 13, 14}) +
                std::vector<std::pair<Vertex, Vertex>>{{0, 15}, {5, 15}, {10, 15}};
    auto leaf = cycle_edges({16, 17, 18});
    Graph g = make_graph(19, host + leaf + std::vector<std::pair<Vertex, Vertex>>{
                                               {0, 16}, {5, 17}, {10, 18}});
    EdgeSet s = cover_from(g, host + leaf);
    REQUIRE(is_canonical(s));

    std::ostringstream trace;
    MoveOutcome out = absorb_leaf_small_component(g, s, 1, &trace);
    REQUIRE(trace.str().find("move=leaf.2.2.3") != std::string::npos);
    REQUIRE(s.count() == 21);
    REQUIRE(decompose(s).comp_vertices.size() == 1);
    REQUIRE(!s.contains(0, 15));
    REQUIRE(out.cost_after < out.cost_before);
    REQUIRE(is_canonical(s));
}

TEST_CASE("three triangles drain into a single spanning component") {
    Graph g = test::complete_graph(9);
    EdgeSet s = cover_from(g, cycle_edges({0, 1, 2}) + cycle_edges({3, 4, 5}) +
                                  cycle_edges({6, 7, 8}));
    const Rational before = ledger(s).cost;

    std::ostringstream trace;
    auto rep = remove_small_components(g, s, &trace);
    REQUIRE(rep.bridging_moves == 1);
    REQUIRE(rep.leaf_moves == 1);
    REQUIRE(trace.str().find("move=bridging.b3") != std::string::npos);
    REQUIRE(trace.str().find("move=leaf.2.2.1") != std::string::npos);
    REQUIRE(s.count() == 10);
    REQUIRE(is_spanning_2vc(s));
    REQUIRE(ledger(s).cost == before);
}

TEST_CASE("pendant 4-cycles are left for later stages") {
    auto sedges = cycle_edges({0, 1, 2, 3, 4, 5}) + cycle_edges({6, 7, 8, 9});
    Graph g = make_graph(10, sedges + std::vector<std::pair<Vertex, Vertex>>{
                                          {0, 6}, {2, 7}, {4, 8}});
    EdgeSet s = cover_from(g, sedges);

    auto rep = remove_small_components(g, s);
    REQUIRE(rep.bridging_moves == 0);
    REQUIRE(rep.leaf_moves == 0);
    CoverClasses c = classify(s);
    REQUIRE(c.pendant_host[1] == 0);
}

TEST_CASE("small-component removal on random structured graphs") {
    test::Rng rng(0xabcde5);
    int structured_seen = 0, moves_seen = 0, touched = 0;
    for (int iter = 0; iter < 400; ++iter) {
        int n = 6 + static_cast<int>(rng.next(4));
        Graph g = test::random_2vc_graph(rng, n, static_cast<int>(rng.next(7)));
        if (!is_structured(g)) continue;
        ++structured_seen;

        EdgeSet s = canonicalize(min_2edge_cover(g));
        const Rational before = ledger(s).cost;
        const std::size_t comps_before = decompose(s).comp_vertices.size();

        EdgeSet twin = s;
        auto rep = remove_small_components(g, s);
        REQUIRE(is_2edge_cover(s));
        REQUIRE(is_canonical(s));
        REQUIRE(ledger(s).cost <= before);

        CoverClasses c = classify(s);
        for (std::size_t i = 0; i < c.comp_small.size(); ++i)
            if (c.comp_small[i]) REQUIRE(c.pendant_host[i] >= 0);

        const int moves = rep.bridging_moves + rep.leaf_moves;
        if (moves > 0) {
            ++touched;
            // every move merges at least two components
            REQUIRE(decompose(s).comp_vertices.size() + static_cast<std::size_t>(moves) <=
                    comps_before);
        }
        moves_seen += moves;

        remove_small_components(g, twin);
        REQUIRE(twin.edge_ids() == s.edge_ids());
    }
    REQUIRE(structured_seen > 40);
    REQUIRE(moves_seen >= 5);
    REQUIRE(touched >= 3);
}
