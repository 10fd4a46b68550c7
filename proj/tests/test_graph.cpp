#include <catch2/catch_amalgamated.hpp>

#include "vc2ss/graph.hpp"
#include "testutil.hpp"

using namespace vc2ss;
namespace tu = vc2ss::testutil;

TEST_CASE("graph construction sorts edges and builds adjacency") {
    Graph g(4, {make_edge(2, 3), make_edge(0, 1), make_edge(1, 3)});
    REQUIRE(g.n() == 4);
    REQUIRE(g.m() == 3);
    CHECK(g.edge(0) == Edge{0, 1});
    CHECK(g.edge(1) == Edge{1, 3});
    CHECK(g.edge(2) == Edge{2, 3});
    CHECK(g.edge_id(3, 1) == 1);
    CHECK(g.edge_id(0, 2) == -1);
    CHECK(g.has_edge(3, 2));
    CHECK(g.degree(3) == 2);
    CHECK(g.degree(0) == 1);
    // neighbors sorted by vertex
    REQUIRE(g.neighbors(3).size() == 2);
    CHECK(g.neighbors(3)[0].first == 1);
    CHECK(g.neighbors(3)[1].first == 2);
}

TEST_CASE("graph rejects malformed input") {
    CHECK_THROWS_AS(Graph(3, {Edge{0, 3}}), InternalError);
    CHECK_THROWS_AS(Graph(3, {make_edge(0, 1), make_edge(1, 0)}), InternalError);
    CHECK_THROWS_AS(make_edge(2, 2), InternalError);
}

TEST_CASE("edge set tracks membership, count and degrees") {
    Graph g = tu::cycle_graph(5);
    EdgeSet s(g);
    CHECK(s.count() == 0);
    s.add(g.edge_id(0, 1));
    s.add(g.edge_id(1, 2));
    CHECK(s.count() == 2);
    CHECK(s.degree(1) == 2);
    CHECK(s.degree(0) == 1);
    CHECK(s.contains(1, 0));
    CHECK_FALSE(s.contains(2, 3));
    s.remove(g.edge_id(0, 1));
    CHECK(s.degree(1) == 1);
    CHECK(s.edge_ids() == std::vector<EdgeId>{g.edge_id(1, 2)});
    CHECK_THROWS_AS(s.remove(g.edge_id(0, 1)), InternalError);
    s.add(g.edge_id(0, 1));
    CHECK_THROWS_AS(s.add(g.edge_id(0, 1)), InternalError);
}

TEST_CASE("contracting an arc of a 6-cycle leaves a 4-cycle") {
    Graph g = tu::cycle_graph(6);
    auto res = contract(g, {0, 1, 2});
    REQUIRE(res.graph.n() == 4);
    CHECK(res.merged == 3);
    // kept vertices 3,4,5 renumbered to 0,1,2
    CHECK(res.old_to_new[3] == 0);
    CHECK(res.old_to_new[5] == 2);
    CHECK(res.old_to_new[0] == 3);
    CHECK(res.new_to_old[1] == 4);
    CHECK(res.new_to_old[3] == -1);
    REQUIRE(res.graph.m() == 4);
    CHECK(res.graph.has_edge(0, 1));
    CHECK(res.graph.has_edge(1, 2));
    CHECK(res.graph.has_edge(0, 3));
    CHECK(res.graph.has_edge(2, 3));
}

TEST_CASE("contraction collapses parallel edges") {
    Graph g = tu::from_pairs(4, {{0, 2}, {1, 2}, {2, 3}});
    auto res = contract(g, {0, 1});
    REQUIRE(res.graph.n() == 3);
    CHECK(res.graph.m() == 2);  // the two edges into {0,1} merge
    CHECK(res.graph.has_edge(0, 2));
    CHECK(res.graph.has_edge(0, 1));
    CHECK_THROWS_AS(contract(g, {0, 1, 2, 3}), InternalError);
    CHECK_THROWS_AS(contract(g, {0, 0}), InternalError);
}

TEST_CASE("induced subgraph renumbers in order") {
    Graph g = tu::complete_graph(5);
    auto sub = induced_subgraph(g, {4, 1, 3});
    REQUIRE(sub.graph.n() == 3);
    CHECK(sub.graph.m() == 3);
    CHECK(sub.new_to_old == std::vector<Vertex>{1, 3, 4});
    CHECK(sub.old_to_new[3] == 1);
    CHECK(sub.old_to_new[0] == -1);
}
