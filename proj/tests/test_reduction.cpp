#include <catch2/catch_amalgamated.hpp>

#include "testutil.hpp"
#include "vc2ss/oracle.hpp"
#include "vc2ss/reduction.hpp"

using namespace vc2ss;
namespace tu = testutil;

namespace {

// stand-in core for exercising the peeling shell: exact, so any end-to-end
// slack observed in these tests comes from the divide steps alone
EdgeSet exact_core(const Graph& g) { return brute_force_small(g); }

Graph pentagon_with_tail() {
    return tu::from_pairs(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {1, 5}, {3, 5}, {4, 5}});
}

}  // namespace

TEST_CASE("brute-force cutoff follows the approximation target") {
    CHECK(small_graph_threshold({Rational(4, 3)}) == 6);
    CHECK(small_graph_threshold({Rational(3, 2)}) == 6);
    CHECK(small_graph_threshold({Rational(2)}) == 6);
    CHECK(small_graph_threshold({Rational(6, 5)}) == 10);
    CHECK(small_graph_threshold({Rational(11, 10)}) == 20);
    CHECK_THROWS_AS(small_graph_threshold({Rational(1)}), std::invalid_argument);
    CHECK_THROWS_AS(small_graph_threshold({Rational(9, 10)}), std::invalid_argument);
}

TEST_CASE("small-graph enumeration is exact") {
    CHECK(brute_force_small(tu::cycle_graph(4)).count() == 4);
    CHECK(brute_force_small(tu::cycle_graph(5)).count() == 5);
    CHECK(brute_force_small(tu::complete_graph(4)).count() == 4);
    CHECK(brute_force_small(tu::complete_graph(5)).count() == 5);

    CHECK_THROWS_AS(brute_force_small(tu::from_pairs(4, {{0, 1}, {1, 2}, {2, 3}})),
                    std::invalid_argument);
    CHECK_THROWS_AS(brute_force_small(tu::complete_graph(5), 3), BudgetExceeded);

    // agrees with the branch-and-bound reference on random inputs
    tu::Rng rng(5501);
    for (int iter = 0; iter < 80; ++iter) {
        Vertex n = 4 + static_cast<Vertex>(rng.next(4));  // 4..7
        Graph g = tu::random_2vc_graph(rng, n, rng.next(4));
        CHECK(brute_force_small(g).count() == exact_2vcss(g).count());
    }
}

TEST_CASE("divide step on a hexagon cut") {
    Graph c6 = tu::cycle_graph(6);
    auto cut = find_non_isolating_cut(c6);
    REQUIRE(cut.has_value());
    CHECK(cut->u == 0);
    CHECK(cut->v == 3);

    CutSplit sp = split_on_cut(c6, *cut);
    CHECK(sp.side1 == std::vector<Vertex>{1, 2});
    CHECK(sp.side2 == std::vector<Vertex>{4, 5});
    // each part is the pentagon formed by one side plus the collapsed other side
    CHECK(sp.part1.graph.n() == 5);
    CHECK(sp.part1.graph.m() == 5);
    CHECK(sp.part2.graph.n() == 5);
    CHECK(sp.part2.graph.m() == 5);
    CHECK(sp.part1.merged == 4);
    CHECK(sp.part1.graph.has_edge(sp.part1.merged, sp.part1.old_to_new[0]));
    CHECK(sp.part1.graph.has_edge(sp.part1.merged, sp.part1.old_to_new[3]));

    // isolating cuts are rejected outright
    Graph k4_plus = tu::from_pairs(5, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}, {0, 4}, {1, 4}});
    TwoCut iso{0, 1, components_excluding(k4_plus, 0, 1)};
    REQUIRE(cut_is_isolating(iso.comps));
    CHECK_THROWS_AS(split_on_cut(k4_plus, iso), InternalError);
}

TEST_CASE("divide step packs a singleton component together with a larger one") {
    // {0,1} cuts off components {2}, {3,4}, {5,6}
    Graph g = tu::from_pairs(
        7, {{0, 2}, {1, 2}, {0, 3}, {3, 4}, {1, 4}, {0, 5}, {5, 6}, {1, 6}});
    auto comps = components_excluding(g, 0, 1);
    REQUIRE(comps.size() == 3);
    CutSplit sp = split_on_cut(g, TwoCut{0, 1, comps});
    CHECK(sp.side1 == std::vector<Vertex>{2, 3, 4});
    CHECK(sp.side2 == std::vector<Vertex>{5, 6});
    CHECK(is_2vc(sp.part1.graph));
    CHECK(is_2vc(sp.part2.graph));
}

TEST_CASE("peeling a hexagon: one divide, two exact base cases") {
    ReductionStats stats;
    EdgeSet s = reduce_and_solve(tu::cycle_graph(6), {}, exact_core, stats);
    CHECK(s.count() == 6);
    CHECK(stats.cut_splits == 1);
    CHECK(stats.brute_calls == 2);
    CHECK(stats.irrelevant_deletions == 0);
    CHECK(stats.five_cycle_deletions == 0);
    CHECK(stats.structured_calls == 0);
}

TEST_CASE("peeling drops a chord before dividing") {
    Graph g = tu::from_pairs(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}, {0, 3}});
    ReductionStats stats;
    EdgeSet s = reduce_and_solve(g, {}, exact_core, stats);
    CHECK(s.count() == 6);
    CHECK(!s.contains(g.edge_id(0, 3)));
    CHECK(stats.irrelevant_deletions == 1);
    CHECK(stats.cut_splits == 1);
    CHECK(stats.brute_calls == 2);
}

TEST_CASE("peeling removes the spare edge of a double-chorded pentagon") {
    Graph g = pentagon_with_tail();
    ReductionStats stats;
    EdgeSet s = reduce_and_solve(g, {}, exact_core, stats);
    CHECK(s.count() == 6);  // the spanning cycle 0-1-2-3-5-4
    CHECK(stats.five_cycle_deletions == 1);
    CHECK(stats.cut_splits == 1);
    CHECK(stats.brute_calls == 2);
    CHECK(stats.structured_calls == 0);
    CHECK(is_spanning_2vc(s));
}

TEST_CASE("feature-free graphs go to the core untouched") {
    ReductionStats stats;
    EdgeSet s = reduce_and_solve(tu::petersen(), {}, exact_core, stats);
    CHECK(s.count() == 11);
    CHECK(stats.structured_calls == 1);
    CHECK(stats.brute_calls == 0);
    CHECK(stats.cut_splits == 0);
    CHECK(stats.irrelevant_deletions == 0);
    CHECK(stats.five_cycle_deletions == 0);
}

TEST_CASE("a tighter target widens the exact regime") {
    tu::Rng rng(5502);
    Graph g = tu::random_2vc_graph(rng, 8, 3);
    ReductionConfig tight{Rational(11, 10)};  // cutoff 20: everything here is brute-forced
    ReductionStats stats;
    EdgeSet s = reduce_and_solve(g, tight, exact_core, stats);
    CHECK(stats.brute_calls == 1);
    CHECK(stats.cut_splits == 0);
    CHECK(s.count() == exact_2vcss(g).count());
}

TEST_CASE("peeling shell: feasibility, ratio, and determinism on random inputs") {
    tu::Rng rng(5503);
    int splits_seen = 0;
    for (int iter = 0; iter < 120; ++iter) {
        Vertex n = 4 + static_cast<Vertex>(rng.next(6));  // 4..9
        Graph g = tu::random_2vc_graph(rng, n, rng.next(5));
        ReductionStats stats;
        EdgeSet s = reduce_and_solve(g, {}, exact_core, stats);
        REQUIRE(is_spanning_2vc(s));
        int opt = exact_2vcss(g, OracleBudget{9, 100'000'000}).count();
        // exact base cases keep the whole peel within the target ratio
        CHECK(3 * s.count() <= 4 * opt);
        CHECK(stats.cut_splits <= g.n() * g.n());
        splits_seen += stats.cut_splits;

        ReductionStats again;
        CHECK(s == reduce_and_solve(g, {}, exact_core, again));
    }
    CHECK(splits_seen > 10);
}

TEST_CASE("peeling rejects infeasible input") {
    ReductionStats stats;
    Graph path = tu::from_pairs(4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK_THROWS_AS(reduce_and_solve(path, {}, exact_core, stats), std::invalid_argument);
}
