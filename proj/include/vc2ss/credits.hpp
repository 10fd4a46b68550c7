#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "vc2ss/check.hpp"
#include "vc2ss/cover.hpp"
#include "vc2ss/rational.hpp"

namespace vc2ss {

// Credit scheme over a 2-edge-cover: a small component holds |E(C)|/3, a
// large component holds 1 plus 1 per block plus 1/4 per bridge. The running
// potential cost(S) = |S| + cr(S) never increases across moves, which is the
// whole accounting argument behind the size guarantee.
struct CreditLedger {
    Rational credits;
    Rational cost;
    std::vector<Rational> comp_credit;
};

inline CreditLedger ledger(const EdgeSet& s) {
    if (!is_2edge_cover(s))
        throw std::invalid_argument("ledger: not a 2-edge-cover");
    CoverClasses c = classify(s);
    CreditLedger led;
    for (std::size_t i = 0; i < c.comp_small.size(); ++i) {
        Rational cr;
        if (c.comp_small[i]) {
            cr = Rational(static_cast<std::int64_t>(c.decomp.comp_edges[i].size()), 3);
        } else {
            cr = Rational(1) + Rational(c.decomp.comp_block_count[i]) +
                 Rational(c.decomp.comp_bridge_count[i], 4);
        }
        led.comp_credit.push_back(cr);
        led.credits += cr;
    }
    led.cost = Rational(s.count()) + led.credits;
    return led;
}

// One rewrite step: edges to add, edges to drop, and the rule that fired
// (used in trace output and error reports).
struct Move {
    std::vector<EdgeId> add;
    std::vector<EdgeId> remove;
    std::string rule;
};

inline void apply_move(EdgeSet& s, const Move& m) {
    for (EdgeId id : m.add)
        for (EdgeId other : m.remove)
            check(id != other, "apply_move: edge both added and removed");
    for (EdgeId id : m.add) s.add(id);
    for (EdgeId id : m.remove) s.remove(id);
}

struct CertifyOptions {
    bool components_strictly_down = false;
    bool components_no_increase = false;
    bool no_new_bridges = false;
    bool require_canonical = true;
};

struct MoveOutcome {
    Rational cost_before;
    Rational cost_after;
};

// Applies a move and re-derives every claimed invariant from scratch: the
// result is still a 2-edge-cover, the cost did not grow, canonical form and
// the requested structural progress all hold. A failure here means a rewrite
// rule broke its contract, so it throws rather than returning a flag.
inline MoveOutcome apply_certified(EdgeSet& s, const Move& m, const CertifyOptions& opt,
                                   std::ostream* trace = nullptr) {
    const Rational cost_before = ledger(s).cost;
    std::vector<EdgeId> bridges_before;
    int comps_before = 0;
    {
        Decomposition d = decompose(s);
        bridges_before = d.bridge_edges;
        comps_before = static_cast<int>(d.comp_vertices.size());
    }

    apply_move(s, m);

    check(is_2edge_cover(s), "move '" + m.rule + "': result is not a 2-edge-cover");
    const Rational cost_after = ledger(s).cost;
    check(cost_after <= cost_before, "move '" + m.rule + "': cost increased");
    if (opt.require_canonical)
        check(is_canonical(s), "move '" + m.rule + "': result is not canonical");

    Decomposition d = decompose(s);
    const int comps_after = static_cast<int>(d.comp_vertices.size());
    if (opt.components_strictly_down)
        check(comps_after < comps_before, "move '" + m.rule + "': component count did not drop");
    if (opt.components_no_increase)
        check(comps_after <= comps_before, "move '" + m.rule + "': component count grew");
    if (opt.no_new_bridges)
        for (EdgeId b : d.bridge_edges)
            check(std::binary_search(bridges_before.begin(), bridges_before.end(), b),
                  "move '" + m.rule + "': created a new bridge");

    if (trace)
        *trace << "move=" << m.rule << " added=" << m.add.size() << " removed=" << m.remove.size()
               << " cost_before=" << cost_before.str() << " cost_after=" << cost_after.str()
               << "\n";
    return {cost_before, cost_after};
}

}  // namespace vc2ss
