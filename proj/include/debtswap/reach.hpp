// Reachability between consistent networks: a structural consistency check, a
// greedy routine that transforms one network into another by valid swaps, and
// a replay-based verifier for swap sequences under optional constraints.
#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "classify.hpp"
#include "clearing.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "network.hpp"
#include "transforms.hpp"

namespace debtswap {

// Two networks are consistent if they have the same banks (by name) with the
// same external assets and rule types, every bank has the same multiset of
// incoming and outgoing liabilities, and ranking banks rank the same
// liability sequence.  Swaps preserve consistency; it is necessary (but not
// sufficient) for mutual reachability.
inline bool consistent(const FinancialNetwork& f, const FinancialNetwork& g) {
    if (f.bank_count() != g.bank_count()) return false;
    auto weights = [](const FinancialNetwork& net, const std::vector<EdgeId>& edges,
                      bool sorted) {
        std::vector<Money> w;
        w.reserve(edges.size());
        for (EdgeId e : edges) w.push_back(net.edge(e).liability);
        if (sorted) std::sort(w.begin(), w.end());
        return w;
    };
    for (BankId vf = 0; vf < f.bank_count(); ++vf) {
        const std::string& name = f.bank(vf).name;
        if (!g.has_bank(name)) return false;
        const BankId vg = g.bank_id(name);
        if (f.bank(vf).externalAssets != g.bank(vg).externalAssets) return false;
        if (f.rule(vf).type != g.rule(vg).type) return false;
        if (weights(f, f.out_edges(vf), true) != weights(g, g.out_edges(vg), true))
            return false;
        if (weights(f, f.in_edges(vf), true) != weights(g, g.in_edges(vg), true))
            return false;
        if (f.rule(vf).type == RuleType::EdgeRanking &&
            weights(f, f.rule(vf).ranking, false) != weights(g, g.rule(vg).ranking, false))
            return false;
    }
    return true;
}

namespace detail {

// A cur-edge is "placed" if the target has the same claim (debtor, creditor,
// liability, all by name).
inline bool placed_in(const FinancialNetwork& g, const FinancialNetwork& cur, EdgeId e) {
    const Edge& ed = cur.edge(e);
    const std::string& dn = cur.bank(ed.debtor).name;
    const std::string& cn = cur.bank(ed.creditor).name;
    const BankId gd = g.bank_id(dn);
    const BankId gc = g.bank_id(cn);
    return g.has_edge(gd, gc) && g.edge(g.edge_id(gd, gc)).liability == ed.liability;
}

struct DesiredEdge {
    BankId debtor;    // ids in `cur`
    BankId creditor;
    Money liability;
};

// Target edges missing from cur, ordered by (debtor name, creditor name).
inline std::vector<DesiredEdge> desired_edges(const FinancialNetwork& g,
                                              const FinancialNetwork& cur) {
    std::vector<std::pair<std::pair<std::string, std::string>, DesiredEdge>> keyed;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        const std::string& dn = g.bank(ed.debtor).name;
        const std::string& cn = g.bank(ed.creditor).name;
        const BankId cd = cur.bank_id(dn);
        const BankId cc = cur.bank_id(cn);
        if (cur.has_edge(cd, cc) &&
            cur.edge(cur.edge_id(cd, cc)).liability == ed.liability)
            continue;
        keyed.push_back({{dn, cn}, DesiredEdge{cd, cc, ed.liability}});
    }
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<DesiredEdge> result;
    result.reserve(keyed.size());
    for (auto& [key, de] : keyed) result.push_back(de);
    return result;
}

// One candidate swap in the reach search: `gain` is the net change it causes
// in the number of placed target edges (products that land on wanted slots
// minus consumed edges that vacate them), between -2 and +2.
struct ReachMove {
    DebtSwap swap;
    int gain = 0;
};

// True iff the target network has an edge debtor -> creditor (bank ids of
// `cur`, matched across networks by name) with exactly this liability.
inline bool target_wants(const FinancialNetwork& g, const FinancialNetwork& cur,
                         BankId debtor, BankId creditor, const Money& liability) {
    const BankId gd = g.bank_id(cur.bank(debtor).name);
    const BankId gc = g.bank_id(cur.bank(creditor).name);
    return g.has_edge(gd, gc) && g.edge(g.edge_id(gd, gc)).liability == liability;
}

// Every valid swap, most profitable first (net placement gain descending,
// then smaller edge ids).  Pairs of placed edges are included: a placed claim
// of one weight class can block a needed product of another class between the
// same banks, and clearing it sometimes requires trading two placed claims
// temporarily.
inline std::vector<ReachMove> reach_moves(const FinancialNetwork& g,
                                          const FinancialNetwork& cur) {
    std::vector<ReachMove> moves;
    for (EdgeId a = 0; a < cur.edge_count(); ++a) {
        const bool placedA = placed_in(g, cur, a);
        for (EdgeId b = a + 1; b < cur.edge_count(); ++b) {
            const bool placedB = placed_in(g, cur, b);
            DebtSwap s{a, b};
            if (swap_violation(cur, s)) continue;
            const Edge& ea = cur.edge(a);
            const Edge& eb = cur.edge(b);
            const int placements =
                (target_wants(g, cur, ea.debtor, eb.creditor, ea.liability) ? 1 : 0) +
                (target_wants(g, cur, eb.debtor, ea.creditor, ea.liability) ? 1 : 0);
            moves.push_back({s, placements - (placedA ? 1 : 0) - (placedB ? 1 : 0)});
        }
    }
    std::stable_sort(moves.begin(), moves.end(),
                     [](const ReachMove& x, const ReachMove& y) { return x.gain > y.gain; });
    return moves;
}

// Canonical description of a network state reached from a fixed start by
// swaps: per bank, its out-claims in rank order (or sorted, for proportional
// banks).  Bank ids are stable across swaps, so the id order is canonical.
inline std::string reach_state_key(const FinancialNetwork& net) {
    std::string key;
    for (BankId b = 0; b < net.bank_count(); ++b) {
        key += ';';
        auto claim = [&](EdgeId e) {
            return net.bank(net.edge(e).creditor).name + '@' +
                   money_to_string(net.edge(e).liability) + ',';
        };
        if (net.rule(b).type == RuleType::EdgeRanking) {
            for (EdgeId e : net.rule(b).ranking) key += claim(e);
        } else {
            std::vector<std::string> parts;
            for (EdgeId e : net.out_edges(b)) parts.push_back(claim(e));
            std::sort(parts.begin(), parts.end());
            for (const std::string& p : parts) key += p;
        }
    }
    return key;
}

}  // namespace detail

// Transforms `f` into `g` by a short sequence of valid swaps.  The preferred
// step replaces two stray edges (edges the target does not contain) with at
// least one missing target edge, which keeps the sequence within
// |E^g minus E^f| <= m steps.  On simple graphs a greedy choice of which
// target edge to create next can strand the remainder (the replacement edge
// of a swap may collide with an existing claim between the same banks, and
// equal-liability claims of different weight classes block each other's
// slots), so the routine runs a depth-first search over the choice order,
// most profitable swaps first; when every placing swap is blocked it may
// insert a parking swap that moves a stray claim out of the way.  The search
// first looks for a plan of at most |E^g minus E^f| swaps and widens the
// bound to m only if none exists.  Requires consistency.  Consistency alone
// does not guarantee reachability (a three-cycle cannot be reversed, and two
// equal claims of one debtor cannot trade places without a third equal claim
// elsewhere); a genuinely blocked run raises PreconditionViolated.
inline SwapSequence greedy_reach(const FinancialNetwork& f, const FinancialNetwork& g) {
    require(consistent(f, g), Errc::Inconsistent,
            "the networks are not consistent; no swap sequence can connect them");

    SwapSequence seq;
    seq.initial = f;

    const long long missing =
        static_cast<long long>(detail::desired_edges(g, f).size());
    if (missing == 0) {
        raise(Errc::IdenticalNetworks,
              f == g ? "the networks are already identical"
                     : "the edge sets agree; the networks differ only in the rank "
                       "order of equal-liability claims");
    }

    // A state that failed with `left` steps remaining is recorded so it is
    // only re-expanded when more budget is available.
    std::map<std::string, long long> failedWith;
    std::vector<DebtSwap> plan;
    long long nodesLeft = 200000;
    auto search = [&](auto&& self, const FinancialNetwork& cur, long long left) -> bool {
        if (cur == g) return true;
        // A swap places at most two target edges, so prune branches that
        // cannot finish in the remaining steps.
        if (2 * left < static_cast<long long>(detail::desired_edges(g, cur).size()))
            return false;
        require(--nodesLeft > 0, Errc::PreconditionViolated,
                "greedy reach is blocked: search budget exhausted; target may be "
                "unreachable despite consistency");
        const std::string key = detail::reach_state_key(cur);
        if (auto it = failedWith.find(key); it != failedWith.end() && it->second >= left)
            return false;
        for (const detail::ReachMove& mv : detail::reach_moves(g, cur)) {
            plan.push_back(mv.swap);
            if (self(self, apply_swap(cur, mv.swap), left - 1)) return true;
            plan.pop_back();
        }
        auto [it, inserted] = failedWith.try_emplace(key, left);
        if (!inserted && it->second < left) it->second = left;
        return false;
    };

    bool found = search(search, f, missing);
    if (!found && missing < f.edge_count()) found = search(search, f, f.edge_count());
    require(found, Errc::PreconditionViolated,
            "greedy reach is blocked; target may be unreachable despite consistency");

    FinancialNetwork cur = f;
    for (const DebtSwap& s : plan) detail::record_step(cur, seq, s, classify_swap(cur, s));
    return seq;
}

// ---------------------------------------------------------------------------
// Sequence verification.
// ---------------------------------------------------------------------------

struct ReachConstraint {
    enum class Kind { None, VImproving, MinAssets };
    Kind kind = Kind::None;
    BankId bank = -1;
    Money floor = 0;

    static ReachConstraint none() { return {}; }
    static ReachConstraint v_improving(BankId v) {
        return {Kind::VImproving, v, 0};
    }
    static ReachConstraint min_assets(BankId v, Money minimum) {
        return {Kind::MinAssets, v, std::move(minimum)};
    }
};

struct VerificationReport {
    bool ok = true;
    std::string reason;
    explicit operator bool() const { return ok; }
};

// Replays `seq` (by bank names) from `f`: every step must be a valid swap,
// the constraint must hold along the way (for MinAssets also at both
// endpoints), and the final network must equal `g` semantically.
inline VerificationReport verify_sequence(const FinancialNetwork& f,
                                          const FinancialNetwork& g, const SwapSequence& seq,
                                          const ReachConstraint& constraint = {}) {
    auto fail = [](const std::string& reason) { return VerificationReport{false, reason}; };
    FinancialNetwork cur = f;
    Money tracked = 0;
    if (constraint.kind != ReachConstraint::Kind::None) {
        if (constraint.bank < 0 || constraint.bank >= f.bank_count())
            return fail("constraint bank is not part of the initial network");
        tracked = clear(cur).totalAssets[constraint.bank];
        if (constraint.kind == ReachConstraint::Kind::MinAssets && tracked < constraint.floor)
            return fail("initial assets of '" + f.bank(constraint.bank).name +
                        "' fall below the floor");
    }

    for (std::size_t i = 0; i < seq.steps.size(); ++i) {
        const std::string where = "step " + std::to_string(i + 1);
        DebtSwap swap;
        try {
            swap = resolve_spec(cur, seq.steps[i].spec);
        } catch (const Error& e) {
            return fail(where + ": " + e.what());
        }
        if (auto why = swap_violation(cur, swap)) return fail(where + ": " + *why);
        cur.exchange_creditors(swap.e1, swap.e2);
        if (constraint.kind != ReachConstraint::Kind::None) {
            Money now = clear(cur).totalAssets[constraint.bank];
            if (constraint.kind == ReachConstraint::Kind::VImproving && !(now > tracked))
                return fail(where + ": assets of '" + f.bank(constraint.bank).name +
                            "' did not strictly increase");
            if (constraint.kind == ReachConstraint::Kind::MinAssets &&
                now < constraint.floor)
                return fail(where + ": assets of '" + f.bank(constraint.bank).name +
                            "' fall below the floor");
            tracked = std::move(now);
        }
    }
    if (!(cur == g)) return fail("the final network differs from the target");
    return {};
}

}  // namespace debtswap
