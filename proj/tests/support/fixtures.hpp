// Hand-drawn fixture networks with independently derived expectations.
#pragma once

#include <debtswap/network.hpp>

namespace fixtures {

using namespace debtswap;

// Six banks in a lattice of unit liabilities.  Only v2 holds external assets.
//   edges: e0=(u1,v1) e1=(u2,v2) e2=(v1,u2) e3=(v1,w1) e4=(w1,v1) e5=(v2,w2)
// All banks rank their edges in insertion order (v1 prefers u2 over w1).
// Cleared payments: only e5 moves money (v2 pays 1 to w2); everything else
// stays at zero because nobody but v2 has assets.
// Swapping e0 with e1 rewires u2 -> v1 and u1 -> v2, creating the cycle
// v1 -> u2 -> v1 fed by nothing, but rerouting v2's debtor u2... (worked
// expectation: v1 gains 2, v2 stays at 1, everyone else at worst keeps level;
// the swap saturates previously unpaid edges, so it classifies saturating).
inline FinancialNetwork ex1() {
    FinancialNetwork n;
    BankId u1 = n.add_bank("u1", 0);
    BankId v1 = n.add_bank("v1", 0);
    BankId u2 = n.add_bank("u2", 0);
    BankId v2 = n.add_bank("v2", 1);
    BankId w1 = n.add_bank("w1", 0);
    BankId w2 = n.add_bank("w2", 0);
    n.add_edge(u1, v1, 1);  // e0
    n.add_edge(u2, v2, 1);  // e1
    n.add_edge(v1, u2, 1);  // e2
    n.add_edge(v1, w1, 1);  // e3
    n.add_edge(w1, v1, 1);  // e4
    n.add_edge(v2, w2, 1);  // e5
    return n;
}

// Chain fixture for extension swaps: three edges of liability M, external
// assets k at u2 only (0 < k < M).  Swapping (u1,v1) with (u2,v2) reroutes
// u2's payment through v1 and leaves every per-id payment unchanged: a
// fully-active extension swap with deltaV1 = k.
inline FinancialNetwork ext(const Money& M = 10, const Money& k = 3) {
    FinancialNetwork n;
    BankId u1 = n.add_bank("u1", 0);
    BankId u2 = n.add_bank("u2", k);
    BankId v1 = n.add_bank("v1", 0);
    BankId v2 = n.add_bank("v2", 0);
    n.add_edge(u1, v1, M);  // e0
    n.add_edge(u2, v2, M);  // e1
    n.add_edge(v1, v2, M);  // e2
    return n;
}

}  // namespace fixtures
