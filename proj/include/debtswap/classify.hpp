// Classification of debt swaps: who gains, who loses, and which of the two
// structural families (saturating / extension) a beneficial swap falls into.
// Also builds the active-edge forest of a ranking network, which underpins
// both the extension subtypes and the staged scheduler.
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "clearing.hpp"
#include "errors.hpp"
#include "network.hpp"
#include "transforms.hpp"

namespace debtswap {

// ---------------------------------------------------------------------------
// Active edges.
//
// For a bank with an edge-ranking rule, the active edge is the first edge in
// ranking order that is not fully paid.  A bank has an active edge iff it is
// insolvent; following active edges therefore never cycles in a cleared
// network, and the active edges form a forest pointing from each insolvent
// bank to the creditor it is currently defaulting on first.
// ---------------------------------------------------------------------------

struct ActiveForest {
    std::vector<std::optional<EdgeId>> activeEdge;  // per bank
    std::vector<BankId> parent;                     // creditor of the active edge, -1 at roots
    std::vector<int> depth;                         // roots have depth 0
    std::vector<BankId> roots;                      // banks without an active edge

    // True iff `ancestor` lies on the active-edge path from `v` to its root.
    // Reflexive: every bank is its own ancestor.
    bool is_ancestor(BankId ancestor, BankId v) const {
        for (BankId cur = v; cur != -1; cur = parent[cur])
            if (cur == ancestor) return true;
        return false;
    }
};

inline std::optional<EdgeId> active_edge(const FinancialNetwork& net,
                                         const ClearingState& state, BankId v) {
    require(net.rule(v).type == RuleType::EdgeRanking, Errc::NotEdgeRanking,
            "active edges are defined for ranking banks only");
    for (EdgeId e : net.rule(v).ranking)
        if (state.payments[e] < net.edge(e).liability) return e;
    return std::nullopt;
}

inline ActiveForest active_forest(const FinancialNetwork& net, const ClearingState& state) {
    require(net.all_edge_ranking(), Errc::NotEdgeRanking,
            "the active forest requires edge-ranking rules throughout");
    const int n = net.bank_count();
    ActiveForest forest;
    forest.activeEdge.resize(n);
    forest.parent.assign(n, -1);
    forest.depth.assign(n, -1);
    for (BankId v = 0; v < n; ++v) {
        forest.activeEdge[v] = active_edge(net, state, v);
        if (forest.activeEdge[v])
            forest.parent[v] = net.edge(*forest.activeEdge[v]).creditor;
        else
            forest.roots.push_back(v);
    }
    // Depths by walking to a settled bank; a revisit of the current walk means
    // the active edges contain a cycle, which a cleared state never produces.
    for (BankId v = 0; v < n; ++v) {
        if (forest.depth[v] >= 0) continue;
        std::vector<BankId> path;
        BankId cur = v;
        std::vector<char> onPath(n, 0);
        while (cur != -1 && forest.depth[cur] < 0) {
            require(!onPath[cur], Errc::CyclicActiveEdges,
                    "active edges form a cycle at '" + net.bank(cur).name + "'");
            onPath[cur] = 1;
            path.push_back(cur);
            cur = forest.parent[cur];
        }
        int base = cur == -1 ? -1 : forest.depth[cur];
        for (auto it = path.rbegin(); it != path.rend(); ++it) forest.depth[*it] = ++base;
    }
    return forest;
}

// All structurally valid swaps of `net`, ordered lexicographically by edge id
// pair (e1 < e2).
inline std::vector<DebtSwap> enumerate_swaps(const FinancialNetwork& net) {
    std::vector<DebtSwap> swaps;
    for (EdgeId e1 = 0; e1 < net.edge_count(); ++e1)
        for (EdgeId e2 = e1 + 1; e2 < net.edge_count(); ++e2)
            if (!swap_violation(net, DebtSwap{e1, e2})) swaps.push_back(DebtSwap{e1, e2});
    return swaps;
}

// ---------------------------------------------------------------------------
// Swap classification.
// ---------------------------------------------------------------------------

// A semi-positive swap either saturates a previously unsaturated edge or it
// does not; in the latter case it merely extends payment activity and is
// called an extension swap.
enum class SwapKind { NotSemiPositive, Saturating, Extension };

// Extension swaps on ranking networks subdivide by how many of the two edges
// were active before the swap.  For proportional participants the notion of
// an active edge does not exist, hence NotApplicable.
enum class ExtensionActivity { NotApplicable, NonActive, SemiActive, FullyActive };

inline const char* swap_kind_name(SwapKind k) {
    switch (k) {
        case SwapKind::NotSemiPositive: return "not-semi-positive";
        case SwapKind::Saturating: return "saturating";
        case SwapKind::Extension: return "extension";
    }
    return "?";
}

inline const char* extension_activity_name(ExtensionActivity a) {
    switch (a) {
        case ExtensionActivity::NotApplicable: return "n/a";
        case ExtensionActivity::NonActive: return "non-active";
        case ExtensionActivity::SemiActive: return "semi-active";
        case ExtensionActivity::FullyActive: return "fully-active";
    }
    return "?";
}

struct SwapClassification {
    Money deltaV1 = 0;  // asset change of e1's creditor before the swap
    Money deltaV2 = 0;  // asset change of e2's creditor before the swap
    std::vector<Money> assetDeltas;     // per bank, post minus pre
    std::vector<BankId> improvedBanks;  // banks with a strictly positive delta
    bool positive = false;        // both creditors strictly gain
    bool semiPositive = false;    // no creditor loses, exactly one strictly gains
    bool paretoImproving = false;  // no bank loses, some bank strictly gains
    SwapKind kind = SwapKind::NotSemiPositive;
    ExtensionActivity activity = ExtensionActivity::NotApplicable;
};

inline SwapClassification classify_swap(const FinancialNetwork& net, const DebtSwap& swap) {
    if (auto why = swap_violation(net, swap)) raise(Errc::InvalidSwap, *why);

    ClearingState pre = clear(net);
    FinancialNetwork post = apply_swap(net, swap);
    ClearingState postState = clear(post);

    SwapClassification c;
    c.assetDeltas.resize(net.bank_count());
    for (BankId v = 0; v < net.bank_count(); ++v) {
        c.assetDeltas[v] = postState.totalAssets[v] - pre.totalAssets[v];
        if (c.assetDeltas[v] > 0) c.improvedBanks.push_back(v);
    }
    const BankId v1 = net.edge(swap.e1).creditor;
    const BankId v2 = net.edge(swap.e2).creditor;
    c.deltaV1 = c.assetDeltas[v1];
    c.deltaV2 = c.assetDeltas[v2];
    c.positive = c.deltaV1 > 0 && c.deltaV2 > 0;
    c.semiPositive = c.deltaV1 >= 0 && c.deltaV2 >= 0 && (c.deltaV1 > 0) != (c.deltaV2 > 0);
    c.paretoImproving =
        !c.improvedBanks.empty() &&
        std::all_of(c.assetDeltas.begin(), c.assetDeltas.end(),
                    [](const Money& d) { return d >= 0; });

    if (!c.semiPositive) return c;

    // Saturating iff the swap fully pays some edge id that was unsaturated
    // before.  (Semi-positive swaps never desaturate an edge: bank budgets
    // only grow, rank positions and liabilities are untouched, so per-id
    // payments are monotone.)
    bool newlySaturated = false;
    for (EdgeId e = 0; e < net.edge_count(); ++e)
        if (!pre.saturated[e] && postState.saturated[e]) newlySaturated = true;
    if (newlySaturated) {
        c.kind = SwapKind::Saturating;
        return c;
    }

    c.kind = SwapKind::Extension;
    if (!net.all_edge_ranking()) return c;  // activity stays NotApplicable

    // Order the pair by pre-swap payment; an extension swap keeps both
    // per-id payments fixed, which forces the two payments to differ.
    EdgeId low = swap.e1, high = swap.e2;
    if (pre.payments[low] > pre.payments[high]) std::swap(low, high);
    require(pre.payments[low] != pre.payments[high], Errc::Internal,
            "extension swap with equal payments");

    auto isActive = [&](EdgeId e) {
        return active_edge(net, pre, net.edge(e).debtor) == std::optional<EdgeId>(e);
    };
    const int activeCount = (isActive(low) ? 1 : 0) + (isActive(high) ? 1 : 0);
    c.activity = activeCount == 0   ? ExtensionActivity::NonActive
                 : activeCount == 1 ? ExtensionActivity::SemiActive
                                    : ExtensionActivity::FullyActive;
    return c;
}

// ---------------------------------------------------------------------------
// Potential active swaps and the residual headroom they need.
// ---------------------------------------------------------------------------

// Pairs of active edges that a staged scheduler might execute as a
// fully-active extension swap: equal liability, strictly smaller payment on
// the first edge, both debtors and the first creditor all descend from the
// second creditor, and the first debtor does not sit above its own creditor.
// Each returned pair also passes plain swap validity.
inline std::vector<DebtSwap> potential_active_swaps(const FinancialNetwork& net,
                                                    const ClearingState& state) {
    ActiveForest forest = active_forest(net, state);
    std::vector<EdgeId> actives;
    for (BankId v = 0; v < net.bank_count(); ++v)
        if (forest.activeEdge[v]) actives.push_back(*forest.activeEdge[v]);

    std::vector<DebtSwap> result;
    for (EdgeId e1 : actives) {
        for (EdgeId e2 : actives) {
            if (e1 == e2) continue;
            const Edge& a = net.edge(e1);
            const Edge& b = net.edge(e2);
            if (a.liability != b.liability) continue;
            if (!(state.payments[e1] < state.payments[e2])) continue;
            if (!forest.is_ancestor(b.creditor, a.creditor)) continue;
            if (!forest.is_ancestor(b.creditor, a.debtor)) continue;
            if (!forest.is_ancestor(b.creditor, b.debtor)) continue;
            if (forest.is_ancestor(a.debtor, a.creditor)) continue;
            if (swap_violation(net, DebtSwap{e1, e2})) continue;
            result.push_back(DebtSwap{e1, e2});
        }
    }
    return result;
}

// True iff every potential active swap has enough slack along the active path
// between the two creditors: each active edge on the path from the lower
// creditor up to (but excluding) the higher creditor must be able to absorb
// the payment difference of the pair.
inline bool has_sufficient_residuals(const FinancialNetwork& net, const ClearingState& state) {
    ActiveForest forest = active_forest(net, state);
    for (const DebtSwap& s : potential_active_swaps(net, state)) {
        const Money diff = state.payments[s.e2] - state.payments[s.e1];
        for (BankId x = net.edge(s.e1).creditor; x != net.edge(s.e2).creditor;
             x = forest.parent[x]) {
            if (!forest.activeEdge[x]) break;  // unreachable: e2's creditor is an ancestor
            EdgeId a = *forest.activeEdge[x];
            if (net.edge(a).liability - state.payments[a] < diff) return false;
        }
    }
    return true;
}

}  // namespace debtswap
