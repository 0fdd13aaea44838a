// Structural surgery on financial networks: debt swaps, source/sink splits,
// pre/difference separation, and executable checks for the flow identities
// the rest of the library leans on.
//
// All operations are pure: they take a network by const reference and return
// a freshly built one.  Edge ids are preserved by every transform that keeps
// an edge alive, so callers can track payments across a transform by id.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clearing.hpp"
#include "errors.hpp"
#include "network.hpp"

namespace debtswap {

// A debt swap exchanges the creditors of two equal-liability edges.  After the
// swap, edge e1 keeps its debtor and inherits e2's creditor, and vice versa.
// Each debtor's ranking is untouched: the swapped-in claim occupies the same
// rank position the swapped-out claim held.
struct DebtSwap {
    EdgeId e1;
    EdgeId e2;
};

// Why `swap` cannot be applied to `net`, or nullopt if it can.  The conditions
// are: two distinct edges of equal liability, four pairwise-distinct endpoint
// banks, and neither (debtor1, creditor2) nor (debtor2, creditor1) existing
// already (the graph must stay simple).
inline std::optional<std::string> swap_violation(const FinancialNetwork& net,
                                                 const DebtSwap& swap) {
    if (swap.e1 < 0 || swap.e1 >= net.edge_count() || swap.e2 < 0 ||
        swap.e2 >= net.edge_count())
        return "edge id out of range";
    if (swap.e1 == swap.e2) return "the two edges must be distinct";
    const Edge& a = net.edge(swap.e1);
    const Edge& b = net.edge(swap.e2);
    if (a.liability != b.liability) return "liabilities differ";
    if (a.debtor == b.debtor || a.debtor == b.creditor || a.creditor == b.debtor ||
        a.creditor == b.creditor)
        return "endpoint banks are not pairwise distinct";
    if (net.has_edge(a.debtor, b.creditor) || net.has_edge(b.debtor, a.creditor))
        return "swap would create a parallel edge";
    return std::nullopt;
}

inline FinancialNetwork apply_swap(const FinancialNetwork& net, const DebtSwap& swap) {
    if (auto why = swap_violation(net, swap)) raise(Errc::InvalidSwap, *why);
    FinancialNetwork out = net;
    out.exchange_creditors(swap.e1, swap.e2);
    return out;
}

namespace detail {

// Fresh name for an auxiliary bank, extended until it is unused.
inline std::string fresh_name(const FinancialNetwork& net, std::string base) {
    while (net.has_bank(base)) base += "_";
    return base;
}

// Copy every allocation rule of `src` onto `dst`.  Requires that `dst` holds
// the first bank_count() banks of `src` with identical out-edge ids.
inline void copy_rules(const FinancialNetwork& src, FinancialNetwork& dst) {
    for (BankId v = 0; v < src.bank_count(); ++v) {
        if (src.rule(v).type == RuleType::Proportional)
            dst.set_proportional(v);
        else
            dst.set_ranking(v, src.rule(v).ranking);
    }
}

}  // namespace detail

// Source-sink split of a bank: `v` keeps its name, id and outgoing edges and
// becomes a pure source with external assets `sourceAssets`; a new sink bank
// (appended last, zero assets) takes over all of v's incoming edges.  With
// sourceAssets equal to v's cleared total assets, every edge keeps its
// clearing payment and the sink collects exactly v's incoming flow.
inline FinancialNetwork split_bank(const FinancialNetwork& net, BankId v,
                                   const Money& sourceAssets) {
    require(sourceAssets >= 0, Errc::PreconditionViolated,
            "source assets must be non-negative");
    FinancialNetwork out;
    for (BankId b = 0; b < net.bank_count(); ++b)
        out.add_bank(net.bank(b).name,
                     b == v ? sourceAssets : net.bank(b).externalAssets);
    BankId sink = out.add_bank(detail::fresh_name(out, net.bank(v).name + "_sink"), 0);
    for (EdgeId e = 0; e < net.edge_count(); ++e) {
        const Edge& ed = net.edge(e);
        out.add_edge(ed.debtor, ed.creditor == v ? sink : ed.creditor, ed.liability);
    }
    detail::copy_rules(net, out);
    return out;
}

// Source-sink split of a single edge: the edge is re-pointed at a fresh sink
// bank and the old creditor is compensated with external assets equal to the
// edge's clearing payment, so all surviving payments are preserved.
inline FinancialNetwork split_edge(const FinancialNetwork& net, EdgeId e) {
    const Edge& target = net.edge(e);
    Money pe = clear(net).payments[e];
    FinancialNetwork out;
    for (BankId b = 0; b < net.bank_count(); ++b) {
        Money assets = net.bank(b).externalAssets;
        if (b == target.creditor) assets += pe;
        out.add_bank(net.bank(b).name, assets);
    }
    BankId sink = out.add_bank(
        detail::fresh_name(out, net.bank(target.debtor).name + "_" +
                                    net.bank(target.creditor).name + "_sink"),
        0);
    for (EdgeId id = 0; id < net.edge_count(); ++id) {
        const Edge& ed = net.edge(id);
        out.add_edge(ed.debtor, id == e ? sink : ed.creditor, ed.liability);
    }
    detail::copy_rules(net, out);
    return out;
}

// Decomposition of a network into a pre-network (same graph, reduced external
// assets) and a difference network carrying the residual liabilities and the
// withheld assets.  Clearing payments add up edge-wise across the two parts.
struct SeparationResult {
    FinancialNetwork preNetwork;
    FinancialNetwork differenceNetwork;
    ClearingState preState;  // clearing of preNetwork, used to build the residuals
};

// Splits `net` along `reducedAssets` (the pre-network's external assets).
// Residual liabilities are l_e minus the pre-network payment on e; fully paid
// edges stay in the difference network with liability 0 so that edge ids line
// up across all three networks.
//
// Rules carry over unchanged: paying the residual of an edge after the
// pre-network's payments is exactly the original rule evaluated at the shifted
// budget, for both rule families.  For proportional banks the residuals keep
// the original proportions (l_e - b*l_e/L scales every edge by the same
// factor), and for ranking banks the residual prefix sums are the original
// prefix sums shifted by the pre-network budget.
inline SeparationResult separate(const FinancialNetwork& net,
                                 const std::vector<Money>& reducedAssets) {
    require(static_cast<int>(reducedAssets.size()) == net.bank_count(),
            Errc::PreconditionViolated, "one reduced-assets entry per bank required");
    for (BankId v = 0; v < net.bank_count(); ++v) {
        require(reducedAssets[v] >= 0, Errc::PreconditionViolated,
                "reduced assets must be non-negative at '" + net.bank(v).name + "'");
        require(reducedAssets[v] <= net.bank(v).externalAssets, Errc::PreconditionViolated,
                "reduced assets exceed external assets at '" + net.bank(v).name + "'");
    }

    SeparationResult result;
    result.preNetwork = net;
    for (BankId v = 0; v < net.bank_count(); ++v)
        result.preNetwork.set_external_assets(v, reducedAssets[v]);
    result.preState = clear(result.preNetwork);

    FinancialNetwork diff;
    for (BankId v = 0; v < net.bank_count(); ++v)
        diff.add_bank(net.bank(v).name, net.bank(v).externalAssets - reducedAssets[v]);
    for (EdgeId e = 0; e < net.edge_count(); ++e) {
        const Edge& ed = net.edge(e);
        diff.add_edge(ed.debtor, ed.creditor, ed.liability - result.preState.payments[e]);
    }
    detail::copy_rules(net, diff);
    result.differenceNetwork = std::move(diff);
    return result;
}

// True iff raising the external assets of `source` (a bank without incoming
// edges) by `delta` increases the summed total assets of all sinks (banks
// without outgoing edges) by at most `delta`.  This holds for every network;
// the checker exists so tests can assert it.
inline bool check_non_expansivity(const FinancialNetwork& net, BankId source,
                                  const Money& delta) {
    require(net.in_edges(source).empty(), Errc::PreconditionViolated,
            "'" + net.bank(source).name + "' has incoming edges");
    require(delta > 0, Errc::PreconditionViolated, "delta must be positive");

    ClearingState before = clear(net);
    FinancialNetwork raised = net;
    raised.set_external_assets(source, net.bank(source).externalAssets + delta);
    ClearingState after = clear(raised);

    Money gain = 0;
    for (BankId v = 0; v < net.bank_count(); ++v)
        if (net.out_edges(v).empty())
            gain += after.totalAssets[v] - before.totalAssets[v];
    return gain <= delta;
}

// True iff raising v's external assets by `delta` increases the summed total
// assets of the given sink banks by exactly `delta` (the bank is "linear on
// the interval" towards those sinks).
inline bool check_linearity(const FinancialNetwork& net, BankId v,
                            const std::vector<BankId>& sinks, const Money& delta) {
    for (BankId t : sinks)
        require(net.out_edges(t).empty(), Errc::PreconditionViolated,
                "'" + net.bank(t).name + "' has outgoing edges");
    require(delta > 0, Errc::PreconditionViolated, "delta must be positive");

    ClearingState before = clear(net);
    FinancialNetwork raised = net;
    raised.set_external_assets(v, net.bank(v).externalAssets + delta);
    ClearingState after = clear(raised);

    Money gain = 0;
    for (BankId t : sinks) gain += after.totalAssets[t] - before.totalAssets[t];
    return gain == delta;
}

}  // namespace debtswap
