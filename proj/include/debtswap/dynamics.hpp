// Swap-sequence machinery: portable sequence records, greedy schedulers for
// improving swaps, the staged scheduler with its stage/phase bookkeeping, a
// local-search driver, and the proportional family with an exponentially long
// improving schedule.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "classify.hpp"
#include "clearing.hpp"
#include "errors.hpp"
#include "gadgets.hpp"
#include "network.hpp"
#include "transforms.hpp"

namespace debtswap {

// A swap recorded by bank names so it survives serialization and can be
// replayed onto any network with the same banks.  creditor1/creditor2 are the
// creditors *before* the swap; afterwards debtor1 owes creditor2 and vice
// versa.
struct SwapSpec {
    std::string debtor1;
    std::string creditor1;
    std::string debtor2;
    std::string creditor2;
    Money liability = 0;
};

struct SequenceStep {
    SwapSpec spec;
    SwapClassification classification;  // against the network the swap was applied to
    std::vector<Money> postAssets;      // cleared total assets after the swap
};

struct SwapSequence {
    FinancialNetwork initial;
    std::vector<SequenceStep> steps;
};

inline SwapSpec make_spec(const FinancialNetwork& net, const DebtSwap& s) {
    const Edge& a = net.edge(s.e1);
    const Edge& b = net.edge(s.e2);
    return SwapSpec{net.bank(a.debtor).name, net.bank(a.creditor).name,
                    net.bank(b.debtor).name, net.bank(b.creditor).name, a.liability};
}

// Looks the two edges of `spec` up by name in `net`.
inline DebtSwap resolve_spec(const FinancialNetwork& net, const SwapSpec& spec) {
    for (const std::string& name :
         {spec.debtor1, spec.creditor1, spec.debtor2, spec.creditor2})
        require(net.has_bank(name), Errc::SequenceInvalid, "unknown bank '" + name + "'");
    const BankId d1 = net.bank_id(spec.debtor1);
    const BankId c1 = net.bank_id(spec.creditor1);
    const BankId d2 = net.bank_id(spec.debtor2);
    const BankId c2 = net.bank_id(spec.creditor2);
    require(net.has_edge(d1, c1), Errc::SequenceInvalid,
            "no edge from '" + spec.debtor1 + "' to '" + spec.creditor1 + "'");
    require(net.has_edge(d2, c2), Errc::SequenceInvalid,
            "no edge from '" + spec.debtor2 + "' to '" + spec.creditor2 + "'");
    DebtSwap s{net.edge_id(d1, c1), net.edge_id(d2, c2)};
    require(net.edge(s.e1).liability == spec.liability &&
                net.edge(s.e2).liability == spec.liability,
            Errc::SequenceInvalid, "liability mismatch for swap of '" + spec.debtor1 +
                                       "'->'" + spec.creditor1 + "' with '" + spec.debtor2 +
                                       "'->'" + spec.creditor2 + "'");
    return s;
}

enum class TieBreak { LexSmallest, LargestGain };

namespace detail {

// Applies `swap` to `cur`, appending the step record.
inline void record_step(FinancialNetwork& cur, SwapSequence& seq, const DebtSwap& swap,
                        SwapClassification cls) {
    SwapSpec spec = make_spec(cur, swap);
    cur = apply_swap(cur, swap);
    seq.steps.push_back(SequenceStep{std::move(spec), std::move(cls),
                                     clear(cur).totalAssets});
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Greedy v-improving scheduler.
//
// Repeatedly applies a semi-positive swap that strictly raises v's cleared
// assets until none exists.  On edge-ranking networks every such run is a
// Pareto chain — no bank's assets ever drop along the way — and terminates
// within (m+1)^3 steps; the budget guards that bound.
// ---------------------------------------------------------------------------
inline std::pair<FinancialNetwork, SwapSequence> run_v_improving(
    const FinancialNetwork& net, BankId v, TieBreak tieBreak = TieBreak::LexSmallest) {
    require(net.all_edge_ranking(), Errc::NotEdgeRanking,
            "the v-improving scheduler requires edge-ranking rules");
    const long long m = net.edge_count();
    const long long budget = (m + 1) * (m + 1) * (m + 1);

    SwapSequence seq;
    seq.initial = net;
    FinancialNetwork cur = net;
    long long steps = 0;
    for (;;) {
        std::optional<DebtSwap> chosen;
        SwapClassification chosenCls;
        for (const DebtSwap& s : enumerate_swaps(cur)) {
            SwapClassification cls = classify_swap(cur, s);
            if (!cls.semiPositive || !(cls.assetDeltas[v] > 0)) continue;
            if (tieBreak == TieBreak::LexSmallest) {
                chosen = s;
                chosenCls = std::move(cls);
                break;
            }
            if (!chosen || cls.assetDeltas[v] > chosenCls.assetDeltas[v]) {
                chosen = s;
                chosenCls = std::move(cls);
            }
        }
        if (!chosen) break;
        require(steps < budget, Errc::StepBudgetExceeded,
                "v-improving run exceeded its step budget");
        detail::record_step(cur, seq, *chosen, std::move(chosenCls));
        ++steps;
    }
    return {std::move(cur), std::move(seq)};
}

// ---------------------------------------------------------------------------
// Staged semi-positive scheduler.
//
// Prefers saturating, non-active and semi-active swaps (each of which ends
// any running phase of fully-active extension swaps); fully-active swaps are
// executed in stages of non-decreasing depth of the non-profiting creditor.
// Before every fully-active swap the network must offer sufficient residual
// headroom and respect the active in-degree limit.
// ---------------------------------------------------------------------------
inline std::pair<FinancialNetwork, SwapSequence> run_staged_semiswap(
    const FinancialNetwork& net, int maxActiveIndegree) {
    require(net.all_edge_ranking(), Errc::NotEdgeRanking,
            "the staged scheduler requires edge-ranking rules");
    require(maxActiveIndegree >= 1, Errc::PreconditionViolated,
            "the active in-degree limit must be positive");
    const long long m = net.edge_count();
    const long long n = net.bank_count();
    const long long budget = (m + 1) * (m + 1) * (m + 1) * (n + 1);

    SwapSequence seq;
    seq.initial = net;
    FinancialNetwork cur = net;
    long long steps = 0;
    bool inPhase = false;
    int stageFloor = 0;
    for (;;) {
        ClearingState state = clear(cur);

        std::optional<DebtSwap> phaseEnder;      // saturating / non-active / semi-active
        SwapClassification phaseEnderCls;
        std::optional<DebtSwap> chosenActive;    // fully-active with minimal depth
        SwapClassification chosenActiveCls;
        int chosenDepth = -1;
        std::optional<ActiveForest> forest;

        for (const DebtSwap& s : enumerate_swaps(cur)) {
            SwapClassification cls = classify_swap(cur, s);
            if (!cls.semiPositive) continue;
            const bool fullyActive = cls.kind == SwapKind::Extension &&
                                     cls.activity == ExtensionActivity::FullyActive;
            if (!fullyActive) {
                phaseEnder = s;
                phaseEnderCls = std::move(cls);
                break;  // lexicographically first already
            }
            if (!forest) forest = active_forest(cur, state);
            const BankId w = cls.deltaV1 == 0 ? cur.edge(s.e1).creditor
                                              : cur.edge(s.e2).creditor;
            const int depth = forest->depth[w];
            if (!chosenActive || depth < chosenDepth) {
                chosenActive = s;
                chosenActiveCls = std::move(cls);
                chosenDepth = depth;
            }
        }

        if (!phaseEnder && !chosenActive) break;
        require(steps < budget, Errc::StepBudgetExceeded,
                "staged run exceeded its step budget");

        if (phaseEnder) {
            inPhase = false;
            stageFloor = 0;
            detail::record_step(cur, seq, *phaseEnder, std::move(phaseEnderCls));
        } else {
            if (inPhase)
                require(chosenDepth >= stageFloor, Errc::BoundViolated,
                        "stage depth regressed within a phase");
            stageFloor = chosenDepth;
            inPhase = true;
            require(has_sufficient_residuals(cur, state), Errc::PreconditionViolated,
                    "insufficient residual headroom for the pending active swaps");
            std::vector<int> activeIndegree(cur.bank_count(), 0);
            for (BankId b = 0; b < cur.bank_count(); ++b)
                if (forest->activeEdge[b]) ++activeIndegree[forest->parent[b]];
            for (BankId b = 0; b < cur.bank_count(); ++b)
                require(activeIndegree[b] <= maxActiveIndegree, Errc::PreconditionViolated,
                        "active in-degree of '" + cur.bank(b).name + "' exceeds the limit");
            detail::record_step(cur, seq, *chosenActive, std::move(chosenActiveCls));
        }
        ++steps;
    }
    return {std::move(cur), std::move(seq)};
}

// ---------------------------------------------------------------------------
// Local search for v's assets over arbitrary valid swaps.
// ---------------------------------------------------------------------------
enum class LocalSearchStatus { LocalOptimum, BudgetExhausted };

struct LocalSearchResult {
    FinancialNetwork network;
    SwapSequence sequence;
    LocalSearchStatus status = LocalSearchStatus::LocalOptimum;
};

// First-improvement local search: applies the lexicographically first swap
// (not necessarily semi-positive) that strictly raises v's cleared assets,
// for at most maxSteps steps.
inline LocalSearchResult run_local_search_maxassets(const FinancialNetwork& net, BankId v,
                                                    long long maxSteps) {
    require(maxSteps >= 0, Errc::PreconditionViolated, "maxSteps must be non-negative");
    LocalSearchResult result;
    result.sequence.initial = net;
    FinancialNetwork cur = net;

    auto firstImproving = [&](const FinancialNetwork& in)
        -> std::optional<std::pair<DebtSwap, SwapClassification>> {
        for (const DebtSwap& s : enumerate_swaps(in)) {
            SwapClassification cls = classify_swap(in, s);
            if (cls.assetDeltas[v] > 0) return std::make_pair(s, std::move(cls));
        }
        return std::nullopt;
    };

    for (long long step = 0; step < maxSteps; ++step) {
        auto found = firstImproving(cur);
        if (!found) {
            result.network = std::move(cur);
            result.status = LocalSearchStatus::LocalOptimum;
            return result;
        }
        detail::record_step(cur, result.sequence, found->first, std::move(found->second));
    }
    result.status = firstImproving(cur) ? LocalSearchStatus::BudgetExhausted
                                        : LocalSearchStatus::LocalOptimum;
    result.network = std::move(cur);
    return result;
}

// ---------------------------------------------------------------------------
// Accounting: periods, phases, and the structural step bounds.
// ---------------------------------------------------------------------------

// Periods are maximal runs of consecutive extension steps; phases are maximal
// runs of consecutive fully-active extension steps.  Ranges are half-open
// step-index intervals.
struct SequenceAccounting {
    long long saturatingCount = 0;
    std::vector<std::pair<int, int>> periods;
    std::vector<std::pair<int, int>> phases;
    // (period index, non-profiting creditor name) -> number of non-active and
    // semi-active extension steps charged to that creditor in that period.
    std::map<std::pair<int, std::string>, long long> nonFullyActivePerPeriodCreditor;
};

// Tallies a semi-positive sequence and enforces the structural bounds: at
// most m saturating steps overall, and per period at most 2 * indegree(w)
// non/semi-active extension steps whose non-profiting creditor is w.
inline SequenceAccounting account(const SwapSequence& seq) {
    const FinancialNetwork& net = seq.initial;
    const long long m = net.edge_count();
    SequenceAccounting acc;

    auto flush = [](std::vector<std::pair<int, int>>& ranges, int& start, int end) {
        if (start >= 0) ranges.push_back({start, end});
        start = -1;
    };

    int periodStart = -1;
    int phaseStart = -1;
    for (int i = 0; i < static_cast<int>(seq.steps.size()); ++i) {
        const SequenceStep& step = seq.steps[i];
        const SwapClassification& cls = step.classification;
        require(cls.semiPositive, Errc::PreconditionViolated,
                "accounting requires semi-positive steps throughout");

        if (cls.kind == SwapKind::Saturating) {
            ++acc.saturatingCount;
            require(acc.saturatingCount <= m, Errc::BoundViolated,
                    "more saturating steps than edges");
            flush(acc.periods, periodStart, i);
            flush(acc.phases, phaseStart, i);
            continue;
        }

        if (periodStart < 0) periodStart = i;
        if (cls.activity == ExtensionActivity::FullyActive) {
            if (phaseStart < 0) phaseStart = i;
        } else {
            flush(acc.phases, phaseStart, i);
            // The per-creditor charge bound only covers ranking networks;
            // extension steps without an activity label (proportional
            // participants) end phases but charge nobody.
            if (cls.activity == ExtensionActivity::NotApplicable) continue;
            const std::string& w =
                cls.deltaV1 == 0 ? step.spec.creditor1 : step.spec.creditor2;
            const int periodIndex = static_cast<int>(acc.periods.size());
            long long& count = acc.nonFullyActivePerPeriodCreditor[{periodIndex, w}];
            ++count;
            const long long indeg = net.in_edges(net.bank_id(w)).size();
            require(count <= 2 * indeg, Errc::BoundViolated,
                    "period charges more non/semi-active steps to '" + w +
                        "' than twice its in-degree");
        }
    }
    flush(acc.periods, periodStart, static_cast<int>(seq.steps.size()));
    flush(acc.phases, phaseStart, static_cast<int>(seq.steps.size()));
    return acc;
}

// ---------------------------------------------------------------------------
// Exponential improving schedule.
//
// For the proportional family of gen_exponential(n), emits the v-improving
// sequence of length 2^{n-4} - 1 that rebuilds the payment cycle through ever
// larger subsets of the u-banks: after step k the cycle passes exactly
// through the u-banks of the set bits of k, and v's assets have grown to 2k.
// Returns the built instance together with the schedule that replays from it.
// ---------------------------------------------------------------------------
inline std::pair<FinancialNetwork, SwapSequence> exponential_schedule(int n) {
    GadgetInstance g = gen_exponential(n);
    const BankId v = g.focusBank;
    FinancialNetwork cur = g.network;

    SwapSequence seq;
    seq.initial = cur;
    const BankId w[2] = {cur.bank_id("w0"), cur.bank_id("w1")};
    int cycleW = 0;  // which w currently sits on the payment cycle
    const long long total = (1LL << (n - 4)) - 1;
    for (long long k = 1; k <= total; ++k) {
        int j = 0;  // lowest zero bit of k-1: u_j enters the cycle
        while ((k - 1) & (1LL << j)) ++j;
        const BankId uj = cur.bank_id("u" + std::to_string(j));
        const BankId pred =
            j == 0 ? w[cycleW] : cur.bank_id("u" + std::to_string(j - 1));
        const DebtSwap s{cur.out_edges(uj).front(), cur.out_edges(pred).front()};

        SwapClassification cls = classify_swap(cur, s);
        require(cls.semiPositive && cls.assetDeltas[v] > 0, Errc::ClassificationMismatch,
                "scheduled swap " + std::to_string(k) + " is not v-improving");
        detail::record_step(cur, seq, s, std::move(cls));
        cycleW ^= 1;
    }
    return {std::move(g.network), std::move(seq)};
}

}  // namespace debtswap
