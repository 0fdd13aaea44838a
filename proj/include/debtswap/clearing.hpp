// Exact clearing of a financial network: the greatest fixed point of the
// payment operator induced by the per-bank allocation rules.
//
// Algorithm: decreasing Kleene iteration from the all-liabilities vector,
// accelerated by an exact affine solve.  Each round freezes the "structure"
// of the current iterate (which banks are insolvent; for edge-ranking banks,
// which edge is the first unpaid one), expresses every payment as an affine
// function of the insolvent banks' total assets, solves the resulting linear
// system with rational Gaussian elimination, and accepts the solution iff it
// is exactly feasible.  A feasible solution is always the greatest fixed
// point: every feasible vector is a fixed point and hence dominated by it,
// and a frozen structure that disagrees with the greatest fixed point forces
// some bank to overpay, which the feasibility check rejects.  Iterates stay
// above the greatest fixed point, so the frozen structure stabilises to the
// right one after finitely many rounds and the solve then succeeds.
#pragma once

#include <optional>
#include <vector>

#include "errors.hpp"
#include "network.hpp"
#include "rational.hpp"

namespace debtswap {

struct ClearingState {
    std::vector<Money> payments;     // per edge id
    std::vector<Money> totalAssets;  // per bank: external assets + inflow
    std::vector<bool> saturated;     // per edge: payment equals liability
    std::vector<bool> insolvent;     // per bank: total assets below total liabilities
};

// Payments bank v makes on each of its out-edges given available budget,
// written into `out` (indexed by edge id).
inline void allocate(const FinancialNetwork& net, BankId v, const Money& budget,
                     std::vector<Money>& out) {
    const AllocationRule& r = net.rule(v);
    if (r.type == RuleType::EdgeRanking) {
        Money remaining = budget;
        for (EdgeId e : r.ranking) {
            Money pay = std::min(remaining, net.edge(e).liability);
            out[e] = pay;
            remaining -= pay;
        }
    } else {
        Money total = net.total_liability(v);
        if (total == 0) return;  // nothing owed
        if (budget >= total) {
            for (EdgeId e : net.out_edges(v)) out[e] = net.edge(e).liability;
        } else {
            for (EdgeId e : net.out_edges(v))
                out[e] = budget * net.edge(e).liability / total;
        }
    }
}

// Total assets of every bank under a payment vector.
inline std::vector<Money> assets_under(const FinancialNetwork& net,
                                       const std::vector<Money>& payments) {
    std::vector<Money> assets(net.bank_count());
    for (BankId v = 0; v < net.bank_count(); ++v) assets[v] = net.bank(v).externalAssets;
    for (EdgeId e = 0; e < net.edge_count(); ++e)
        assets[net.edge(e).creditor] += payments[e];
    return assets;
}

// One application of the payment operator: each bank re-allocates its budget.
inline std::vector<Money> payment_step(const FinancialNetwork& net,
                                       const std::vector<Money>& payments) {
    std::vector<Money> assets = assets_under(net, payments);
    std::vector<Money> next(net.edge_count(), Money(0));
    for (BankId v = 0; v < net.bank_count(); ++v) allocate(net, v, assets[v], next);
    return next;
}

// A payment vector is feasible iff it lies in [0, l] edge-wise and every bank
// pays exactly what its allocation rule prescribes for its induced assets.
inline bool is_feasible(const FinancialNetwork& net, const std::vector<Money>& payments) {
    if (static_cast<int>(payments.size()) != net.edge_count()) return false;
    for (EdgeId e = 0; e < net.edge_count(); ++e)
        if (payments[e] < 0 || payments[e] > net.edge(e).liability) return false;
    return payment_step(net, payments) == payments;
}

namespace detail {

// Frozen per-round structure: the insolvent set and, for each insolvent
// edge-ranking bank, the index (within its ranking) of the first edge the
// current iterate does not pay in full.
struct ClearingStructure {
    std::vector<char> insolvent;
    std::vector<int> firstUnpaid;  // ranking index; -1 when unused
};

inline ClearingStructure freeze_structure(const FinancialNetwork& net,
                                          const std::vector<Money>& payments) {
    ClearingStructure s;
    s.insolvent.assign(net.bank_count(), 0);
    s.firstUnpaid.assign(net.bank_count(), -1);
    std::vector<Money> assets = assets_under(net, payments);
    for (BankId v = 0; v < net.bank_count(); ++v) {
        if (assets[v] < net.total_liability(v)) {
            s.insolvent[v] = 1;
            const AllocationRule& r = net.rule(v);
            if (r.type == RuleType::EdgeRanking) {
                Money remaining = assets[v];
                int idx = 0;
                for (EdgeId e : r.ranking) {
                    if (remaining < net.edge(e).liability) break;
                    remaining -= net.edge(e).liability;
                    ++idx;
                }
                // An insolvent bank cannot pay everything in full.
                require(idx < static_cast<int>(r.ranking.size()), Errc::Internal,
                        "insolvent bank with fully paid ranking");
                s.firstUnpaid[v] = idx;
            }
        }
    }
    return s;
}

// Solve the affine system induced by a frozen structure.  Unknowns are the
// total assets of insolvent banks; solvent banks pay everything in full.
// Returns the full payment vector, or nullopt when the system is singular.
inline std::optional<std::vector<Money>> solve_structure(const FinancialNetwork& net,
                                                         const ClearingStructure& s) {
    std::vector<int> unknown(net.bank_count(), -1);
    std::vector<BankId> banks;
    for (BankId v = 0; v < net.bank_count(); ++v)
        if (s.insolvent[v]) {
            unknown[v] = static_cast<int>(banks.size());
            banks.push_back(v);
        }
    int k = static_cast<int>(banks.size());

    // Payment on edge e as an affine function  coeff * b_{debtor} + constant.
    auto payment_form = [&](EdgeId e) -> std::pair<Money, Money> {  // (coeff, const)
        const Edge& ed = net.edge(e);
        BankId u = ed.debtor;
        if (!s.insolvent[u]) return {0, ed.liability};
        const AllocationRule& r = net.rule(u);
        if (r.type == RuleType::Proportional) {
            Money total = net.total_liability(u);
            require(total > 0, Errc::Internal, "insolvent bank owes nothing");
            return {ed.liability / total, 0};
        }
        int pos = 0;
        Money prefix = 0;
        for (EdgeId re : r.ranking) {
            if (re == e) break;
            prefix += net.edge(re).liability;
            ++pos;
        }
        int cut = s.firstUnpaid[u];
        if (pos < cut) return {0, ed.liability};
        if (pos == cut) return {1, -prefix};
        return {0, 0};
    };

    // Row for insolvent v:  b_v - sum(coeff_e * b_{debtor(e)}) = externals + consts.
    std::vector<std::vector<Money>> A(k, std::vector<Money>(k, Money(0)));
    std::vector<Money> rhs(k, Money(0));
    for (int i = 0; i < k; ++i) {
        BankId v = banks[i];
        A[i][i] = 1;
        rhs[i] = net.bank(v).externalAssets;
        for (EdgeId e : net.in_edges(v)) {
            auto [coeff, cnst] = payment_form(e);
            rhs[i] += cnst;
            if (coeff != 0) A[i][unknown[net.edge(e).debtor]] -= coeff;
        }
    }

    // Exact Gaussian elimination.
    for (int col = 0; col < k; ++col) {
        int pivot = -1;
        for (int row = col; row < k; ++row)
            if (A[row][col] != 0) { pivot = row; break; }
        if (pivot < 0) return std::nullopt;  // singular: structure not yet settled
        std::swap(A[col], A[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        for (int row = col + 1; row < k; ++row) {
            if (A[row][col] == 0) continue;
            Money factor = A[row][col] / A[col][col];
            for (int c2 = col; c2 < k; ++c2) A[row][c2] -= factor * A[col][c2];
            rhs[row] -= factor * rhs[col];
        }
    }
    std::vector<Money> b(k);
    for (int row = k - 1; row >= 0; --row) {
        Money acc = rhs[row];
        for (int c2 = row + 1; c2 < k; ++c2) acc -= A[row][c2] * b[c2];
        b[row] = acc / A[row][row];
    }

    // Reconstruct the payment vector the structure prescribes.
    std::vector<Money> p(net.edge_count(), Money(0));
    for (EdgeId e = 0; e < net.edge_count(); ++e) {
        auto [coeff, cnst] = payment_form(e);
        p[e] = cnst;
        if (coeff != 0) p[e] += coeff * b[unknown[net.edge(e).debtor]];
    }
    return p;
}

inline ClearingState make_state(const FinancialNetwork& net, std::vector<Money> payments) {
    ClearingState st;
    st.totalAssets = assets_under(net, payments);
    st.payments = std::move(payments);
    st.saturated.resize(net.edge_count());
    for (EdgeId e = 0; e < net.edge_count(); ++e)
        st.saturated[e] = (st.payments[e] == net.edge(e).liability);
    st.insolvent.resize(net.bank_count());
    for (BankId v = 0; v < net.bank_count(); ++v)
        st.insolvent[v] = (st.totalAssets[v] < net.total_liability(v));
    return st;
}

}  // namespace detail

// Greatest fixed point of the payment operator, computed exactly.
inline ClearingState clear(const FinancialNetwork& net) {
    {
        auto problems = net.validate();
        if (!problems.empty()) raise(Errc::InvalidNetwork, problems.front());
    }
    std::vector<Money> p(net.edge_count());
    Money totalLiab = 0;
    for (EdgeId e = 0; e < net.edge_count(); ++e) {
        p[e] = net.edge(e).liability;
        totalLiab += net.edge(e).liability;
    }
    // Round budget: generous safety valve, never reached in normal operation.
    Integer cap = Integer(10) * std::max(1, net.bank_count()) *
                  ((numerator(totalLiab) + denominator(totalLiab) - 1) / denominator(totalLiab) + 1);
    for (Integer round = 0; round < cap; ++round) {
        std::vector<Money> next = payment_step(net, p);
        if (next == p) return detail::make_state(net, std::move(p));
        auto structure = detail::freeze_structure(net, next);
        if (auto solved = detail::solve_structure(net, structure)) {
            if (is_feasible(net, *solved))
                return detail::make_state(net, std::move(*solved));
        }
        p = std::move(next);
    }
    raise(Errc::IterationLimit, "clearing did not converge within its round budget");
}

// Reference implementation for small integral edge-ranking networks: enumerate
// every integer payment vector in the box [0, l], keep the feasible ones, and
// return their greatest element.  Exponential; guarded by a candidate budget.
inline ClearingState brute_force_clear(const FinancialNetwork& net,
                                       long long maxCandidates = 1000000) {
    require(net.all_edge_ranking(), Errc::NotEdgeRanking,
            "exhaustive clearing supports edge-ranking rules only");
    require(net.is_integral(), Errc::NotIntegral,
            "exhaustive clearing requires integer liabilities and assets");
    long long count = 1;
    std::vector<long long> caps(net.edge_count());
    for (EdgeId e = 0; e < net.edge_count(); ++e) {
        caps[e] = static_cast<long long>(numerator(net.edge(e).liability));
        require(count <= maxCandidates / (caps[e] + 1), Errc::EnumerationTooLarge,
                "payment grid larger than the enumeration budget");
        count *= caps[e] + 1;
    }
    std::vector<Money> best;
    bool found = false;
    std::vector<long long> cur(net.edge_count(), 0);
    std::vector<Money> candidate(net.edge_count());
    while (true) {
        for (EdgeId e = 0; e < net.edge_count(); ++e) candidate[e] = cur[e];
        if (is_feasible(net, candidate)) {
            if (!found) {
                best = candidate;
                found = true;
            } else {
                for (EdgeId e = 0; e < net.edge_count(); ++e)
                    best[e] = std::max(best[e], candidate[e]);
            }
        }
        int i = 0;
        for (; i < net.edge_count(); ++i) {
            if (cur[i] < caps[i]) { ++cur[i]; break; }
            cur[i] = 0;
        }
        if (i == net.edge_count()) break;
    }
    require(found, Errc::Internal, "no feasible payment vector found");
    require(is_feasible(net, best), Errc::Internal,
            "join of feasible payment vectors is not feasible");
    return detail::make_state(net, std::move(best));
}

}  // namespace debtswap
