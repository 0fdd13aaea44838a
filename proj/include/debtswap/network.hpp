// Core model: banks, directed simple weighted liability graph, and per-bank
// payment allocation rules (edge-ranking or proportional).
//
// Edge ids are stable handles for a debtor's "slot": an edge keeps its id, its
// debtor and its position in the debtor's ranking for its whole life, even when
// a debt swap re-points its creditor.  Rankings therefore store edge ids.
#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace debtswap {

using BankId = int;
using EdgeId = int;

struct Bank {
    std::string name;
    Money externalAssets;
};

struct Edge {
    BankId debtor;
    BankId creditor;
    Money liability;
};

enum class RuleType { EdgeRanking, Proportional };

struct AllocationRule {
    RuleType type = RuleType::EdgeRanking;
    // Payment priority order over the bank's out-edges; empty for Proportional.
    std::vector<EdgeId> ranking;
};

class FinancialNetwork {
public:
    // --- construction -----------------------------------------------------

    BankId add_bank(const std::string& name, const Money& externalAssets = 0) {
        require(!name.empty(), Errc::InvalidNetwork, "bank name must be non-empty");
        require(!nameIndex_.count(name), Errc::InvalidNetwork,
                "duplicate bank name '" + name + "'");
        require(externalAssets >= 0, Errc::InvalidNetwork,
                "external assets of '" + name + "' must be non-negative");
        BankId id = static_cast<BankId>(banks_.size());
        banks_.push_back(Bank{name, externalAssets});
        rules_.push_back(AllocationRule{});
        outEdges_.emplace_back();
        inEdges_.emplace_back();
        nameIndex_[name] = id;
        return id;
    }

    // Liability 0 is tolerated (residual networks produce fully-paid edges);
    // document loading imposes strict positivity separately.
    EdgeId add_edge(BankId debtor, BankId creditor, const Money& liability) {
        check_bank(debtor);
        check_bank(creditor);
        require(debtor != creditor, Errc::InvalidNetwork,
                "self-loop at bank '" + banks_[debtor].name + "'");
        require(!pairs_.count({debtor, creditor}), Errc::InvalidNetwork,
                "duplicate edge " + banks_[debtor].name + " -> " + banks_[creditor].name);
        require(liability >= 0, Errc::InvalidNetwork, "negative liability");
        EdgeId id = static_cast<EdgeId>(edges_.size());
        edges_.push_back(Edge{debtor, creditor, liability});
        outEdges_[debtor].push_back(id);
        inEdges_[creditor].push_back(id);
        pairs_.insert({debtor, creditor});
        if (rules_[debtor].type == RuleType::EdgeRanking)
            rules_[debtor].ranking.push_back(id);  // default priority: insertion order
        return id;
    }

    EdgeId add_edge(const std::string& debtor, const std::string& creditor,
                    const Money& liability) {
        return add_edge(bank_id(debtor), bank_id(creditor), liability);
    }

    void set_proportional(BankId v) {
        check_bank(v);
        rules_[v].type = RuleType::Proportional;
        rules_[v].ranking.clear();
    }

    // Edge-ranking with default priority (edge insertion order).
    void set_edge_ranking(BankId v) {
        check_bank(v);
        rules_[v].type = RuleType::EdgeRanking;
        rules_[v].ranking = outEdges_[v];
    }

    // Edge-ranking with explicit priority; must be a permutation of v's out-edges.
    void set_ranking(BankId v, std::vector<EdgeId> order) {
        check_bank(v);
        auto sorted = order;
        std::sort(sorted.begin(), sorted.end());
        auto expect = outEdges_[v];
        std::sort(expect.begin(), expect.end());
        require(sorted == expect, Errc::InvalidNetwork,
                "ranking of '" + banks_[v].name + "' is not a permutation of its out-edges");
        rules_[v].type = RuleType::EdgeRanking;
        rules_[v].ranking = std::move(order);
    }

    // --- accessors ----------------------------------------------------------

    int bank_count() const { return static_cast<int>(banks_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const Bank& bank(BankId v) const { check_bank(v); return banks_[v]; }
    const Edge& edge(EdgeId e) const { check_edge(e); return edges_[e]; }
    const AllocationRule& rule(BankId v) const { check_bank(v); return rules_[v]; }

    const std::vector<EdgeId>& out_edges(BankId v) const { check_bank(v); return outEdges_[v]; }
    const std::vector<EdgeId>& in_edges(BankId v) const { check_bank(v); return inEdges_[v]; }

    bool has_bank(const std::string& name) const { return nameIndex_.count(name) != 0; }

    BankId bank_id(const std::string& name) const {
        auto it = nameIndex_.find(name);
        require(it != nameIndex_.end(), Errc::NotFound, "no bank named '" + name + "'");
        return it->second;
    }

    bool has_edge(BankId debtor, BankId creditor) const {
        return pairs_.count({debtor, creditor}) != 0;
    }

    // Edge id for (debtor, creditor), if present.
    EdgeId edge_id(BankId debtor, BankId creditor) const {
        check_bank(debtor);
        for (EdgeId e : outEdges_[debtor])
            if (edges_[e].creditor == creditor) return e;
        raise(Errc::NotFound, "no edge " + banks_[debtor].name + " -> " + banks_[creditor].name);
    }

    Money total_liability(BankId v) const {
        check_bank(v);
        Money sum = 0;
        for (EdgeId e : outEdges_[v]) sum += edges_[e].liability;
        return sum;
    }

    void set_external_assets(BankId v, const Money& a) {
        check_bank(v);
        require(a >= 0, Errc::InvalidNetwork, "external assets must be non-negative");
        banks_[v].externalAssets = a;
    }

    void set_liability(EdgeId e, const Money& l) {
        check_edge(e);
        require(l >= 0, Errc::InvalidNetwork, "negative liability");
        edges_[e].liability = l;
    }

    // True iff every liability and every external-assets value is an integer.
    bool is_integral() const {
        for (const auto& b : banks_)
            if (!debtswap::is_integral(b.externalAssets)) return false;
        for (const auto& e : edges_)
            if (!debtswap::is_integral(e.liability)) return false;
        return true;
    }

    bool all_edge_ranking() const {
        for (const auto& r : rules_)
            if (r.type != RuleType::EdgeRanking) return false;
        return true;
    }

    // --- mutation used by debt swaps ---------------------------------------

    // Exchange the creditors of two edges, keeping the internal indexes in
    // step.  Callers are expected to have validated the swap; this only
    // guards the simple-graph invariant.
    void exchange_creditors(EdgeId e1, EdgeId e2) {
        check_edge(e1);
        check_edge(e2);
        Edge& a = edges_[e1];
        Edge& b = edges_[e2];
        require(a.debtor != b.creditor && b.debtor != a.creditor,
                Errc::Internal, "creditor exchange would create a self-loop");
        pairs_.erase({a.debtor, a.creditor});
        pairs_.erase({b.debtor, b.creditor});
        require(!pairs_.count({a.debtor, b.creditor}) && !pairs_.count({b.debtor, a.creditor}),
                Errc::Internal, "creditor exchange would create a parallel edge");
        detach_in(a.creditor, e1);
        detach_in(b.creditor, e2);
        std::swap(a.creditor, b.creditor);
        inEdges_[a.creditor].push_back(e1);
        inEdges_[b.creditor].push_back(e2);
        pairs_.insert({a.debtor, a.creditor});
        pairs_.insert({b.debtor, b.creditor});
    }

    // --- validation & comparison --------------------------------------------

    // Structural problems, empty if the network is well-formed.
    std::vector<std::string> validate() const {
        std::vector<std::string> problems;
        std::set<std::pair<BankId, BankId>> seen;
        for (EdgeId e = 0; e < edge_count(); ++e) {
            const Edge& ed = edges_[e];
            if (ed.debtor == ed.creditor)
                problems.push_back("self-loop at '" + banks_[ed.debtor].name + "'");
            if (!seen.insert({ed.debtor, ed.creditor}).second)
                problems.push_back("parallel edge " + banks_[ed.debtor].name + " -> " +
                                   banks_[ed.creditor].name);
            if (ed.liability < 0)
                problems.push_back("negative liability on edge " + std::to_string(e));
        }
        for (BankId v = 0; v < bank_count(); ++v) {
            if (banks_[v].externalAssets < 0)
                problems.push_back("negative external assets at '" + banks_[v].name + "'");
            if (rules_[v].type == RuleType::EdgeRanking) {
                auto sorted = rules_[v].ranking;
                std::sort(sorted.begin(), sorted.end());
                auto expect = outEdges_[v];
                std::sort(expect.begin(), expect.end());
                if (sorted != expect)
                    problems.push_back("ranking of '" + banks_[v].name +
                                       "' is not a permutation of its out-edges");
            }
        }
        return problems;
    }

    // Semantic equality: same bank names with the same assets and rules, same
    // liability edges (by bank name), and rankings that visit the same
    // creditors in the same order.  Edge ids and insertion order don't matter.
    friend bool operator==(const FinancialNetwork& lhs, const FinancialNetwork& rhs) {
        if (lhs.bank_count() != rhs.bank_count() || lhs.edge_count() != rhs.edge_count())
            return false;
        for (const auto& [name, lv] : lhs.nameIndex_) {
            auto it = rhs.nameIndex_.find(name);
            if (it == rhs.nameIndex_.end()) return false;
            BankId rv = it->second;
            if (lhs.banks_[lv].externalAssets != rhs.banks_[rv].externalAssets) return false;
            if (lhs.rules_[lv].type != rhs.rules_[rv].type) return false;
            if (lhs.rules_[lv].type == RuleType::EdgeRanking) {
                // Compare rankings as (creditor name, liability) sequences.
                const auto& lr = lhs.rules_[lv].ranking;
                const auto& rr = rhs.rules_[rv].ranking;
                if (lr.size() != rr.size()) return false;
                for (size_t i = 0; i < lr.size(); ++i) {
                    const Edge& le = lhs.edges_[lr[i]];
                    const Edge& re = rhs.edges_[rr[i]];
                    if (lhs.banks_[le.creditor].name != rhs.banks_[re.creditor].name) return false;
                    if (le.liability != re.liability) return false;
                }
            } else {
                // Proportional: out-edges as a multiset of (creditor, liability).
                auto key = [](const FinancialNetwork& net, BankId v) {
                    std::vector<std::pair<std::string, Money>> out;
                    for (EdgeId e : net.outEdges_[v])
                        out.emplace_back(net.banks_[net.edges_[e].creditor].name,
                                         net.edges_[e].liability);
                    std::sort(out.begin(), out.end());
                    return out;
                };
                if (key(lhs, lv) != key(rhs, rv)) return false;
            }
        }
        return true;
    }

    friend bool operator!=(const FinancialNetwork& lhs, const FinancialNetwork& rhs) {
        return !(lhs == rhs);
    }

private:
    void check_bank(BankId v) const {
        require(v >= 0 && v < bank_count(), Errc::NotFound,
                "bank id " + std::to_string(v) + " out of range");
    }
    void check_edge(EdgeId e) const {
        require(e >= 0 && e < edge_count(), Errc::NotFound,
                "edge id " + std::to_string(e) + " out of range");
    }
    void detach_in(BankId v, EdgeId e) {
        auto& list = inEdges_[v];
        auto it = std::find(list.begin(), list.end(), e);
        require(it != list.end(), Errc::Internal, "in-edge index out of step");
        list.erase(it);
    }

    std::vector<Bank> banks_;
    std::vector<Edge> edges_;
    std::vector<AllocationRule> rules_;
    std::vector<std::vector<EdgeId>> outEdges_;
    std::vector<std::vector<EdgeId>> inEdges_;
    std::map<std::string, BankId> nameIndex_;
    std::set<std::pair<BankId, BankId>> pairs_;
};

// Per-bank multisets of incoming and outgoing stub weights.  Two networks over
// the same banks can be rewired into one another by debt swaps only if their
// profiles agree, so this is the skeleton all swap dynamics preserve.
struct IncidenceProfile {
    std::vector<std::vector<Money>> inWeights;   // per bank, sorted
    std::vector<std::vector<Money>> outWeights;  // per bank, sorted

    friend bool operator==(const IncidenceProfile&, const IncidenceProfile&) = default;
};

inline IncidenceProfile incidence_profile(const FinancialNetwork& net) {
    IncidenceProfile prof;
    prof.inWeights.resize(net.bank_count());
    prof.outWeights.resize(net.bank_count());
    for (BankId v = 0; v < net.bank_count(); ++v) {
        for (EdgeId e : net.in_edges(v)) prof.inWeights[v].push_back(net.edge(e).liability);
        for (EdgeId e : net.out_edges(v)) prof.outWeights[v].push_back(net.edge(e).liability);
        std::sort(prof.inWeights[v].begin(), prof.inWeights[v].end());
        std::sort(prof.outWeights[v].begin(), prof.outWeights[v].end());
    }
    return prof;
}

inline std::vector<std::string> validate(const FinancialNetwork& net) { return net.validate(); }

inline Money total_liabilities(const FinancialNetwork& net, BankId v) {
    return net.total_liability(v);
}

}  // namespace debtswap
