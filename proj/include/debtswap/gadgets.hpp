// Generators for the benchmark families: networks whose swap dynamics encode
// Max-2-SAT, Set Cover, Independent Set, Partition, 3-Partition, a SAT-style
// connectivity question, and a proportional family with an exponentially long
// improving schedule.
//
// Every generated initial network clears rule-independently (each bank with
// more than one outgoing edge starts out either fully solvent or paying
// nothing), so the choice of ranking order never influences the starting
// state.  All generators emit edge-ranking rules in insertion order, except
// gen_exponential which is a proportional-rule family by design.
#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "network.hpp"

namespace debtswap {

// A generated network together with the bank whose cleared assets carry the
// encoded objective (`focusBank`), name-to-id shortcuts for the structural
// banks, and the numeric parameters the construction chose.
struct GadgetInstance {
    FinancialNetwork network;
    BankId focusBank = -1;
    std::map<std::string, BankId> auxiliaryBanks;
    std::map<std::string, Money> parameters;
};

namespace detail {

inline Integer pow2(int e) {
    Integer r = 1;
    return r << e;
}

// Smallest power of two strictly greater than x (x >= 0).
inline Integer next_pow2_above(const Integer& x) {
    Integer p = 1;
    while (p <= x) p <<= 1;
    return p;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Exponential schedule family (proportional rules).
//
// Banks: v, w0, w1, u0..u_{n-4}.  A two-cycle v<->w0 plus the path
// v, w1, u0, u1, ..., u_{n-4}; every liability is 2^n and u_i holds 2^i in
// external assets.  Rebuilding the cycle through ever larger subsets of the
// u-banks admits a v-improving swap sequence of length 2^{n-4} - 1.
// ---------------------------------------------------------------------------
inline GadgetInstance gen_exponential(int n) {
    require(n >= 6, Errc::ValidationError, "n must be at least 6");
    GadgetInstance g;
    FinancialNetwork& net = g.network;
    const Money big = Money(detail::pow2(n));

    BankId v = net.add_bank("v", 0);
    BankId w0 = net.add_bank("w0", 0);
    BankId w1 = net.add_bank("w1", 0);
    std::vector<BankId> u;
    for (int i = 0; i <= n - 4; ++i)
        u.push_back(net.add_bank("u" + std::to_string(i), Money(detail::pow2(i))));

    net.add_edge(v, w0, big);
    net.add_edge(w0, v, big);
    net.add_edge(v, w1, big);
    net.add_edge(w1, u[0], big);
    for (int i = 0; i + 1 <= n - 4; ++i) net.add_edge(u[i], u[i + 1], big);

    for (BankId b = 0; b < net.bank_count(); ++b) net.set_proportional(b);

    g.focusBank = v;
    g.auxiliaryBanks = {{"v", v}, {"w0", w0}, {"w1", w1}};
    for (int i = 0; i <= n - 4; ++i) g.auxiliaryBanks["u" + std::to_string(i)] = u[i];
    g.parameters = {{"n", Money(n)}, {"liability", big}};
    return g;
}

// ---------------------------------------------------------------------------
// Max-2-SAT.
//
// Clauses are pairs of DIMACS-style literals (non-zero signed integers; the
// sign selects the polarity of 1-based variable |lit|) with a positive
// integral weight.
// ---------------------------------------------------------------------------
struct Max2SatClause {
    int lit1 = 0;
    int lit2 = 0;
    Money weight = 1;
};

namespace detail {

inline int max2sat_variable_count(const std::vector<Max2SatClause>& clauses) {
    int k = 0;
    for (const auto& cl : clauses) k = std::max({k, std::abs(cl.lit1), std::abs(cl.lit2)});
    return k;
}

inline void validate_max2sat(const std::vector<Max2SatClause>& clauses) {
    require(!clauses.empty(), Errc::ValidationError, "at least one clause required");
    for (std::size_t j = 0; j < clauses.size(); ++j) {
        const auto& cl = clauses[j];
        const std::string where = "clause " + std::to_string(j + 1);
        require(cl.lit1 != 0 && cl.lit2 != 0, Errc::ValidationError,
                where + ": literals must be non-zero");
        require(cl.lit1 != cl.lit2, Errc::ValidationError,
                where + ": duplicate literal");
        require(cl.lit1 != -cl.lit2, Errc::ValidationError,
                where + ": tautological clause");
        require(cl.weight > 0 && is_integral(cl.weight), Errc::ValidationError,
                where + ": weight must be a positive integer");
    }
}

}  // namespace detail

// Builds the Max-2-SAT gadget.  Bank x_i's selector payment feeds the literal
// bank of the chosen polarity, which in turn pays its clause banks; clause
// banks forward their weight to the focus bank v exactly when satisfied.  The
// emitted network encodes the all-false assignment; use assignment_network to
// flip variables.  v's cleared assets equal the satisfied clause weight.
inline GadgetInstance gen_max2sat(const std::vector<Max2SatClause>& clauses) {
    detail::validate_max2sat(clauses);
    const int k = detail::max2sat_variable_count(clauses);
    const int numClauses = static_cast<int>(clauses.size());

    // Literal values 2^{d-1} + 2i + polarity are pairwise distinct, exceed
    // every clause weight, and exceed the doubled clause count, so no clause
    // bank and no selector weight collides with any other weight class.
    Money maxWeight = 0;
    for (const auto& cl : clauses) maxWeight = std::max(maxWeight, cl.weight);
    int d = 1;
    while (!(Money(detail::pow2(d - 1)) > maxWeight &&
             detail::pow2(d - 1) > 2 * Integer(numClauses)))
        ++d;

    auto litValue = [&](int i0, bool positive) {
        return Money(detail::pow2(d - 1) + 2 * i0 + (positive ? 1 : 0));
    };

    // Selector budget: enough for the worst-case fan-out of a literal bank.
    std::map<int, int> occurrences;  // signed literal -> count
    for (const auto& cl : clauses) {
        ++occurrences[cl.lit1];
        ++occurrences[cl.lit2];
    }
    int maxOcc = 0;
    for (const auto& [lit, cnt] : occurrences) maxOcc = std::max(maxOcc, cnt);
    const int q = std::max(numClauses, maxOcc);

    GadgetInstance g;
    FinancialNetwork& net = g.network;
    auto remember = [&](const std::string& name, BankId id) {
        g.auxiliaryBanks[name] = id;
        return id;
    };

    std::vector<BankId> x(k), s(k), xt(k), xf(k);
    for (int i = 0; i < k; ++i) {
        const std::string base = "x" + std::to_string(i + 1);
        const Money mTrue = litValue(i, true);
        x[i] = remember(base, net.add_bank(base, Money(q) * mTrue));
        s[i] = remember("s" + std::to_string(i + 1),
                        net.add_bank("s" + std::to_string(i + 1), 0));
        xt[i] = remember(base + "T", net.add_bank(base + "T", 0));
        xf[i] = remember(base + "F", net.add_bank(base + "F", 0));
    }
    std::vector<BankId> clauseBank(numClauses);
    for (int j = 0; j < numClauses; ++j) {
        const std::string name = "c" + std::to_string(j + 1);
        clauseBank[j] = remember(name, net.add_bank(name, 0));
    }
    BankId v = remember("v", net.add_bank("v", 0));

    for (int j = 0; j < numClauses; ++j) {
        for (int lit : {clauses[j].lit1, clauses[j].lit2}) {
            const int i0 = std::abs(lit) - 1;
            const bool positive = lit > 0;
            net.add_edge(positive ? xt[i0] : xf[i0], clauseBank[j], litValue(i0, positive));
        }
        net.add_edge(clauseBank[j], v, clauses[j].weight);
    }
    for (int i = 0; i < k; ++i) {
        const Money selector = Money(q) * litValue(i, true);
        net.add_edge(x[i], xf[i], selector);  // all-false assignment
        net.add_edge(s[i], xt[i], selector);
    }

    g.focusBank = v;
    g.parameters = {{"variables", Money(k)},
                    {"clauses", Money(numClauses)},
                    {"q", Money(q)},
                    {"bit", Money(detail::pow2(d - 1))}};
    return g;
}

// Network of the gadget with the selector edges pointed per `assignment`
// (index i-1 holds variable i).  Flipping a variable is itself a debt swap of
// the two selector edges, so any two assignment networks are swap-connected.
inline FinancialNetwork assignment_network(const GadgetInstance& gadget,
                                           const std::vector<bool>& assignment) {
    const int k = static_cast<int>(
        Integer(numerator(gadget.parameters.at("variables"))).convert_to<long long>());
    require(static_cast<int>(assignment.size()) == k, Errc::ValidationError,
            "assignment size must match the variable count");
    FinancialNetwork net = gadget.network;
    for (int i = 0; i < k; ++i) {
        const std::string idx = std::to_string(i + 1);
        BankId xi = net.bank_id("x" + idx);
        BankId si = net.bank_id("s" + idx);
        BankId want = net.bank_id("x" + idx + (assignment[i] ? "T" : "F"));
        EdgeId ex = net.out_edges(xi).front();
        EdgeId es = net.out_edges(si).front();
        if (net.edge(ex).creditor != want) net.exchange_creditors(ex, es);
    }
    return net;
}

namespace detail {

inline bool satisfies(const std::vector<Max2SatClause>& clauses,
                      const std::vector<bool>& assignment) {
    for (const auto& cl : clauses) {
        bool sat = false;
        for (int lit : {cl.lit1, cl.lit2}) {
            const bool value = assignment[std::abs(lit) - 1];
            if (lit > 0 ? value : !value) sat = true;
        }
        if (!sat) return false;
    }
    return true;
}

}  // namespace detail

// Connectivity question between two satisfying assignments: can the initial
// assignment network be transformed into the target one while the focus bank
// v never drops below `floor` cleared assets?  v's assets count satisfied
// clauses (all weights are 1), so the floor (= clause count) forces every
// intermediate assignment to satisfy the formula as well.
struct SatConnectivityInstance {
    GadgetInstance gadget;    // network holds the initial assignment
    FinancialNetwork target;  // the target assignment's network
    Money floor = 0;          // clause count
};

inline SatConnectivityInstance gen_sat_connectivity(
    const std::vector<std::pair<int, int>>& formula, const std::vector<bool>& initAssign,
    const std::vector<bool>& targetAssign) {
    std::vector<Max2SatClause> clauses;
    clauses.reserve(formula.size());
    for (const auto& [l1, l2] : formula) clauses.push_back(Max2SatClause{l1, l2, 1});

    SatConnectivityInstance inst;
    inst.gadget = gen_max2sat(clauses);
    const std::size_t k = static_cast<std::size_t>(
        Integer(numerator(inst.gadget.parameters.at("variables"))).convert_to<long long>());
    require(initAssign.size() == k && targetAssign.size() == k, Errc::ValidationError,
            "assignments must cover all " + std::to_string(k) + " variables");
    require(detail::satisfies(clauses, initAssign), Errc::ValidationError,
            "the initial assignment does not satisfy the formula");
    require(detail::satisfies(clauses, targetAssign), Errc::ValidationError,
            "the target assignment does not satisfy the formula");

    inst.target = assignment_network(inst.gadget, targetAssign);
    inst.gadget.network = assignment_network(inst.gadget, initAssign);
    inst.floor = Money(static_cast<int>(clauses.size()));
    return inst;
}

// ---------------------------------------------------------------------------
// Set Cover.
//
// Choosing which funded banks u_j feed their set bank S_j (rather than v
// directly) corresponds to choosing a sub-collection; v's cleared assets hit
// M*(numSets - c) + universeSize exactly for covering collections of size c.
// ---------------------------------------------------------------------------
inline GadgetInstance gen_setcover(int universeSize, const std::vector<std::vector<int>>& sets,
                                   int c, bool sumVariant = false) {
    const int numSets = static_cast<int>(sets.size());
    require(universeSize >= 1, Errc::ValidationError, "universe must be non-empty");
    require(c > 0 && c < numSets, Errc::ValidationError,
            "cover size must satisfy 0 < c < number of sets");
    std::set<int> unionOfSets;
    std::size_t maxSize = 1;
    for (std::size_t j = 0; j < sets.size(); ++j) {
        std::set<int> seen;
        for (int item : sets[j]) {
            require(item >= 1 && item <= universeSize, Errc::ValidationError,
                    "set " + std::to_string(j + 1) + ": item out of range");
            require(seen.insert(item).second, Errc::ValidationError,
                    "set " + std::to_string(j + 1) + ": duplicate item");
        }
        unionOfSets.insert(seen.begin(), seen.end());
        maxSize = std::max(maxSize, seen.size());
    }
    require(static_cast<int>(unionOfSets.size()) == universeSize, Errc::ValidationError,
            "the sets must cover the universe");

    // Distinct set weights M_j = 2^{d-1} + j above both the maximal set size
    // and the number of sets; M is a power of two large enough that a funded
    // set bank can pay all of its members in full.
    int d = 1;
    while (!(detail::pow2(d - 1) > Integer(maxSize) &&
             detail::pow2(d - 1) > Integer(numSets)))
        ++d;
    auto setWeight = [&](int j1) { return Money(detail::pow2(d - 1) + j1); };
    Integer maxOut = 1;
    for (int j = 0; j < numSets; ++j) {
        Integer out = Integer(sets[j].size()) * (detail::pow2(d - 1) + (j + 1));
        maxOut = std::max(maxOut, out);
    }
    const Money M = Money(detail::next_pow2_above(maxOut));

    GadgetInstance g;
    FinancialNetwork& net = g.network;
    auto remember = [&](const std::string& name, BankId id) {
        g.auxiliaryBanks[name] = id;
        return id;
    };

    BankId v = remember("v", net.add_bank("v", 0));
    std::vector<BankId> item(universeSize), setBank(numSets), funded(numSets), unfunded;
    for (int i = 0; i < universeSize; ++i) {
        const std::string name = "x" + std::to_string(i + 1);
        item[i] = remember(name, net.add_bank(name, 0));
    }
    for (int j = 0; j < numSets; ++j) {
        const std::string name = "S" + std::to_string(j + 1);
        setBank[j] = remember(name, net.add_bank(name, 0));
    }
    for (int j = 0; j < numSets; ++j) {
        const std::string name = "u" + std::to_string(j + 1);
        funded[j] = remember(name, net.add_bank(name, M));
    }
    for (int h = 0; h < numSets - c; ++h) {
        const std::string name = "w" + std::to_string(h + 1);
        unfunded.push_back(remember(name, net.add_bank(name, 0)));
    }

    for (int j = 0; j < numSets; ++j)
        for (int i : sets[j]) net.add_edge(setBank[j], item[i - 1], setWeight(j + 1));
    for (int i = 0; i < universeSize; ++i) net.add_edge(item[i], v, 1);
    // Initial matching: the full collection (every set bank fed), with the
    // unfunded banks pointing at v.
    for (int j = 0; j < numSets; ++j) net.add_edge(funded[j], setBank[j], M);
    for (BankId w : unfunded) net.add_edge(w, v, M);

    g.focusBank = v;
    g.parameters = {{"universe", Money(universeSize)},
                    {"numSets", Money(numSets)},
                    {"c", Money(c)},
                    {"M", M}};
    for (int j = 0; j < numSets; ++j)
        g.parameters["M" + std::to_string(j + 1)] = setWeight(j + 1);

    if (sumVariant) {
        // Amplifier path from v so that the summed-assets objective is
        // dominated by v's own assets: distinct weights above every existing
        // class.
        Integer b = std::max(Integer(numerator(M)), Integer(3 * (universeSize + numSets)));
        const long long pathLen = b.convert_to<long long>();
        BankId prev = v;
        Money w = Money(b + 1);
        for (long long i = 1; i <= pathLen; ++i) {
            BankId nb = net.add_bank("b" + std::to_string(i), 0);
            net.add_edge(prev, nb, w);
            w += 1;
            prev = nb;
        }
        g.parameters["amplifier"] = Money(b);
    }
    return g;
}

// Network in which exactly the sets of `collection` (1-based indices) are fed
// by their funded bank; the remaining funded banks pay v and the unfunded
// banks fill in for the uncovered set banks.  Needs |collection| >= c so that
// the unfunded banks suffice.
inline FinancialNetwork setcover_selection_network(const GadgetInstance& gadget,
                                                   const std::set<int>& collection) {
    const int numSets = static_cast<int>(
        Integer(numerator(gadget.parameters.at("numSets"))).convert_to<long long>());
    const int c = static_cast<int>(
        Integer(numerator(gadget.parameters.at("c"))).convert_to<long long>());
    for (int j : collection)
        require(j >= 1 && j <= numSets, Errc::ValidationError, "set index out of range");
    require(static_cast<int>(collection.size()) >= c, Errc::ValidationError,
            "collection smaller than the cover size c");

    FinancialNetwork net = gadget.network;
    int h = 0;  // next unfunded bank to repoint
    for (int j = 1; j <= numSets; ++j) {
        if (collection.count(j)) continue;
        // S_j is dropped from the collection: the next unfunded bank takes
        // over feeding S_j and the funded bank u_j pays v instead.  With
        // |collection| >= c there are enough unfunded banks for all drops.
        BankId uj = net.bank_id("u" + std::to_string(j));
        BankId wb = net.bank_id("w" + std::to_string(++h));
        net.exchange_creditors(net.out_edges(uj).front(), net.out_edges(wb).front());
    }
    return net;
}

// ---------------------------------------------------------------------------
// Independent Set.
//
// Funding node bank v_i (by swapping x_i's stub in place of y_i's) lets it pay
// its incident edge banks and one unit to v; a doubly funded edge bank starves
// u, which blocks the second funding swap from being semi-positive.
// ---------------------------------------------------------------------------
inline GadgetInstance gen_independent_set(int nodeCount,
                                          const std::vector<std::pair<int, int>>& edges,
                                          bool sumVariant = false) {
    require(nodeCount >= 1, Errc::ValidationError, "graph must have at least one node");
    std::set<std::pair<int, int>> norm;
    for (const auto& [a, b] : edges) {
        require(a >= 1 && a <= nodeCount && b >= 1 && b <= nodeCount, Errc::ValidationError,
                "edge endpoint out of range");
        require(a != b, Errc::ValidationError, "self-loops are not allowed");
        require(norm.insert({std::min(a, b), std::max(a, b)}).second, Errc::ValidationError,
                "duplicate edge");
    }
    std::vector<int> degree(nodeCount, 0);
    for (const auto& [a, b] : norm) {
        ++degree[a - 1];
        ++degree[b - 1];
    }

    GadgetInstance g;
    FinancialNetwork& net = g.network;
    auto remember = [&](const std::string& name, BankId id) {
        g.auxiliaryBanks[name] = id;
        return id;
    };

    BankId v = remember("v", net.add_bank("v", 0));
    BankId u = remember("u", net.add_bank("u", 0));
    std::vector<BankId> node(nodeCount), edgeBank, xbank(nodeCount), ybank(nodeCount);
    for (int i = 0; i < nodeCount; ++i) {
        const std::string name = "v" + std::to_string(i + 1);
        node[i] = remember(name, net.add_bank(name, 0));
    }
    int j = 0;
    for (const auto& [a, b] : norm) {
        (void)a;
        (void)b;
        const std::string name = "e" + std::to_string(++j);
        edgeBank.push_back(remember(name, net.add_bank(name, 0)));
    }
    for (int i = 0; i < nodeCount; ++i) {
        const std::string xi = "x" + std::to_string(i + 1);
        const std::string yi = "y" + std::to_string(i + 1);
        xbank[i] = remember(xi, net.add_bank(xi, 0));
        ybank[i] = remember(yi, net.add_bank(yi, Money(degree[i] + 1)));
    }

    j = 0;
    for (const auto& [a, b] : norm) {
        net.add_edge(node[a - 1], edgeBank[j], 1);
        net.add_edge(node[b - 1], edgeBank[j], 1);
        net.add_edge(edgeBank[j], u, 1);
        ++j;
    }
    for (int i = 0; i < nodeCount; ++i) net.add_edge(node[i], v, 1);
    net.add_edge(v, u, nodeCount);
    for (int i = 0; i < nodeCount; ++i) {
        net.add_edge(xbank[i], node[i], Money(degree[i] + 1));
        net.add_edge(ybank[i], u, Money(degree[i] + 1));
    }

    g.focusBank = v;
    g.parameters = {{"nodes", Money(nodeCount)},
                    {"graphEdges", Money(static_cast<int>(norm.size()))}};

    if (sumVariant) {
        const long long B = 6LL * nodeCount * nodeCount;
        BankId prev = v;
        for (long long i = 1; i <= B; ++i) {
            BankId nb = net.add_bank("w" + std::to_string(i), 0);
            net.add_edge(prev, nb, Money(B + i - 1));
            prev = nb;
        }
        net.add_edge(prev, u, Money(2 * B));
        g.parameters["amplifier"] = Money(B);
    }
    return g;
}

// Network with exactly the node banks of `selected` (1-based) funded.
inline FinancialNetwork independent_set_selection_network(const GadgetInstance& gadget,
                                                          const std::set<int>& selected) {
    const int nodeCount = static_cast<int>(
        Integer(numerator(gadget.parameters.at("nodes"))).convert_to<long long>());
    FinancialNetwork net = gadget.network;
    for (int i : selected) {
        require(i >= 1 && i <= nodeCount, Errc::ValidationError, "node index out of range");
        BankId xi = net.bank_id("x" + std::to_string(i));
        BankId yi = net.bank_id("y" + std::to_string(i));
        net.exchange_creditors(net.out_edges(xi).front(), net.out_edges(yi).front());
    }
    return net;
}

// ---------------------------------------------------------------------------
// Partition.
//
// Swapping (a_i, u) with an unfunded stub (s_j, v) redirects value a_i to v;
// v forwards everything up to A/2 back to u, so a swap stays semi-positive
// exactly while the redirected sum fits under A/2.
// ---------------------------------------------------------------------------
inline GadgetInstance gen_partition(const std::vector<Money>& values, bool sumVariant = false) {
    require(!values.empty(), Errc::ValidationError, "at least one value required");
    Money total = 0;
    Money maxValue = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        require(values[i] > 0 && is_integral(values[i]), Errc::ValidationError,
                "value " + std::to_string(i + 1) + " must be a positive integer");
        total += values[i];
        maxValue = std::max(maxValue, values[i]);
    }
    require(is_integral(total / 2), Errc::ValidationError, "total value must be even");

    const Money M = maxValue + 1;
    const Money half = total / 2;
    const int k = static_cast<int>(values.size());

    GadgetInstance g;
    FinancialNetwork& net = g.network;
    auto remember = [&](const std::string& name, BankId id) {
        g.auxiliaryBanks[name] = id;
        return id;
    };

    BankId v = remember("v", net.add_bank("v", 0));
    BankId u = remember("u", net.add_bank("u", 0));
    for (int i = 0; i < k; ++i) {
        BankId ai = remember("a" + std::to_string(i + 1),
                             net.add_bank("a" + std::to_string(i + 1), values[i]));
        net.add_edge(ai, u, M);
    }
    for (int i = 0; i < k; ++i) {
        BankId si = remember("s" + std::to_string(i + 1),
                             net.add_bank("s" + std::to_string(i + 1), 0));
        net.add_edge(si, v, M);
    }

    g.focusBank = v;
    g.parameters = {{"M", M}, {"total", total}, {"half", half}};

    if (sumVariant) {
        // Path from v to u instead of the direct edge; every bank on it
        // mirrors v's assets, so the summed objective is monotone in v's.
        Integer b = std::max(Integer(numerator(M)), Integer(numerator(total))) + 1;
        const long long pathLen = static_cast<long long>(values.size()) + 2;
        BankId prev = v;
        Money w = half;
        for (long long i = 1; i <= pathLen; ++i) {
            BankId nb = net.add_bank("p" + std::to_string(i), 0);
            net.add_edge(prev, nb, w);
            w = Money(b + i);
            prev = nb;
        }
        net.add_edge(prev, u, w);
        g.parameters["amplifier"] = Money(b);
    } else {
        net.add_edge(v, u, half);
    }
    return g;
}

// ---------------------------------------------------------------------------
// 3-Partition.
//
// v ranks alternating heavy (weight T) and light (weight 1) edges; unlocking
// the h-th light edge requires the preceding heavy edge to be saturated,
// which in turn requires redirected a-values summing to exactly T.  k must be
// divisible by 3 and every value must lie strictly between T/4 and T/2 with
// T = 3A/k.
// ---------------------------------------------------------------------------
inline GadgetInstance gen_3partition(const std::vector<Money>& values, int k) {
    require(static_cast<int>(values.size()) == k, Errc::ValidationError,
            "k must equal the number of values");
    require(k >= 3 && k % 3 == 0, Errc::ValidationError, "k must be a positive multiple of 3");
    Money total = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        require(values[i] > 0 && is_integral(values[i]), Errc::ValidationError,
                "value " + std::to_string(i + 1) + " must be a positive integer");
        total += values[i];
    }
    const Money T = total * 3 / k;
    for (std::size_t i = 0; i < values.size(); ++i)
        require(values[i] * 4 > T && values[i] * 2 < T, Errc::ValidationError,
                "value " + std::to_string(i + 1) + " violates the range (T/4, T/2)");

    const Money d = 2;
    const Money M = T + 1;
    const Money c = T + 2;
    const int l = 2 * k / 3 - 1;

    GadgetInstance g;
    FinancialNetwork& net = g.network;
    auto remember = [&](const std::string& name, BankId id) {
        g.auxiliaryBanks[name] = id;
        return id;
    };

    BankId r = remember("r", net.add_bank("r", 0));
    BankId v = remember("v", net.add_bank("v", 0));
    for (int i = 0; i < k; ++i) {
        BankId ai = remember("a" + std::to_string(i + 1),
                             net.add_bank("a" + std::to_string(i + 1), values[i]));
        net.add_edge(ai, r, c);
    }
    // v's ranked edges, heavy (odd positions) alternating with light ones.
    for (int h = 1; h <= l; ++h) {
        BankId uh = remember("u" + std::to_string(h),
                             net.add_bank("u" + std::to_string(h), 0));
        if (h % 2 == 1) {
            net.add_edge(v, uh, T);
            net.add_edge(uh, r, M);
        } else {
            net.add_edge(v, uh, 1);
            BankId sh = remember("s" + std::to_string(h),
                                 net.add_bank("s" + std::to_string(h), Money(1)));
            net.add_edge(sh, uh, d);
        }
    }
    for (int i = 0; i < k; ++i) {
        BankId bi = remember("b" + std::to_string(i + 1),
                             net.add_bank("b" + std::to_string(i + 1), 0));
        net.add_edge(bi, v, c);
    }
    for (int j = 0; j < (l - 1) / 2; ++j) {
        BankId zj = remember("z" + std::to_string(j + 1),
                             net.add_bank("z" + std::to_string(j + 1), 0));
        net.add_edge(zj, v, d);
    }

    g.focusBank = v;
    g.parameters = {{"T", T}, {"M", M}, {"c", c}, {"d", d},
                    {"total", total}, {"k", Money(k)}, {"l", Money(l)}};
    return g;
}

}  // namespace debtswap
