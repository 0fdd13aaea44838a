#include <catch2/catch_amalgamated.hpp>

#include <set>

#include <debtswap/dynamics.hpp>
#include <debtswap/gadgets.hpp>
#include <debtswap/reach.hpp>

#include "support/oracles.hpp"

using namespace debtswap;

namespace {

// Clearing payments must not depend on the allocation rules: the generated
// initial networks put every bank in a pay-nothing-or-everything position.
void check_rule_invariance(const FinancialNetwork& net) {
    FinancialNetwork prop = net;
    for (BankId b = 0; b < prop.bank_count(); ++b) prop.set_proportional(b);
    CHECK(clear(net).payments == clear(prop).payments);
}

long long as_int(const Money& m) {
    return Integer(numerator(m)).convert_to<long long>();
}

}  // namespace

TEST_CASE("the exponential family wires a cycle, a path, and doubling assets") {
    const GadgetInstance g = gen_exponential(6);
    const FinancialNetwork& net = g.network;

    REQUIRE(net.bank_count() == 6);  // v, w0, w1, u0, u1, u2
    CHECK(net.bank(g.focusBank).name == "v");
    CHECK(g.parameters.at("liability") == Money(64));

    const ClearingState st = clear(net);
    // Initially the big cycle is dry; only the u-path moves money.
    CHECK(st.totalAssets[net.bank_id("v")] == Money(0));
    CHECK(st.payments[net.edge_id(net.bank_id("u0"), net.bank_id("u1"))] == Money(1));
    CHECK(st.payments[net.edge_id(net.bank_id("u1"), net.bank_id("u2"))] == Money(3));
    CHECK(st.payments[net.edge_id(net.bank_id("v"), net.bank_id("w0"))] == Money(0));

    CHECK_THROWS_AS(gen_exponential(5), Error);
}

TEST_CASE("Max-2-SAT input validation") {
    auto expectInvalid = [](std::vector<Max2SatClause> clauses) {
        try {
            gen_max2sat(clauses);
            FAIL("expected an exception");
        } catch (const Error& err) {
            CHECK(err.code() == Errc::ValidationError);
        }
    };
    expectInvalid({});
    expectInvalid({{0, 2, 1}});         // zero literal
    expectInvalid({{2, 2, 1}});         // duplicate literal
    expectInvalid({{1, -1, 1}});        // tautology
    expectInvalid({{1, 2, 0}});         // non-positive weight
    expectInvalid({{1, 2, Money(1, 2)}});  // fractional weight
}

TEST_CASE("the Max-2-SAT gadget counts satisfied weight at the focus bank") {
    const std::vector<Max2SatClause> clauses = {
        {1, 2, 2}, {-1, 2, 1}, {-2, 3, 3}, {1, -3, 1}};
    const GadgetInstance g = gen_max2sat(clauses);

    check_rule_invariance(g.network);

    // The emitted network is the all-false assignment.
    const std::vector<bool> allFalse(3, false);
    CHECK(g.network == assignment_network(g, allFalse));

    for (int mask = 0; mask < 8; ++mask) {
        std::vector<bool> assignment(3);
        for (int i = 0; i < 3; ++i) assignment[i] = (mask >> i) & 1;
        const FinancialNetwork net = assignment_network(g, assignment);
        const Money expected = testsupport::max2sat_value(clauses, assignment);
        INFO("assignment mask " << mask);
        CHECK(clear(net).totalAssets[g.focusBank] == expected);
    }

    CHECK_THROWS_AS(assignment_network(g, {true}), Error);
}

TEST_CASE("flipping one variable of an assignment network is a single swap") {
    const GadgetInstance g = gen_max2sat({{1, 2, 1}, {-1, 2, 1}});
    const FinancialNetwork from = assignment_network(g, {true, true});
    const FinancialNetwork to = assignment_network(g, {false, true});

    const BankId x1 = from.bank_id("x1");
    const BankId s1 = from.bank_id("s1");
    const DebtSwap flip{from.out_edges(x1).front(), from.out_edges(s1).front()};
    CHECK_FALSE(swap_violation(from, flip).has_value());
    CHECK(apply_swap(from, flip) == to);
}

TEST_CASE("SAT connectivity instances demand satisfying endpoints") {
    const std::vector<std::pair<int, int>> formula = {{1, 2}, {-1, 2}};

    const SatConnectivityInstance inst =
        gen_sat_connectivity(formula, {true, true}, {false, true});
    CHECK(inst.floor == Money(2));
    CHECK(clear(inst.gadget.network).totalAssets[inst.gadget.focusBank] == Money(2));
    CHECK(clear(inst.target).totalAssets[inst.gadget.focusBank] == Money(2));
    CHECK_FALSE(inst.gadget.network == inst.target);

    // The one-flip connection keeps v at the floor throughout.
    const FinancialNetwork& from = inst.gadget.network;
    const BankId x1 = from.bank_id("x1");
    const BankId s1 = from.bank_id("s1");
    const DebtSwap flip{from.out_edges(x1).front(), from.out_edges(s1).front()};
    SwapSequence seq;
    seq.initial = from;
    seq.steps.push_back(SequenceStep{make_spec(from, flip), {}, {}});
    CHECK(verify_sequence(from, inst.target, seq,
                          ReachConstraint::min_assets(inst.gadget.focusBank, inst.floor))
              .ok);

    // (false, false) violates both clauses.
    CHECK_THROWS_AS(gen_sat_connectivity(formula, {false, false}, {false, true}), Error);
    CHECK_THROWS_AS(gen_sat_connectivity(formula, {true, true}, {true}), Error);
}

TEST_CASE("Set Cover input validation") {
    auto expectInvalid = [](int universe, std::vector<std::vector<int>> sets, int c) {
        try {
            gen_setcover(universe, sets, c);
            FAIL("expected an exception");
        } catch (const Error& err) {
            CHECK(err.code() == Errc::ValidationError);
        }
    };
    expectInvalid(0, {{1}}, 1);                    // empty universe
    expectInvalid(2, {{1}, {2}}, 2);               // c must be < numSets
    expectInvalid(2, {{1}, {2}}, 0);               // c must be positive
    expectInvalid(2, {{1, 3}, {2}}, 1);            // item out of range
    expectInvalid(2, {{1, 1}, {2}}, 1);            // duplicate item
    expectInvalid(3, {{1}, {2}}, 1);               // union misses an item
}

TEST_CASE("the Set Cover gadget hits its target exactly on covering collections") {
    const int universe = 4;
    const std::vector<std::vector<int>> sets = {{1, 2}, {2, 3}, {3, 4}, {1, 4}};
    const int c = 2;
    const GadgetInstance g = gen_setcover(universe, sets, c);

    check_rule_invariance(g.network);

    const Money M = g.parameters.at("M");
    const int numSets = static_cast<int>(sets.size());
    const Money target = M * (numSets - c) + universe;

    // The emitted network funds the full collection: v collects one unit per
    // universe item and nothing else.
    CHECK(clear(g.network).totalAssets[g.focusBank] == Money(universe));

    for (int mask = 0; mask < (1 << numSets); ++mask) {
        std::set<int> collection;
        for (int j = 0; j < numSets; ++j)
            if ((mask >> j) & 1) collection.insert(j + 1);
        if (static_cast<int>(collection.size()) < c) {
            CHECK_THROWS_AS(setcover_selection_network(g, collection), Error);
            continue;
        }
        const FinancialNetwork net = setcover_selection_network(g, collection);
        const Money assets = clear(net).totalAssets[g.focusBank];
        const bool covering = testsupport::is_cover(universe, sets, collection);
        const bool exactSize = static_cast<int>(collection.size()) == c;
        INFO("collection mask " << mask << ", v = " << money_to_string(assets));
        CHECK((assets == target) == (covering && exactSize));
    }
}

TEST_CASE("dropping a set from the full collection improves the focus bank") {
    const GadgetInstance g =
        gen_setcover(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}}, 2);
    const FinancialNetwork& net = g.network;
    const BankId u1 = net.bank_id("u1");
    const BankId w1 = net.bank_id("w1");
    const DebtSwap drop{net.out_edges(u1).front(), net.out_edges(w1).front()};

    const SwapClassification cls = classify_swap(net, drop);
    CHECK(cls.assetDeltas[g.focusBank] > 0);
}

TEST_CASE("the sum-variant Set Cover gadget appends an amplifier path") {
    const GadgetInstance plain = gen_setcover(2, {{1}, {2}, {1, 2}}, 1);
    const GadgetInstance sum = gen_setcover(2, {{1}, {2}, {1, 2}}, 1, true);
    CHECK(sum.network.bank_count() > plain.network.bank_count());
    CHECK(sum.parameters.count("amplifier") == 1);
    check_rule_invariance(sum.network);
}

TEST_CASE("Independent Set input validation") {
    auto expectInvalid = [](int nodes, std::vector<std::pair<int, int>> edges) {
        try {
            gen_independent_set(nodes, edges);
            FAIL("expected an exception");
        } catch (const Error& err) {
            CHECK(err.code() == Errc::ValidationError);
        }
    };
    expectInvalid(0, {});
    expectInvalid(2, {{1, 3}});          // endpoint out of range
    expectInvalid(2, {{1, 1}});          // self-loop
    expectInvalid(3, {{1, 2}, {2, 1}});  // duplicate (undirected)
}

TEST_CASE("funding a node set swap-by-swap detects independence") {
    struct Graph {
        int nodes;
        std::vector<std::pair<int, int>> edges;
    };
    const std::vector<Graph> graphs = {
        {3, {{1, 2}, {2, 3}}},           // path: isolated middle conflicts
        {3, {{1, 2}, {2, 3}, {1, 3}}},   // triangle
        {4, {{1, 2}}},                   // one edge plus two isolated nodes
    };

    for (const Graph& graph : graphs) {
        const GadgetInstance g = gen_independent_set(graph.nodes, graph.edges);
        check_rule_invariance(g.network);

        for (int mask = 0; mask < (1 << graph.nodes); ++mask) {
            std::set<int> selected;
            for (int i = 0; i < graph.nodes; ++i)
                if ((mask >> i) & 1) selected.insert(i + 1);

            // Selection networks always credit v once per selected node...
            const FinancialNetwork sel = independent_set_selection_network(g, selected);
            CHECK(clear(sel).totalAssets[g.focusBank] ==
                  Money(static_cast<int>(selected.size())));

            // ...but the funding swaps are all semi-positive exactly when the
            // selection is independent.
            bool allSemi = true;
            FinancialNetwork cur = g.network;
            for (int i : selected) {
                const BankId xi = cur.bank_id("x" + std::to_string(i));
                const BankId yi = cur.bank_id("y" + std::to_string(i));
                const DebtSwap s{cur.out_edges(xi).front(), cur.out_edges(yi).front()};
                if (!classify_swap(cur, s).semiPositive) allSemi = false;
                cur = apply_swap(cur, s);
            }

            bool independent = true;
            for (const auto& [a, b] : graph.edges)
                if (selected.count(a) && selected.count(b)) independent = false;
            INFO("nodes " << graph.nodes << " mask " << mask);
            CHECK(allSemi == independent);
        }
    }
}

TEST_CASE("Partition input validation") {
    auto expectInvalid = [](std::vector<Money> values) {
        try {
            gen_partition(values);
            FAIL("expected an exception");
        } catch (const Error& err) {
            CHECK(err.code() == Errc::ValidationError);
        }
    };
    expectInvalid({});
    expectInvalid({Money(3), Money(2)});        // odd total
    expectInvalid({Money(0), Money(2)});        // non-positive value
    expectInvalid({Money(1, 2), Money(3, 2)});  // fractional values
}

TEST_CASE("Partition swaps stay semi-positive exactly while the sum fits") {
    const std::vector<Money> values = {Money(3), Money(5), Money(8), Money(2)};
    const GadgetInstance g = gen_partition(values);
    const Money half = g.parameters.at("half");
    REQUIRE(half == Money(9));
    check_rule_invariance(g.network);

    const int k = static_cast<int>(values.size());
    for (int mask = 0; mask < (1 << k); ++mask) {
        FinancialNetwork cur = g.network;
        Money sum = 0;
        bool allSemi = true;
        bool predicted = true;
        for (int i = 0; i < k; ++i) {
            if (!((mask >> i) & 1)) continue;
            const BankId ai = cur.bank_id("a" + std::to_string(i + 1));
            const BankId si = cur.bank_id("s" + std::to_string(i + 1));
            const DebtSwap s{cur.out_edges(ai).front(), cur.out_edges(si).front()};
            const SwapClassification cls = classify_swap(cur, s);
            sum += values[i];
            if (!cls.semiPositive) allSemi = false;
            if (sum > half) predicted = false;
            cur = apply_swap(cur, s);
        }
        INFO("subset mask " << mask);
        CHECK(allSemi == predicted);

        // v's cleared assets equal the redirected sum, fitting or not.
        CHECK(clear(cur).totalAssets[g.focusBank] == sum);
    }
}

TEST_CASE("the best semi-positive Partition selection matches the subset-sum oracle") {
    auto bestReachable = [](const std::vector<Money>& values) {
        const GadgetInstance g = gen_partition(values);
        const Money half = g.parameters.at("half");
        const int k = static_cast<int>(values.size());
        Money best = 0;
        for (int mask = 0; mask < (1 << k); ++mask) {
            Money sum = 0;
            bool allSemi = true;
            FinancialNetwork cur = g.network;
            for (int i = 0; i < k && allSemi; ++i) {
                if (!((mask >> i) & 1)) continue;
                const BankId ai = cur.bank_id("a" + std::to_string(i + 1));
                const BankId si = cur.bank_id("s" + std::to_string(i + 1));
                const DebtSwap s{cur.out_edges(ai).front(), cur.out_edges(si).front()};
                if (!classify_swap(cur, s).semiPositive) {
                    allSemi = false;
                    break;
                }
                cur = apply_swap(cur, s);
                sum += values[i];
            }
            if (allSemi && sum > best) best = sum;
        }
        return std::make_pair(best, half);
    };

    {
        const auto [best, half] = bestReachable({Money(3), Money(5), Money(8), Money(2)});
        CHECK(best == testsupport::best_subset_sum_under(
                          {Money(3), Money(5), Money(8), Money(2)}, half));
        CHECK(best < half);  // no perfect partition of {3,5,8,2}
    }
    {
        const std::vector<Money> values = {Money(3), Money(5), Money(8), Money(2), Money(2)};
        const auto [best, half] = bestReachable(values);
        CHECK(best == half);  // {8,2} hits A/2 = 10
    }
}

TEST_CASE("3-Partition input validation") {
    auto expectInvalid = [](std::vector<Money> values, int k) {
        try {
            gen_3partition(values, k);
            FAIL("expected an exception");
        } catch (const Error& err) {
            CHECK(err.code() == Errc::ValidationError);
        }
    };
    expectInvalid({Money(5), Money(5), Money(5)}, 4);   // size mismatch
    expectInvalid({Money(5), Money(5)}, 2);             // k not divisible by 3
    expectInvalid({Money(1), Money(5), Money(9)}, 3);   // range (T/4, T/2) violated
    expectInvalid({Money(5), Money(5, 2), Money(5)}, 3);  // fractional value
}

TEST_CASE("the 3-Partition gadget pays out one triple per heavy edge") {
    const GadgetInstance g = gen_3partition({Money(5), Money(5), Money(5)}, 3);
    const FinancialNetwork& net = g.network;

    CHECK(g.parameters.at("T") == Money(15));
    CHECK(g.parameters.at("l") == Money(1));
    CHECK(net.bank_count() == 9);  // r, v, a1-a3, u1, b1-b3
    check_rule_invariance(net);
    CHECK(clear(net).totalAssets[g.focusBank] == Money(0));

    FinancialNetwork cur = net;
    for (int i = 1; i <= 3; ++i) {
        const BankId ai = cur.bank_id("a" + std::to_string(i));
        const BankId bi = cur.bank_id("b" + std::to_string(i));
        const DebtSwap s{cur.out_edges(ai).front(), cur.out_edges(bi).front()};
        const SwapClassification cls = classify_swap(cur, s);
        CHECK(cls.semiPositive);
        CHECK(cls.assetDeltas[g.focusBank] == Money(5));
        cur = apply_swap(cur, s);
    }
    // v ends at A + k/3 - 1 = 15.
    CHECK(clear(cur).totalAssets[g.focusBank] == Money(15));
}

TEST_CASE("the 3-Partition light edges unlock between completed triples") {
    // Two triples of sum T = 16 each; the schedule alternates a full triple,
    // the light-edge swap, and the second triple, all semi-positive.
    const std::vector<Money> values = {Money(5), Money(5), Money(6),
                                       Money(5), Money(5), Money(6)};
    const GadgetInstance g = gen_3partition(values, 6);
    const FinancialNetwork& net = g.network;

    CHECK(g.parameters.at("T") == Money(16));
    CHECK(g.parameters.at("l") == Money(3));
    REQUIRE(net.has_bank("u2"));
    REQUIRE(net.has_bank("s2"));
    REQUIRE(net.has_bank("z1"));

    FinancialNetwork cur = net;
    auto applySemi = [&](const std::string& debtor1, const std::string& debtor2) {
        const BankId d1 = cur.bank_id(debtor1);
        const BankId d2 = cur.bank_id(debtor2);
        const DebtSwap s{cur.out_edges(d1).front(), cur.out_edges(d2).front()};
        const SwapClassification cls = classify_swap(cur, s);
        INFO("swap of '" << debtor1 << "' with '" << debtor2 << "'");
        CHECK(cls.semiPositive);
        cur = apply_swap(cur, s);
    };

    applySemi("a1", "b1");
    applySemi("a2", "b2");
    applySemi("a3", "b3");  // first triple fills the first heavy edge
    applySemi("s2", "z1");  // the light edge unlocks only now
    applySemi("a4", "b4");
    applySemi("a5", "b5");
    applySemi("a6", "b6");

    // v ends at A + k/3 - 1 = 32 + 1 = 33.
    CHECK(clear(cur).totalAssets[g.focusBank] == Money(33));

    // Before the first triple is complete, the light swap is not semi-positive.
    FinancialNetwork early = net;
    const DebtSwap lightEarly{early.out_edges(early.bank_id("s2")).front(),
                              early.out_edges(early.bank_id("z1")).front()};
    CHECK_FALSE(classify_swap(early, lightEarly).semiPositive);
}

TEST_CASE("gadget parameters expose integral bookkeeping") {
    const GadgetInstance g = gen_setcover(3, {{1, 2}, {2, 3}, {1, 3}}, 2);
    CHECK(as_int(g.parameters.at("numSets")) == 3);
    CHECK(as_int(g.parameters.at("c")) == 2);
    CHECK(as_int(g.parameters.at("universe")) == 3);
    // Distinct per-set weights.
    CHECK(g.parameters.at("M1") != g.parameters.at("M2"));
    CHECK(g.parameters.at("M2") != g.parameters.at("M3"));
}
