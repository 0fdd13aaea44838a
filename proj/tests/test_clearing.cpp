#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <debtswap/clearing.hpp>

#include "support/fixtures.hpp"
#include "support/random_nets.hpp"

using namespace debtswap;

TEST_CASE("the six-bank fixture clears to its known payment vector") {
    FinancialNetwork net = fixtures::ex1();
    const ClearingState st = clear(net);

    // Only v2 has cash; everything else is gridlocked.
    const std::vector<Money> expected = {Money(0), Money(0), Money(0),
                                         Money(0), Money(0), Money(1)};
    CHECK(st.payments == expected);
    CHECK(st.totalAssets[net.bank_id("v2")] == Money(1));
    CHECK(st.totalAssets[net.bank_id("w2")] == Money(1));
    CHECK(st.totalAssets[net.bank_id("v1")] == Money(0));

    const EdgeId e5 = net.edge_id(net.bank_id("v2"), net.bank_id("w2"));
    CHECK(st.saturated[e5]);
    CHECK_FALSE(st.saturated[net.edge_id(net.bank_id("u1"), net.bank_id("v1"))]);
    CHECK(st.insolvent[net.bank_id("u1")]);
    CHECK_FALSE(st.insolvent[net.bank_id("v2")]);
    CHECK_FALSE(st.insolvent[net.bank_id("w2")]);
}

TEST_CASE("clearing picks the greatest fixed point on a debt cycle") {
    // With no external cash both the zero vector and full mutual payment are
    // fixed points; the greatest one pays everything.
    FinancialNetwork net;
    const BankId a = net.add_bank("a");
    const BankId b = net.add_bank("b");
    const EdgeId ab = net.add_edge(a, b, Money(1));
    const EdgeId ba = net.add_edge(b, a, Money(1));

    CHECK(is_feasible(net, {Money(0), Money(0)}));
    CHECK(is_feasible(net, {Money(1), Money(1)}));

    const ClearingState st = clear(net);
    CHECK(st.payments[ab] == Money(1));
    CHECK(st.payments[ba] == Money(1));
    CHECK_FALSE(st.insolvent[a]);
    CHECK_FALSE(st.insolvent[b]);
}

TEST_CASE("proportional banks split their budget pro rata") {
    FinancialNetwork net;
    const BankId a = net.add_bank("a", Money(1));
    const BankId b = net.add_bank("b");
    const BankId c = net.add_bank("c");
    const EdgeId ab = net.add_edge(a, b, Money(1));
    const EdgeId ac = net.add_edge(a, c, Money(2));
    net.set_proportional(a);

    const ClearingState st = clear(net);
    CHECK(st.payments[ab] == Money(1, 3));
    CHECK(st.payments[ac] == Money(2, 3));
    CHECK(st.totalAssets[c] == Money(2, 3));
}

TEST_CASE("ranking banks pay their ranking greedily in order") {
    FinancialNetwork net;
    const BankId a = net.add_bank("a", Money(3, 2));
    const BankId b = net.add_bank("b");
    const BankId c = net.add_bank("c");
    const EdgeId ab = net.add_edge(a, b, Money(1));
    const EdgeId ac = net.add_edge(a, c, Money(2));

    SECTION("insertion order is the default ranking") {
        const ClearingState st = clear(net);
        CHECK(st.payments[ab] == Money(1));
        CHECK(st.payments[ac] == Money(1, 2));
        CHECK(st.saturated[ab]);
        CHECK_FALSE(st.saturated[ac]);
    }

    SECTION("reversing the ranking reverses the priorities") {
        net.set_ranking(a, {ac, ab});
        const ClearingState st = clear(net);
        CHECK(st.payments[ac] == Money(3, 2));
        CHECK(st.payments[ab] == Money(0));
    }
}

TEST_CASE("payments cascade exactly along a chain") {
    FinancialNetwork net;
    const BankId a = net.add_bank("a", Money(3, 2));
    const BankId b = net.add_bank("b");
    const BankId c = net.add_bank("c");
    const EdgeId ab = net.add_edge(a, b, Money(2));
    const EdgeId bc = net.add_edge(b, c, Money(1));

    const ClearingState st = clear(net);
    CHECK(st.payments[ab] == Money(3, 2));
    CHECK(st.payments[bc] == Money(1));
    CHECK(st.totalAssets[b] == Money(3, 2));
    CHECK(st.totalAssets[c] == Money(1));
    CHECK(st.insolvent[a]);
    CHECK_FALSE(st.insolvent[b]);
}

TEST_CASE("exhaustive clearing agrees with the fixed-point solver") {
    std::mt19937_64 rng(20240517);
    testsupport::RandomNetConfig cfg;
    for (int trial = 0; trial < 60; ++trial) {
        FinancialNetwork net = testsupport::make_random_network(rng, cfg);
        const ClearingState fast = clear(net);
        const ClearingState slow = brute_force_clear(net);
        INFO("trial " << trial);
        REQUIRE(fast.payments == slow.payments);
        REQUIRE(fast.totalAssets == slow.totalAssets);
    }
}

TEST_CASE("exhaustive clearing rejects inputs it cannot handle") {
    FinancialNetwork net;
    const BankId a = net.add_bank("a", Money(1));
    const BankId b = net.add_bank("b");
    net.add_edge(a, b, Money(2));

    SECTION("proportional banks") {
        net.set_proportional(a);
        CHECK_THROWS_AS(brute_force_clear(net), Error);
    }
    SECTION("fractional data") {
        net.set_external_assets(a, Money(1, 2));
        CHECK_THROWS_AS(brute_force_clear(net), Error);
    }
    SECTION("oversized payment grids") {
        CHECK_THROWS_AS(brute_force_clear(net, 2), Error);
    }
}

TEST_CASE("mixed-rule networks clear without drift") {
    // A proportional debtor feeding a ranking debtor; exactness means the
    // downstream split sees the precise rational inflow.
    FinancialNetwork net;
    const BankId a = net.add_bank("a", Money(1));
    const BankId b = net.add_bank("b");
    const BankId c = net.add_bank("c");
    const BankId d = net.add_bank("d");
    const EdgeId ab = net.add_edge(a, b, Money(1));
    const EdgeId ac = net.add_edge(a, c, Money(2));
    const EdgeId bd = net.add_edge(b, d, Money(1, 4));
    const EdgeId bc = net.add_edge(b, c, Money(1));
    net.set_proportional(a);

    const ClearingState st = clear(net);
    CHECK(st.payments[ab] == Money(1, 3));
    CHECK(st.payments[ac] == Money(2, 3));
    CHECK(st.payments[bd] == Money(1, 4));
    CHECK(st.payments[bc] == Money(1, 12));
    CHECK(st.totalAssets[c] == Money(2, 3) + Money(1, 12));
}
