// Seeded random-network generators for the property tests.
#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <debtswap/classify.hpp>
#include <debtswap/network.hpp>
#include <debtswap/transforms.hpp>

namespace testsupport {

using namespace debtswap;

struct RandomNetConfig {
    int minBanks = 2;
    int maxBanks = 5;
    int maxEdges = 8;
    int maxLiability = 3;     // liabilities are drawn from 1..maxLiability
    int maxAssets = 3;        // external assets from 0..maxAssets
    int edgePercent = 55;     // chance to keep each candidate edge
    bool mixedRules = false;  // allow proportional banks
    bool shuffleRankings = true;
};

inline FinancialNetwork make_random_network(std::mt19937_64& rng,
                                            const RandomNetConfig& cfg) {
    std::uniform_int_distribution<int> bankCount(cfg.minBanks, cfg.maxBanks);
    const int n = bankCount(rng);
    std::uniform_int_distribution<int> assets(0, cfg.maxAssets);
    std::uniform_int_distribution<int> liability(1, cfg.maxLiability);
    std::uniform_int_distribution<int> percent(1, 100);

    FinancialNetwork net;
    for (int i = 0; i < n; ++i) net.add_bank("b" + std::to_string(i), assets(rng));

    std::vector<std::pair<int, int>> candidates;
    for (int d = 0; d < n; ++d)
        for (int c = 0; c < n; ++c)
            if (d != c) candidates.push_back({d, c});
    std::shuffle(candidates.begin(), candidates.end(), rng);
    int added = 0;
    for (const auto& [d, c] : candidates) {
        if (added >= cfg.maxEdges) break;
        if (percent(rng) > cfg.edgePercent) continue;
        net.add_edge(d, c, liability(rng));
        ++added;
    }

    for (BankId v = 0; v < n; ++v) {
        if (cfg.mixedRules && percent(rng) <= 40) {
            net.set_proportional(v);
        } else if (cfg.shuffleRankings) {
            std::vector<EdgeId> order = net.out_edges(v);
            std::shuffle(order.begin(), order.end(), rng);
            net.set_ranking(v, order);
        }
    }
    return net;
}

// Network whose per-debtor stub weights are pairwise distinct while weight
// classes are shared across debtors; for such networks, equality of the edge
// sets implies full semantic equality, so a reach target is unambiguous.
inline FinancialNetwork make_distinct_weight_network(std::mt19937_64& rng, int banks,
                                                     int weightPalette = 3) {
    std::uniform_int_distribution<int> assets(0, 3);
    std::uniform_int_distribution<int> percent(1, 100);
    FinancialNetwork net;
    for (int i = 0; i < banks; ++i) net.add_bank("b" + std::to_string(i), assets(rng));
    for (int d = 0; d < banks; ++d) {
        std::vector<int> creditors;
        for (int c = 0; c < banks; ++c)
            if (c != d) creditors.push_back(c);
        std::shuffle(creditors.begin(), creditors.end(), rng);
        std::size_t next = 0;
        for (int w = 1; w <= weightPalette && next < creditors.size(); ++w)
            if (percent(rng) <= 60) net.add_edge(d, creditors[next++], w);
    }
    return net;
}

// Applies up to `swaps` random valid swaps to a copy of `g`.
inline FinancialNetwork scramble(std::mt19937_64& rng, const FinancialNetwork& g,
                                 int swaps) {
    FinancialNetwork cur = g;
    for (int t = 0; t < swaps; ++t) {
        std::vector<DebtSwap> options = enumerate_swaps(cur);
        if (options.empty()) break;
        std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
        cur = apply_swap(cur, options[pick(rng)]);
    }
    return cur;
}

}  // namespace testsupport
