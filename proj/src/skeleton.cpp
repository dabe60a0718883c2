#include "pcp/skeleton.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "pcp/error.hpp"

namespace pcp {

namespace {

std::vector<int> resolve_order(const std::vector<int>& order, int d) {
    if (order.empty()) {
        std::vector<int> identity(d);
        for (int i = 0; i < d; ++i) identity[i] = i;
        return identity;
    }
    if (static_cast<int>(order.size()) != d) throw DataError("skeleton: order size mismatch");
    std::vector<uint8_t> seen(d, 0);
    for (int v : order) {
        if (v < 0 || v >= d || seen[v]) throw DataError("skeleton: order is not a permutation");
        seen[v] = 1;
    }
    return order;
}

// Calls fn(subset) for every size-k subset of items, in lexicographic
// order over the given item sequence. Returns false if fn aborted.
bool for_each_subset(const std::vector<int>& items, int k,
                     const std::function<bool(const std::vector<int>&)>& fn) {
    const int n = static_cast<int>(items.size());
    if (k > n) return true;
    std::vector<int> pick(k);
    std::vector<int> subset(k);
    for (int i = 0; i < k; ++i) pick[i] = i;
    while (true) {
        for (int i = 0; i < k; ++i) subset[i] = items[pick[i]];
        if (!fn(subset)) return false;
        int i = k - 1;
        while (i >= 0 && pick[i] == n - k + i) --i;
        if (i < 0) return true;
        ++pick[i];
        for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
}

struct PairLevelState {
    std::set<std::vector<int>> tested;      // sorted-index form, dedupes the two sides
    std::vector<double> significant;        // p <= alpha this level
    std::vector<std::vector<int>> separating;
};

}  // namespace

void finalize_edge_pvalues(PValueLedger& ledger) {
    for (auto& [pair, cell] : ledger.p1) {
        if (cell.empty()) continue;
        const double top = *std::max_element(cell.begin(), cell.end());
        cell.assign(1, top);
    }
    for (auto& [pair, cell] : ledger.p1) {
        if (cell.empty() || pair.first > pair.second) continue;
        const OrderedPair rev{pair.second, pair.first};
        if (ledger.identifiers.count(pair)) continue;  // idempotent
        const uint64_t token = ledger.fresh_identifier();
        ledger.identifiers[pair] = token;
        ledger.identifiers[rev] = token;
        ledger.skeleton_identifiers[pair] = token;
        ledger.skeleton_identifiers[rev] = token;
    }
}

std::pair<MixedGraph, PValueLedger> discover_skeleton(const CiTester& tester,
                                                      const SkeletonConfig& config, int d) {
    if (d < 2) throw DataError("discover_skeleton: need at least 2 variables");
    PCP_CHECK(tester.variable_count() == d, "discover_skeleton: tester dimension mismatch");
    PCP_CHECK(config.l_max >= 0, "discover_skeleton: l_max must be non-negative");

    const std::vector<int> order = resolve_order(config.order, d);
    std::vector<int> pos(d);
    for (int i = 0; i < d; ++i) pos[order[i]] = i;
    auto by_pos = [&](int a, int b) { return pos[a] < pos[b]; };

    MixedGraph graph = MixedGraph::complete(d);
    PValueLedger ledger;

    // Neighbour list of v minus `exclude`, sequenced by the permutation.
    auto adjacency_minus = [&](const MixedGraph& g, int v, int exclude) {
        std::vector<int> out;
        for (int u : g.neighbors(v))
            if (u != exclude) out.push_back(u);
        std::sort(out.begin(), out.end(), by_pos);
        return out;
    };

    // All ordered pairs adjacent in g, sequenced by the permutation.
    auto ordered_pairs = [&](const MixedGraph& g) {
        std::vector<OrderedPair> pairs;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if (i != j && g.adjacent(order[i], order[j])) pairs.emplace_back(order[i], order[j]);
        return pairs;
    };

    const bool stable = config.mode == SkeletonMode::Stable;
    int l = -1;
    while (true) {
        ++l;

        if (stable) {
            // Snapshot adjacency once per level; every subset below comes
            // from the snapshot, so level outcomes cannot depend on the
            // enumeration order. Each pair runs its full level schedule
            // (no early stop) so that the recorded separating sets and
            // stored p-values are order-independent as well; deletions
            // are committed at level end.
            std::vector<std::vector<int>> snapshot(d);
            for (int v = 0; v < d; ++v) snapshot[v] = adjacency_minus(graph, v, -1);

            std::map<OrderedPair, PairLevelState> states;
            for (const auto& [a, b] : ordered_pairs(graph)) {
                std::vector<int> candidates;
                for (int u : snapshot[a])
                    if (u != b) candidates.push_back(u);
                if (static_cast<int>(candidates.size()) < l) continue;
                auto& state = states[unordered(a, b)];
                for_each_subset(candidates, l, [&](const std::vector<int>& subset) {
                    std::vector<int> key = subset;
                    std::sort(key.begin(), key.end());
                    if (!state.tested.insert(key).second) return true;
                    const CiResult res = tester.test(a, b, key);
                    if (res.p_value <= config.alpha)
                        state.significant.push_back(res.p_value);
                    else
                        state.separating.push_back(key);
                    return true;
                });
            }

            for (const auto& [pair, state] : states) {
                if (!state.separating.empty()) {
                    graph.remove_edge(pair.first, pair.second);
                    ledger.clear_p1(pair.first, pair.second);
                    for (const auto& s : state.separating) ledger.add_sepset(pair.first, pair.second, s);
                } else {
                    for (double p : state.significant) ledger.store_p1(pair.first, pair.second, p);
                }
            }
        } else {
            // Legacy: live adjacency, first separating set deletes the
            // edge immediately and ends that pair's schedule.
            for (const auto& [a, b] : ordered_pairs(graph)) {
                if (!graph.adjacent(a, b)) continue;  // deleted earlier this level
                const std::vector<int> candidates = adjacency_minus(graph, a, b);
                if (static_cast<int>(candidates.size()) < l) continue;
                for_each_subset(candidates, l, [&](const std::vector<int>& subset) {
                    std::vector<int> key = subset;
                    std::sort(key.begin(), key.end());
                    const CiResult res = tester.test(a, b, key);
                    if (res.p_value <= config.alpha) {
                        ledger.store_p1(a, b, res.p_value);
                        return true;
                    }
                    graph.remove_edge(a, b);
                    ledger.clear_p1(a, b);
                    ledger.add_sepset(a, b, key);
                    return false;
                });
            }
        }

        if (l >= config.l_max) break;
        bool any_left = false;
        for (int v = 0; v < d && !any_left; ++v) {
            const int deg = static_cast<int>(graph.neighbors(v).size());
            if (deg > 0 && deg - 1 > l) any_left = true;
        }
        if (!any_left) break;
    }

    finalize_edge_pvalues(ledger);
    return {std::move(graph), std::move(ledger)};
}

}  // namespace pcp
