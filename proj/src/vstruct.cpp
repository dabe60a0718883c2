#include "pcp/vstruct.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "pcp/error.hpp"

namespace pcp {

namespace {

// Subsets of `pool` of size k, lexicographic over the sorted pool, each
// passed to fn together with the fixed member c.
template <typename Fn>
void subsets_with(const std::vector<int>& pool, int k, int c, Fn&& fn) {
    const int n = static_cast<int>(pool.size());
    if (k > n) return;
    std::vector<int> pick(k);
    for (int i = 0; i < k; ++i) pick[i] = i;
    while (true) {
        std::vector<int> subset;
        subset.reserve(k + 1);
        subset.push_back(c);
        for (int i = 0; i < k; ++i) subset.push_back(pool[pick[i]]);
        std::sort(subset.begin(), subset.end());
        fn(subset);
        int i = k - 1;
        while (i >= 0 && pick[i] == n - k + i) --i;
        if (i < 0) return;
        ++pick[i];
        for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
}

// Unshielded triples (x, y, c): x < y non-adjacent, c adjacent to both.
std::vector<std::tuple<int, int, int>> unshielded_triples(const MixedGraph& g) {
    std::vector<std::tuple<int, int, int>> out;
    const int d = g.vertex_count();
    for (int x = 0; x < d; ++x)
        for (int y = x + 1; y < d; ++y) {
            if (g.adjacent(x, y)) continue;
            for (int c = 0; c < d; ++c)
                if (c != x && c != y && g.adjacent(x, c) && g.adjacent(y, c))
                    out.emplace_back(x, y, c);
        }
    return out;
}

double pair_combine(double a, double b, BoundPolicy policy) {
    return policy == BoundPolicy::Robust ? std::max(a, b) : std::min(a, b);
}

uint64_t vstruct_token(PValueLedger& ledger, std::map<std::tuple<int, int, int>, uint64_t>& cache,
                       int x, int y, int c) {
    const auto key = std::make_tuple(std::min(x, y), std::max(x, y), c);
    const auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const uint64_t token = ledger.fresh_identifier();
    cache.emplace(key, token);
    return token;
}

void assign_directed_identifier(PValueLedger& ledger, int tail, int head, uint64_t token) {
    ledger.identifiers[{tail, head}] = token;
    ledger.identifiers.erase({head, tail});
}

}  // namespace

double gamma_pvalue(const CiTester& tester, const MixedGraph& graph, int a, int b, int c,
                    int l_max) {
    PCP_CHECK(!graph.adjacent(a, b), "gamma_pvalue: endpoints are adjacent");
    PCP_CHECK(graph.adjacent(a, c) && graph.adjacent(b, c), "gamma_pvalue: c not a common neighbor");

    std::set<std::vector<int>> schedule;
    auto collect = [&](int from, int other) {
        std::vector<int> pool;
        for (int u : graph.neighbors(from))
            if (u != other && u != c) pool.push_back(u);
        std::sort(pool.begin(), pool.end());
        for (int extra = 0; extra + 1 <= l_max; ++extra)
            subsets_with(pool, extra, c, [&](const std::vector<int>& s) { schedule.insert(s); });
    };
    collect(a, b);
    collect(b, a);

    double bound = 0.0;
    for (const auto& s : schedule) bound = std::max(bound, tester.test(a, b, s).p_value);
    return bound;
}

double combine_vstruct_bound(double p_ac, std::span<const std::pair<double, double>> contributions,
                             BoundPolicy policy) {
    if (contributions.empty()) throw DataError("combine_vstruct_bound: no contributions");
    double sum = 0.0;
    for (const auto& [p_bic, p_gamma] : contributions) sum += pair_combine(p_bic, p_gamma, policy);
    const double combined =
        policy == BoundPolicy::Robust ? std::max(p_ac, sum) : std::min(p_ac, sum);
    return std::min(1.0, combined);
}

VStructScan scan_v_structures(const MixedGraph& graph, const PValueLedger& ledger,
                              const CiTester& tester, int l_max) {
    VStructScan scan{graph, {}, {}, {}};
    uint64_t seq = 0;
    for (const auto& [x, y, c] : unshielded_triples(graph)) {
        if (ledger.sepset_contains(x, y, c)) continue;
        const double gamma = gamma_pvalue(tester, graph, x, y, c, l_max);
        scan.records.push_back({x, y, c, gamma});
        scan.accumulated.add_arrowhead(x, c);
        scan.last_arrow[{x, c}] = ++seq;
        scan.accumulated.add_arrowhead(y, c);
        scan.last_arrow[{y, c}] = ++seq;
        scan.contributions[{x, c}].push_back({y, c, ledger.p1_value(y, c), gamma});
        scan.contributions[{y, c}].push_back({x, c, ledger.p1_value(x, c), gamma});
    }
    return scan;
}

void orient_v_structures(MixedGraph& graph, PValueLedger& ledger, const CiTester& tester,
                         int l_max, BoundPolicy policy, bool ambiguation) {
    const VStructScan scan = scan_v_structures(graph, ledger, tester, l_max);

    for (const auto& [pair, contribs] : scan.contributions)
        for (const auto& contrib : contribs)
            ledger.p_prime[pair].push_back(pair_combine(contrib.other_p1, contrib.gamma, policy));

    MixedGraph resolved = scan.accumulated;
    if (ambiguation) {
        for (const auto& [i, j] : scan.accumulated.edge_pairs()) {
            if (!scan.accumulated.is_bidirected(i, j)) continue;
            resolved.set_mark(i, j, EdgeMark::Undirected);
            resolved.set_ambiguous(i, j, true);
            for (int endpoint : {i, j}) {
                for (int u : scan.accumulated.vertices_into(endpoint)) {
                    if (u == i || u == j) continue;
                    resolved.set_mark(u, endpoint, EdgeMark::Undirected);
                    resolved.set_ambiguous(u, endpoint, true);
                }
            }
        }
    } else {
        for (const auto& [i, j] : scan.accumulated.edge_pairs()) {
            if (!scan.accumulated.is_bidirected(i, j)) continue;
            const uint64_t fwd = scan.last_arrow.at({i, j});
            const uint64_t bwd = scan.last_arrow.at({j, i});
            resolved.set_mark(i, j, fwd > bwd ? EdgeMark::DirectedForward : EdgeMark::DirectedBackward);
        }
    }
    graph = resolved;

    std::map<std::tuple<int, int, int>, uint64_t> triple_tokens;
    for (const auto& [pair, contribs] : scan.contributions) {
        const auto [tail, head] = pair;
        if (!graph.has_directed(tail, head)) continue;
        const auto& plist = ledger.p_prime.at(pair);
        double sum = 0.0;
        for (double p : plist) sum += p;
        const double p1 = ledger.p1_value(tail, head);
        const double combined = policy == BoundPolicy::Robust ? std::max(p1, sum) : std::min(p1, sum);
        ledger.p2[pair] = std::min(1.0, combined);

        if (contribs.size() == 1)
            assign_directed_identifier(
                ledger, tail, head,
                vstruct_token(ledger, triple_tokens, tail, contribs.front().other_arm, head));
        else
            assign_directed_identifier(ledger, tail, head, ledger.fresh_identifier());
    }
}

void legacy_orient_v_structures(MixedGraph& graph, PValueLedger& ledger, const CiTester& tester,
                                int l_max, BoundPolicy policy) {
    struct Writer {
        int head;        // collider the pair was last oriented into
        int other_arm;
        double gamma;
    };
    std::map<OrderedPair, Writer> last_writer;  // keyed on unordered pair

    for (const auto& [x, y, c] : unshielded_triples(graph)) {
        if (ledger.sepset_contains(x, y, c)) continue;
        const double gamma = gamma_pvalue(tester, graph, x, y, c, l_max);
        // Over-write both arms unconditionally.
        graph.set_mark(x, c, EdgeMark::DirectedForward);
        graph.set_mark(y, c, EdgeMark::DirectedForward);
        last_writer[unordered(x, c)] = {c, y, gamma};
        last_writer[unordered(y, c)] = {c, x, gamma};
    }

    std::map<std::tuple<int, int, int>, uint64_t> triple_tokens;
    for (const auto& [pair, writer] : last_writer) {
        const int head = writer.head;
        const int tail = pair.first == head ? pair.second : pair.first;
        if (!graph.has_directed(tail, head)) continue;  // re-oriented away later
        const std::pair<double, double> contrib{ledger.p1_value(writer.other_arm, head),
                                                writer.gamma};
        ledger.p_prime[{tail, head}].push_back(pair_combine(contrib.first, contrib.second, policy));
        ledger.p2[{tail, head}] =
            combine_vstruct_bound(ledger.p1_value(tail, head), {&contrib, 1}, policy);

        // Shared identifier only when the same v-structure still owns the
        // other arm's direction.
        const auto other_it = last_writer.find(unordered(writer.other_arm, head));
        const bool shared = other_it != last_writer.end() && other_it->second.head == head &&
                            other_it->second.other_arm == tail &&
                            graph.has_directed(writer.other_arm, head);
        if (shared)
            assign_directed_identifier(
                ledger, tail, head,
                vstruct_token(ledger, triple_tokens, tail, writer.other_arm, head));
        else
            assign_directed_identifier(ledger, tail, head, ledger.fresh_identifier());
    }
}

}  // namespace pcp
