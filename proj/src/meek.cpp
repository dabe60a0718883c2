#include "pcp/meek.hpp"

#include <algorithm>
#include <map>
#include <vector>

#include "pcp/error.hpp"

namespace pcp {

namespace {

double pair_combine(double a, double b, BoundPolicy policy) {
    return policy == BoundPolicy::Robust ? std::max(a, b) : std::min(a, b);
}

double outer_combine(double p1, double accum, BoundPolicy policy) {
    const double v = policy == BoundPolicy::Robust ? std::max(p1, accum) : std::min(p1, accum);
    return std::min(1.0, v);
}

double p2_of(const PValueLedger& ledger, int tail, int head) {
    const auto it = ledger.p2.find({tail, head});
    PCP_CHECK(it != ledger.p2.end(), "orientation rules: directed edge without p2");
    return it->second;
}

// Antecedent edges of one rule application, as ordered pairs for
// directed edges and unordered-canonical pairs for undirected ones.
struct Firing {
    std::vector<OrderedPair> directed_antecedents;
    std::vector<OrderedPair> undirected_antecedents;
};

struct RuleHit {
    bool fired = false;
    double contribution = 0.0;
    Firing firing;
};

RuleHit rule1(const MixedGraph& g, const PValueLedger& ledger, int a, int b, BoundPolicy) {
    RuleHit hit;
    for (int c = 0; c < g.vertex_count(); ++c) {
        if (c == a || c == b) continue;
        if (g.has_directed(c, a) && !g.adjacent(c, b)) {
            hit.fired = true;
            hit.contribution += p2_of(ledger, c, a);
            hit.firing.directed_antecedents.push_back({c, a});
        }
    }
    return hit;
}

RuleHit rule2(const MixedGraph& g, const PValueLedger& ledger, int a, int b, BoundPolicy policy) {
    RuleHit hit;
    for (int c = 0; c < g.vertex_count(); ++c) {
        if (c == a || c == b) continue;
        if (g.has_directed(a, c) && g.has_directed(c, b)) {
            hit.fired = true;
            hit.contribution += pair_combine(p2_of(ledger, a, c), p2_of(ledger, c, b), policy);
            hit.firing.directed_antecedents.push_back({a, c});
            hit.firing.directed_antecedents.push_back({c, b});
        }
    }
    return hit;
}

RuleHit rule3(const MixedGraph& g, const PValueLedger& ledger, int a, int b, BoundPolicy policy) {
    RuleHit hit;
    std::vector<int> middles;
    for (int c = 0; c < g.vertex_count(); ++c) {
        if (c == a || c == b) continue;
        if (g.is_undirected(a, c) && !g.is_ambiguous(a, c) && g.has_directed(c, b))
            middles.push_back(c);
    }
    for (size_t i = 0; i < middles.size(); ++i)
        for (size_t j = i + 1; j < middles.size(); ++j) {
            const int ci = middles[i], cj = middles[j];
            if (g.adjacent(ci, cj)) continue;  // the pair bound assumes non-adjacency
            hit.fired = true;
            const double part = pair_combine(
                pair_combine(ledger.p1_value(a, ci), p2_of(ledger, ci, b), policy),
                pair_combine(ledger.p1_value(a, cj), p2_of(ledger, cj, b), policy), policy);
            hit.contribution += part;
            hit.firing.directed_antecedents.push_back({ci, b});
            hit.firing.directed_antecedents.push_back({cj, b});
            hit.firing.undirected_antecedents.push_back(unordered(a, ci));
            hit.firing.undirected_antecedents.push_back(unordered(a, cj));
        }
    return hit;
}

void unorient_and_mark(MixedGraph& g, PValueLedger& ledger, int i, int j) {
    if (!g.adjacent(i, j)) return;
    g.set_mark(i, j, EdgeMark::Undirected);
    g.set_ambiguous(i, j, true);
    // The edge reverts to its adjacency hypothesis.
    ledger.p2.erase({i, j});
    ledger.p2.erase({j, i});
    const auto it = ledger.skeleton_identifiers.find({i, j});
    PCP_CHECK(it != ledger.skeleton_identifiers.end(), "unorient: missing skeleton identifier");
    ledger.identifiers[{i, j}] = it->second;
    ledger.identifiers[{j, i}] = it->second;
}

void transfer_undirected_pvalues(const MixedGraph& g, PValueLedger& ledger) {
    for (const auto& [i, j] : g.edge_pairs()) {
        if (g.mark(i, j) != EdgeMark::Undirected) continue;
        if (ledger.p2.count({i, j}) || ledger.p2.count({j, i})) continue;
        const double p = ledger.p1_value(i, j);
        ledger.p2[{i, j}] = p;
        ledger.p2[{j, i}] = p;
    }
}

}  // namespace

double bound_rule1(double p_ab, std::span<const double> p_into_a) {
    if (p_into_a.empty()) throw DataError("bound_rule1: empty antecedent list");
    double sum = 0.0;
    for (double p : p_into_a) sum += p;
    return std::min(1.0, std::max(p_ab, sum));
}

double bound_rule2(double p_ab, std::span<const std::pair<double, double>> chains) {
    if (chains.empty()) throw DataError("bound_rule2: empty chain list");
    double sum = 0.0;
    for (const auto& [p_ac, p_cb] : chains) sum += std::max(p_ac, p_cb);
    return std::min(1.0, std::max(p_ab, sum));
}

double bound_rule3(double p_ab, std::span<const std::pair<double, double>> paths) {
    if (paths.size() < 2) throw DataError("bound_rule3: need at least two paths");
    double sum = 0.0;
    for (size_t i = 0; i < paths.size(); ++i)
        for (size_t j = i + 1; j < paths.size(); ++j)
            sum += std::max({paths[i].first, paths[i].second, paths[j].first, paths[j].second});
    return std::min(1.0, std::max(p_ab, sum));
}

void apply_orientation_rules(MixedGraph& graph, PValueLedger& ledger, BoundPolicy policy,
                             bool ambiguation) {
    const int d = graph.vertex_count();
    const int max_iterations = 2 * d * d + 4;
    int iteration = 0;

    while (true) {
        PCP_CHECK(++iteration <= max_iterations, "orientation rules: no fixpoint");

        const MixedGraph start = graph;
        MixedGraph shadow = graph;
        std::map<OrderedPair, double> accum;  // this iteration's contribution sums
        std::map<OrderedPair, std::vector<Firing>> provenance;
        std::map<OrderedPair, uint64_t> last_arrow;
        uint64_t seq = 0;
        bool fired_any = false;

        auto apply_rule = [&](auto&& rule) {
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) {
                    if (a == b) continue;
                    if (!start.is_undirected(a, b) || start.is_ambiguous(a, b)) continue;
                    RuleHit hit = rule(start, ledger, a, b, policy);
                    if (!hit.fired) continue;
                    fired_any = true;
                    shadow.add_arrowhead(a, b);
                    last_arrow[{a, b}] = ++seq;
                    accum[{a, b}] += hit.contribution;
                    provenance[{a, b}].push_back(std::move(hit.firing));
                }
        };
        apply_rule(rule1);
        apply_rule(rule2);
        apply_rule(rule3);

        if (!fired_any) break;

        if (ambiguation) {
            MixedGraph resolved = shadow;
            for (const auto& [i, j] : shadow.edge_pairs()) {
                if (!shadow.is_bidirected(i, j)) continue;
                unorient_and_mark(resolved, ledger, i, j);
                // Roll back the direct antecedents of every rule firing
                // that produced either arrowhead (one step only).
                for (const auto& key : {OrderedPair{i, j}, OrderedPair{j, i}}) {
                    const auto it = provenance.find(key);
                    if (it == provenance.end()) continue;
                    for (const Firing& firing : it->second) {
                        for (const auto& [t, h] : firing.directed_antecedents)
                            unorient_and_mark(resolved, ledger, t, h);
                        for (const auto& [u, v] : firing.undirected_antecedents)
                            unorient_and_mark(resolved, ledger, u, v);
                    }
                }
            }
            graph = resolved;
        } else {
            MixedGraph resolved = shadow;
            for (const auto& [i, j] : shadow.edge_pairs()) {
                if (!shadow.is_bidirected(i, j)) continue;
                const uint64_t fwd = last_arrow.at({i, j});
                const uint64_t bwd = last_arrow.at({j, i});
                resolved.set_mark(i, j,
                                  fwd > bwd ? EdgeMark::DirectedForward : EdgeMark::DirectedBackward);
            }
            graph = resolved;
        }

        for (const auto& [pair, contribution] : accum) {
            const auto [a, b] = pair;
            if (!graph.has_directed(a, b) || start.has_directed(a, b)) continue;
            ledger.p2[pair] = outer_combine(ledger.p1_value(a, b), contribution, policy);
            ledger.identifiers[pair] = ledger.fresh_identifier();
            ledger.identifiers.erase({b, a});
        }
    }

    transfer_undirected_pvalues(graph, ledger);
}

void legacy_apply_orientation_rules(MixedGraph& graph, PValueLedger& ledger, BoundPolicy policy) {
    const int d = graph.vertex_count();
    bool changed = true;
    while (changed) {
        changed = false;
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                if (a == b || !graph.is_undirected(a, b) || graph.is_ambiguous(a, b)) continue;
                RuleHit hit = rule1(graph, ledger, a, b, policy);
                if (!hit.fired) hit = rule2(graph, ledger, a, b, policy);
                if (!hit.fired) hit = rule3(graph, ledger, a, b, policy);
                if (!hit.fired) continue;
                graph.set_mark(a, b, EdgeMark::DirectedForward);
                ledger.p2[{a, b}] = outer_combine(ledger.p1_value(a, b), hit.contribution, policy);
                ledger.identifiers[{a, b}] = ledger.fresh_identifier();
                ledger.identifiers.erase({b, a});
                changed = true;
            }
    }
    transfer_undirected_pvalues(graph, ledger);
}

}  // namespace pcp
