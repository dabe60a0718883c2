#include "doctest.h"

#include <utility>
#include <vector>

#include "pcp/citest.hpp"
#include "pcp/error.hpp"
#include "pcp/meek.hpp"
#include "pcp/rng.hpp"
#include "pcp/simgen.hpp"
#include "pcp/skeleton.hpp"

using namespace pcp;

namespace {

using Pairs = std::vector<std::pair<double, double>>;

void give_directed(PValueLedger& ledger, int tail, int head, double p2) {
    ledger.p2[{tail, head}] = p2;
    ledger.identifiers[{tail, head}] = ledger.fresh_identifier();
    ledger.identifiers.erase({head, tail});
}

}  // namespace

TEST_CASE("rule 1 bound") {
    const std::vector<double> one{0.01};
    CHECK(bound_rule1(0.04, one) == doctest::Approx(0.04));
    const std::vector<double> two{0.02, 0.03};
    CHECK(bound_rule1(0.01, two) == doctest::Approx(0.05));
    const std::vector<double> big{0.6, 0.7};
    CHECK(bound_rule1(0.5, big) == 1.0);
    CHECK_THROWS_AS(bound_rule1(0.5, {}), DataError);
}

TEST_CASE("rule 2 bound") {
    const Pairs one{{0.01, 0.03}};
    CHECK(bound_rule2(0.02, one) == doctest::Approx(0.03));
    const Pairs two{{0.01, 0.03}, {0.04, 0.02}};
    CHECK(bound_rule2(0.10, two) == doctest::Approx(0.10));
    const Pairs zero{{0.0, 0.0}};
    CHECK(bound_rule2(0.0, zero) == 0.0);
    CHECK_THROWS_AS(bound_rule2(0.5, {}), DataError);
}

TEST_CASE("rule 3 bound") {
    const Pairs two{{0.01, 0.03}, {0.04, 0.02}};
    CHECK(bound_rule3(0.02, two) == doctest::Approx(0.04));
    const Pairs three{{0.01, 0.01}, {0.01, 0.01}, {0.01, 0.01}};
    CHECK(bound_rule3(0.0, three) == doctest::Approx(0.03));
    const Pairs zeros{{0.0, 0.0}, {0.0, 0.0}};
    CHECK(bound_rule3(0.0, zeros) == 0.0);
    const Pairs single{{0.1, 0.1}};
    CHECK_THROWS_AS(bound_rule3(0.5, single), DataError);
}

TEST_CASE("opposing rule-1 firings ambiguate the edge and its antecedents") {
    // A - B with D -> A, C -> A, E -> B, F -> B; every arrow tail is
    // non-adjacent to the opposite endpoint, so rule 1 fires both ways.
    const int A = 0, B = 1, C = 2, D = 3, E = 4, F = 5;
    MixedGraph graph(6);
    graph.set_mark(A, B, EdgeMark::Undirected);
    graph.set_mark(D, A, EdgeMark::DirectedForward);
    graph.set_mark(C, A, EdgeMark::DirectedForward);
    graph.set_mark(E, B, EdgeMark::DirectedForward);
    graph.set_mark(F, B, EdgeMark::DirectedForward);

    PValueLedger ledger;
    for (const auto& [i, j] : graph.edge_pairs()) ledger.store_p1(i, j, 0.01 * (i + j));
    finalize_edge_pvalues(ledger);
    give_directed(ledger, D, A, 0.02);
    give_directed(ledger, C, A, 0.03);
    give_directed(ledger, E, B, 0.04);
    give_directed(ledger, F, B, 0.05);

    apply_orientation_rules(graph, ledger, BoundPolicy::Robust, true);

    CHECK(graph.directed_count() == 0);
    CHECK(graph.bidirected_count() == 0);
    CHECK(graph.ambiguous_count() == 5);
    for (const auto& [i, j] : graph.edge_pairs()) {
        CHECK(graph.is_ambiguous(i, j));
        // Back to the adjacency hypothesis.
        CHECK(ledger.p2.at({i, j}) == ledger.p1_value(i, j));
        CHECK(ledger.identifiers.at({i, j}) == ledger.skeleton_identifiers.at({i, j}));
    }
}

TEST_CASE("rules 2 and 3 both contribute to one edge") {
    // A - B, A - C, A - D undirected; A -> E, C -> B, D -> B, F -> E,
    // E -> B directed.
    const int A = 0, B = 1, C = 2, D = 3, E = 4, F = 5;
    MixedGraph graph(6);
    graph.set_mark(A, B, EdgeMark::Undirected);
    graph.set_mark(A, C, EdgeMark::Undirected);
    graph.set_mark(A, D, EdgeMark::Undirected);
    graph.set_mark(A, E, EdgeMark::DirectedForward);
    graph.set_mark(C, B, EdgeMark::DirectedForward);
    graph.set_mark(D, B, EdgeMark::DirectedForward);
    graph.set_mark(F, E, EdgeMark::DirectedForward);
    graph.set_mark(E, B, EdgeMark::DirectedForward);

    PValueLedger ledger;
    ledger.store_p1(A, B, 0.05);
    ledger.store_p1(A, C, 0.03);
    ledger.store_p1(A, D, 0.02);
    ledger.store_p1(A, E, 0.01);
    ledger.store_p1(C, B, 0.06);
    ledger.store_p1(D, B, 0.015);
    ledger.store_p1(F, E, 0.01);
    ledger.store_p1(E, B, 0.04);
    finalize_edge_pvalues(ledger);
    give_directed(ledger, A, E, 0.01);
    give_directed(ledger, C, B, 0.06);
    give_directed(ledger, D, B, 0.015);
    give_directed(ledger, F, E, 0.01);
    give_directed(ledger, E, B, 0.04);

    apply_orientation_rules(graph, ledger, BoundPolicy::Robust, true);

    CHECK(graph.has_directed(A, B));
    // rule 2 chain A -> E -> B: max(0.01, 0.04) = 0.04;
    // rule 3 pair (C, D): max(0.03, 0.06, 0.02, 0.015) = 0.06;
    // p2 = max(p1 = 0.05, 0.04 + 0.06) = 0.10.
    CHECK(ledger.p2.at({A, B}) == doctest::Approx(0.10));
    CHECK(ledger.identifiers.count({A, B}) == 1);
    CHECK(ledger.identifiers.count({B, A}) == 0);
}

TEST_CASE("orientation propagates across iterations") {
    MixedGraph graph(4);
    graph.set_mark(0, 1, EdgeMark::DirectedForward);
    graph.set_mark(1, 2, EdgeMark::Undirected);
    graph.set_mark(2, 3, EdgeMark::Undirected);

    PValueLedger ledger;
    ledger.store_p1(0, 1, 0.01);
    ledger.store_p1(1, 2, 0.02);
    ledger.store_p1(2, 3, 0.03);
    finalize_edge_pvalues(ledger);
    give_directed(ledger, 0, 1, 0.05);

    apply_orientation_rules(graph, ledger, BoundPolicy::Robust, true);

    CHECK(graph.has_directed(1, 2));
    CHECK(graph.has_directed(2, 3));
    CHECK(ledger.p2.at({1, 2}) == doctest::Approx(0.05));  // max(0.02, p2(0->1))
    CHECK(ledger.p2.at({2, 3}) == doctest::Approx(0.05));  // max(0.03, p2(1->2))
}

TEST_CASE("ambiguous edges are not usable as rule-3 antecedents") {
    // Middles 2 and 3 both point at vertex 1, but 0 - 2 is ambiguous, so
    // only one admissible path remains and rule 3 cannot fire.
    MixedGraph graph(4);
    graph.set_mark(0, 1, EdgeMark::Undirected);
    graph.set_mark(0, 2, EdgeMark::Undirected);
    graph.set_ambiguous(0, 2, true);
    graph.set_mark(0, 3, EdgeMark::Undirected);
    graph.set_mark(2, 1, EdgeMark::DirectedForward);
    graph.set_mark(3, 1, EdgeMark::DirectedForward);

    PValueLedger ledger;
    for (const auto& [i, j] : graph.edge_pairs()) ledger.store_p1(i, j, 0.01);
    finalize_edge_pvalues(ledger);
    give_directed(ledger, 2, 1, 0.02);
    give_directed(ledger, 3, 1, 0.02);

    apply_orientation_rules(graph, ledger, BoundPolicy::Robust, true);
    CHECK(graph.is_undirected(0, 1));

    // With both middles admissible the rule fires.
    graph.set_ambiguous(0, 2, false);
    apply_orientation_rules(graph, ledger, BoundPolicy::Robust, true);
    CHECK(graph.has_directed(0, 1));
}

TEST_CASE("all-if and first-match propagation agree on oracle inputs") {
    Rng rng(606);
    for (int trial = 0; trial < 20; ++trial) {
        Rng local = rng.split(trial);
        const int n = 4 + static_cast<int>(local.next_below(7));  // up to 10
        const Dag dag = random_dag(n, 2, 2, local);
        const OracleTester oracle(dag);

        SkeletonConfig config;
        config.alpha = 0.5;
        config.l_max = n;
        auto [graph, ledger] = discover_skeleton(oracle, config, n);
        orient_v_structures(graph, ledger, oracle, n, BoundPolicy::Robust, true);

        MixedGraph legacy_graph = graph;
        PValueLedger legacy_ledger = ledger;
        apply_orientation_rules(graph, ledger, BoundPolicy::Robust, true);
        legacy_apply_orientation_rules(legacy_graph, legacy_ledger, BoundPolicy::Robust);

        CHECK(shd(graph, legacy_graph) == 0);
        CHECK(graph.ambiguous_count() == 0);
        CHECK(shd(graph, true_cpdag(dag)) == 0);

        // Robust p2 dominates p1 on directed edges; all bounds in [0, 1].
        for (const auto& [pair, p2] : ledger.p2) {
            CHECK(p2 >= 0.0);
            CHECK(p2 <= 1.0);
            if (graph.has_directed(pair.first, pair.second))
                CHECK(p2 >= ledger.p1_value(pair.first, pair.second));
        }
        // Undirected leftovers carry their adjacency p-value symmetrically.
        for (const auto& [i, j] : graph.edge_pairs())
            if (graph.is_undirected(i, j)) {
                CHECK(ledger.p2.at({i, j}) == ledger.p1_value(i, j));
                CHECK(ledger.p2.at({j, i}) == ledger.p1_value(i, j));
            }
    }
}
