#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "pcp/citest.hpp"
#include "pcp/rng.hpp"
#include "pcp/simgen.hpp"
#include "pcp/skeleton.hpp"

using namespace pcp;

namespace {

// A=0, B=1, C=2, D=3, E=4 with edges A->E, A->C, A->D, C->E, D->E,
// B->C, B->E, C->D.
Dag five_vertex_dag() {
    return Dag(5, {{0, 4}, {0, 2}, {0, 3}, {2, 4}, {3, 4}, {1, 2}, {1, 4}, {2, 3}});
}

// The injected mistake: C and D are declared independent given {A, E}
// even though they are adjacent.
ScriptedTester with_type2_error(const OracleTester& oracle) {
    ScriptedTester scripted(oracle);
    scripted.script(2, 3, {0, 4}, true);
    return scripted;
}

std::set<std::pair<int, int>> adjacency_set(const MixedGraph& g) {
    std::set<std::pair<int, int>> out;
    for (const auto& e : g.edge_pairs()) out.insert(e);
    return out;
}

// Both removals: the true non-edge B-D and the erroneously separated C-D.
const std::set<std::pair<int, int>> kSevenEdges{{0, 2}, {0, 3}, {0, 4}, {1, 2},
                                                {1, 4}, {2, 4}, {3, 4}};
// Only C-D removed; the spurious B-D survives.
const std::set<std::pair<int, int>> kEightEdges{{0, 2}, {0, 3}, {0, 4}, {1, 2},
                                                {1, 3}, {1, 4}, {2, 4}, {3, 4}};

std::map<OrderedPair, std::vector<std::vector<int>>> canonical_sepsets(const PValueLedger& l) {
    auto sepsets = l.sepsets;
    for (auto& [pair, list] : sepsets) std::sort(list.begin(), list.end());
    return sepsets;
}

}  // namespace

TEST_CASE("oracle skeleton of a chain") {
    const OracleTester oracle(Dag(3, {{0, 1}, {1, 2}}));
    SkeletonConfig config;
    config.alpha = 0.5;
    config.l_max = 2;
    const auto [graph, ledger] = discover_skeleton(oracle, config, 3);

    CHECK(graph.is_undirected(0, 1));
    CHECK(graph.is_undirected(1, 2));
    CHECK_FALSE(graph.adjacent(0, 2));
    CHECK(ledger.sepset_list(0, 2) == std::vector<std::vector<int>>{{1}});
    CHECK(ledger.p1_value(0, 1) == 0.0);
    CHECK(ledger.p1_value(2, 1) == 0.0);
    CHECK_FALSE(ledger.has_p1(0, 2));

    // Shared identifier in both orderings.
    CHECK(ledger.identifiers.at({0, 1}) == ledger.identifiers.at({1, 0}));
}

TEST_CASE("stable mode reproduces the seven-edge skeleton for any order") {
    const OracleTester oracle(five_vertex_dag());
    const ScriptedTester scripted = with_type2_error(oracle);

    const std::vector<std::vector<int>> orders{
        {},               // identity
        {0, 3, 1, 2, 4},  // the order that also traps the legacy mode
        {0, 2, 3, 1, 4},  // the order that spares B-D in legacy mode
        {4, 3, 2, 1, 0},
    };
    for (const auto& order : orders) {
        SkeletonConfig config;
        config.alpha = 0.2;
        config.l_max = 2;
        config.order = order;
        const auto [graph, ledger] = discover_skeleton(scripted, config, 5);
        CHECK(adjacency_set(graph) == kSevenEdges);
        CHECK(ledger.sepset_list(1, 3) == std::vector<std::vector<int>>{{0, 2}});
        CHECK(ledger.sepset_list(2, 3) == std::vector<std::vector<int>>{{0, 4}});
    }
}

TEST_CASE("legacy mode depends on the enumeration order") {
    const OracleTester oracle(five_vertex_dag());
    const ScriptedTester scripted = with_type2_error(oracle);

    SkeletonConfig config;
    config.alpha = 0.2;
    config.l_max = 2;
    config.mode = SkeletonMode::Legacy;

    config.order = {0, 3, 1, 2, 4};  // (A, D, B, C, E)
    const auto [graph1, ledger1] = discover_skeleton(scripted, config, 5);
    CHECK(adjacency_set(graph1) == kSevenEdges);

    config.order = {0, 2, 3, 1, 4};  // (A, C, D, B, E)
    const auto [graph2, ledger2] = discover_skeleton(scripted, config, 5);
    CHECK(adjacency_set(graph2) == kEightEdges);
}

TEST_CASE("finalize collapses p1 cells to their maximum") {
    PValueLedger ledger;
    ledger.store_p1(0, 1, 0.03);
    ledger.store_p1(0, 1, 0.04);
    ledger.store_p1(1, 2, 0.01);
    finalize_edge_pvalues(ledger);
    CHECK(ledger.p1_value(0, 1) == 0.04);
    CHECK(ledger.p1_value(1, 0) == 0.04);
    CHECK(ledger.p1_value(1, 2) == 0.01);

    const auto before = ledger.p1;
    const auto ids = ledger.identifiers;
    finalize_edge_pvalues(ledger);  // idempotent
    CHECK(ledger.p1 == before);
    CHECK(ledger.identifiers == ids);
}

TEST_CASE("stable skeleton output is identical across enumeration orders") {
    Rng rng(2024);
    for (int trial = 0; trial < 5; ++trial) {
        Rng local = rng.split(trial);
        const Dag dag = random_dag(12, 2, 2, local);
        const SemModel sem = random_sem(dag, local);
        const FisherZTester tester(DatasetStats::from_data(sample_dataset(sem, 300, local)));

        SkeletonConfig config;
        config.alpha = 0.2;
        config.l_max = 2;
        const auto [reference_graph, reference_ledger] = discover_skeleton(tester, config, 12);

        for (int perm = 0; perm < 4; ++perm) {
            std::vector<int> order(12);
            for (int i = 0; i < 12; ++i) order[i] = i;
            Rng shuffler = local.split(100 + perm);
            shuffler.shuffle(order);
            config.order = order;
            const auto [graph, ledger] = discover_skeleton(tester, config, 12);
            CHECK(graph == reference_graph);
            CHECK(ledger.p1 == reference_ledger.p1);
            CHECK(ledger.identifiers == reference_ledger.identifiers);
            CHECK(canonical_sepsets(ledger) == canonical_sepsets(reference_ledger));
        }
    }
}

TEST_CASE("oracle skeleton recovers the true adjacency structure") {
    Rng rng(31337);
    for (int trial = 0; trial < 25; ++trial) {
        Rng local = rng.split(trial);
        const int n = 4 + static_cast<int>(local.next_below(7));  // up to 10
        const Dag dag = random_dag(n, 2, 2, local);
        const OracleTester oracle(dag);
        SkeletonConfig config;
        config.alpha = 0.5;
        config.l_max = n;  // unbounded in effect
        const auto [graph, ledger] = discover_skeleton(oracle, config, n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) CHECK(graph.adjacent(i, j) == dag.adjacent(i, j));
    }
}

TEST_CASE("stored p1 values never exceed alpha") {
    Rng rng(5150);
    const Dag dag = random_dag(10, 2, 2, rng);
    const SemModel sem = random_sem(dag, rng);
    const FisherZTester tester(DatasetStats::from_data(sample_dataset(sem, 150, rng)));
    SkeletonConfig config;
    config.alpha = 0.2;
    config.l_max = 2;
    const auto [graph, ledger] = discover_skeleton(tester, config, 10);
    for (const auto& [pair, cell] : ledger.p1) {
        REQUIRE(cell.size() == 1);
        CHECK(cell.front() <= config.alpha);
    }
    // Every surviving edge has a finalized cell; every deleted pair has none.
    for (int i = 0; i < 10; ++i)
        for (int j = i + 1; j < 10; ++j) CHECK(graph.adjacent(i, j) == ledger.has_p1(i, j));
}

TEST_CASE("raising alpha never deletes an edge a lower alpha retained") {
    const OracleTester oracle(five_vertex_dag());
    const ScriptedTester scripted = with_type2_error(oracle);
    for (const auto mode : {SkeletonMode::Stable, SkeletonMode::Legacy}) {
        SkeletonConfig low, high;
        low.alpha = 0.05;
        high.alpha = 0.3;
        low.l_max = high.l_max = 2;
        low.mode = high.mode = mode;
        const auto [graph_low, l1] = discover_skeleton(scripted, low, 5);
        const auto [graph_high, l2] = discover_skeleton(scripted, high, 5);
        const auto edges_low = adjacency_set(graph_low);
        const auto edges_high = adjacency_set(graph_high);
        for (const auto& e : edges_high) CHECK(edges_low.count(e) == 1);
    }
}
