#include "doctest.h"

#include <algorithm>
#include <vector>

#include "oracles.hpp"
#include "pcp/error.hpp"
#include "pcp/fdr.hpp"
#include "pcp/rng.hpp"

using namespace pcp;

namespace {

const std::vector<double> kFixture{0.001, 0.001, 0.025, 0.025, 0.15};

std::vector<double> random_pvals(Rng& rng, int max_m) {
    const int m = 1 + static_cast<int>(rng.next_below(max_m));
    std::vector<double> p(m);
    for (auto& v : p) v = rng.next_double();
    return p;
}

}  // namespace

TEST_CASE("harmonic number accumulates exactly") {
    CHECK(harmonic_number(1) == 1.0);
    CHECK(harmonic_number(5) == doctest::Approx(137.0 / 60.0).epsilon(1e-15));
}

TEST_CASE("by estimate") {
    const std::vector<double> single{0.5};
    CHECK(by_estimate(single, 0.05) == doctest::Approx(0.05));  // R = 0 guard

    CHECK(by_estimate(kFixture, 0.03) == doctest::Approx(0.085625).epsilon(1e-12));

    CHECK(by_estimate(kFixture, 0.0) == 0.0);
    CHECK_THROWS_AS(by_estimate({}, 0.05), DataError);
}

TEST_CASE("by estimate is non-decreasing between p-value crossings") {
    const std::vector<double> p{0.02, 0.05, 0.3};
    double prev = by_estimate(p, 0.051);
    for (double a = 0.051; a < 0.299; a += 0.001) {
        const double cur = by_estimate(p, a);
        CHECK(cur >= prev);
        prev = cur;
    }
    // ... and it drops at a crossing.
    CHECK(by_estimate(p, 0.3) < by_estimate(p, 0.299));
}

TEST_CASE("by alpha star") {
    const std::vector<double> single{0.01};
    CHECK(by_alpha_star(single, 0.1) == doctest::Approx(0.1));

    const std::vector<double> hopeless{1.0, 1.0, 1.0};
    CHECK(by_alpha_star(hopeless, 0.1) == 0.0);

    CHECK(by_alpha_star(kFixture, 0.1) == doctest::Approx(24.0 / 685.0).epsilon(1e-12));
    CHECK_THROWS_AS(by_alpha_star({}, 0.1), DataError);
}

TEST_CASE("closed-form alpha star matches the search oracle") {
    Rng rng(90210);
    for (int trial = 0; trial < 300; ++trial) {
        Rng local = rng.split(trial);
        const std::vector<double> p = random_pvals(local, 50);
        for (double q : {0.01, 0.05, 0.1}) {
            const double closed = by_alpha_star(p, q);
            const double searched = testing::alpha_star_search(p, q);
            CHECK(std::abs(closed - searched) <= 1e-9);
            CHECK(by_estimate(p, closed) <= q);

            // Exactly k* p-values at or below the threshold.
            const int rejected =
                static_cast<int>(std::count_if(p.begin(), p.end(),
                                               [&](double v) { return v <= closed; }));
            if (closed > 0.0) {
                const double scale = q / (p.size() * harmonic_number(static_cast<int>(p.size())));
                CHECK(closed == doctest::Approx(scale * rejected).epsilon(1e-12));
            } else {
                CHECK(rejected == 0);
            }
        }
    }
}

TEST_CASE("pruning removes exactly the hypotheses above the threshold") {
    // The five-edge graph whose weakest edge is the extra B -> D.
    const int A = 0, B = 1, C = 2, D = 3, E = 4;
    MixedGraph graph(5);
    graph.set_mark(A, C, EdgeMark::DirectedForward);
    graph.set_mark(B, C, EdgeMark::DirectedForward);
    graph.set_mark(C, D, EdgeMark::DirectedForward);
    graph.set_mark(E, D, EdgeMark::DirectedForward);
    graph.set_mark(B, D, EdgeMark::DirectedForward);

    HypothesisSet hypotheses;
    const std::vector<std::pair<std::pair<int, int>, double>> edges{
        {{A, C}, 0.025}, {{B, C}, 0.025}, {{C, D}, 0.001}, {{E, D}, 0.001}, {{B, D}, 0.15}};
    uint64_t token = 1;
    for (const auto& [edge, p] : edges)
        hypotheses.entries.push_back({token++, p, {{edge.first, edge.second, true}}});

    const double alpha_star = by_alpha_star(hypotheses.pvalues(), 0.1);
    CHECK(alpha_star == doctest::Approx(24.0 / 685.0));

    const MixedGraph pruned = prune_graph(graph, hypotheses, alpha_star);
    CHECK(pruned.edge_count() == 4);
    CHECK_FALSE(pruned.adjacent(B, D));
    for (const auto& [edge, p] : edges)
        if (edge != std::pair<int, int>{B, D}) CHECK(pruned.has_directed(edge.first, edge.second));

    CHECK(prune_graph(graph, hypotheses, 1.0).edge_count() == 5);
    CHECK(prune_graph(graph, hypotheses, 0.0).edge_count() == 0);

    // An uncovered edge is an integrity error.
    MixedGraph extra = graph;
    extra.set_mark(A, E, EdgeMark::Undirected);
    CHECK_THROWS_AS(prune_graph(extra, hypotheses, 0.5), InternalError);
}

TEST_CASE("realized fdr is the false fraction of rejections") {
    const std::vector<double> p{0.01, 0.02, 0.03, 0.04, 0.5};
    const std::vector<uint8_t> correct{1, 1, 1, 0, 1};
    CHECK(realized_fdr(p, correct, 0.05) == doctest::Approx(0.25));
    CHECK(realized_fdr(p, correct, 0.005) == 0.0);  // nothing rejected
}

TEST_CASE("under and over metrics from crafted runs") {
    // One hypothesis set, truth makes two of five hypotheses false.
    MixedGraph estimated(3);
    estimated.set_mark(0, 1, EdgeMark::Undirected);
    estimated.set_mark(1, 2, EdgeMark::Undirected);
    MixedGraph truth(3);
    truth.set_mark(0, 1, EdgeMark::Undirected);

    HypothesisSet hypotheses;
    hypotheses.entries.push_back({1, 0.01, {{0, 1, false}}});   // correct
    hypotheses.entries.push_back({2, 0.02, {{1, 2, false}}});   // false
    const std::vector<double> q_grid{0.10};
    const std::vector<double> alpha_grid{0.05};

    const FdrReport report =
        evaluate_against_truth(estimated, hypotheses, truth, q_grid, alpha_grid, 0.1);

    // At alpha = 0.05 both are rejected: realized FDR 0.5, estimate
    // 2 * 0.05 * 1.5 / 2 = 0.075 -> under-estimation 0.425.
    CHECK(report.realized_curve[0] == doctest::Approx(0.5));
    CHECK(report.estimates[0] == doctest::Approx(0.075));
    CHECK(report.mean_ue == doctest::Approx(0.425));
    CHECK(report.mean_oe == 0.0);

    // alpha*(0.1) rejects both -> realized 0.5 -> under-control 0.4.
    CHECK(report.mean_uc == doctest::Approx(0.4));
    CHECK(report.mean_oc == 0.0);
    CHECK(report.shd_value == 1);
}

TEST_CASE("evaluation against itself is clean") {
    MixedGraph graph(4);
    graph.set_mark(0, 1, EdgeMark::DirectedForward);
    graph.set_mark(1, 2, EdgeMark::Undirected);

    HypothesisSet hypotheses;
    hypotheses.entries.push_back({1, 0.01, {{0, 1, true}}});
    hypotheses.entries.push_back({2, 0.04, {{1, 2, false}}});

    const FdrReport report = evaluate_against_truth(graph, hypotheses, graph, default_q_grid(),
                                                    default_alpha_grid(), 0.1);
    CHECK(report.mean_uc == 0.0);
    CHECK(report.mean_ue == 0.0);
    CHECK(report.mean_oe >= 0.0);
    CHECK(report.shd_value == 0);
    for (double r : report.realized_curve) CHECK(r == 0.0);
}

TEST_CASE("default grids") {
    const auto q = default_q_grid();
    const auto a = default_alpha_grid();
    REQUIRE(q.size() == 100);
    REQUIRE(a.size() == 100);
    CHECK(q.front() == doctest::Approx(0.001));
    CHECK(q.back() == doctest::Approx(0.1));
    CHECK(a.front() == doctest::Approx(1e-10));
    CHECK(a.back() == doctest::Approx(0.1));
}
