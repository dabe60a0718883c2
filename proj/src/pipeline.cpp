#include "pcp/pipeline.hpp"

#include <chrono>

#include "pcp/error.hpp"
#include "pcp/meek.hpp"

namespace pcp {

void VariantConfig::normalize() {
    if (legacy_pc) {
        stable = false;
        ambiguation = false;
    }
}

std::string VariantConfig::name() const {
    if (legacy_pc) return "legacy";
    if (policy == BoundPolicy::NonRobust) return "no-robust";
    if (stable && ambiguation) return "pcp";
    if (!stable && ambiguation) return "no-stable";
    if (stable && !ambiguation) return "no-ambig";
    return "no-both";
}

VariantConfig VariantConfig::preset(const std::string& name) {
    VariantConfig v;
    if (name == "pcp") {
    } else if (name == "no-robust") {
        v.policy = BoundPolicy::NonRobust;
    } else if (name == "no-stable") {
        v.stable = false;
    } else if (name == "no-ambig") {
        v.ambiguation = false;
    } else if (name == "no-both") {
        v.stable = false;
        v.ambiguation = false;
    } else if (name == "legacy") {
        v.legacy_pc = true;
    } else {
        throw DataError("unknown variant: " + name);
    }
    v.normalize();
    return v;
}

const std::vector<std::string>& VariantConfig::all_names() {
    static const std::vector<std::string> names{"pcp",      "no-robust", "no-ambig",
                                                "no-stable", "no-both",   "legacy"};
    return names;
}

RunReport run_pipeline(const CiTester& tester, const VariantConfig& variant_in,
                       const PipelineOptions& options, const MixedGraph* truth) {
    const auto t0 = std::chrono::steady_clock::now();

    VariantConfig variant = variant_in;
    variant.normalize();
    const CountingTester counting(tester);
    const int d = tester.variable_count();

    SkeletonConfig skel;
    skel.alpha = options.alpha;
    skel.l_max = options.l_max;
    skel.mode = variant.stable ? SkeletonMode::Stable : SkeletonMode::Legacy;
    skel.order = options.order;

    RunReport report;
    report.variant = variant;

    auto [graph, ledger] = discover_skeleton(counting, skel, d);

    if (variant.legacy_pc) {
        legacy_orient_v_structures(graph, ledger, counting, options.l_max, variant.policy);
        legacy_apply_orientation_rules(graph, ledger, variant.policy);
    } else {
        orient_v_structures(graph, ledger, counting, options.l_max, variant.policy,
                            variant.ambiguation);
        apply_orientation_rules(graph, ledger, variant.policy, variant.ambiguation);
    }

    report.graph = graph;
    report.hypotheses = collect_hypotheses(graph, ledger);

    const std::vector<double> q_grid = options.q_grid.empty() ? default_q_grid() : options.q_grid;
    const std::vector<double> alpha_grid =
        options.alpha_grid.empty() ? default_alpha_grid() : options.alpha_grid;

    if (truth) {
        report.fdr = evaluate_against_truth(graph, report.hypotheses, *truth, q_grid, alpha_grid,
                                            options.q_control);
        report.has_truth = true;
    } else {
        report.fdr = estimate_only(graph, report.hypotheses, alpha_grid, options.q_control);
    }

    report.ledger = std::move(ledger);
    report.ci_test_count = counting.count();
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

MixedGraph true_cpdag(const Dag& dag) {
    const OracleTester oracle(dag);
    const int d = dag.vertex_count();

    SkeletonConfig skel;
    skel.alpha = 0.5;      // oracle p-values are exactly 0 or 1
    skel.l_max = d;        // no conditioning cap
    skel.mode = SkeletonMode::Stable;

    auto [graph, ledger] = discover_skeleton(oracle, skel, d);
    orient_v_structures(graph, ledger, oracle, d, BoundPolicy::Robust, true);
    apply_orientation_rules(graph, ledger, BoundPolicy::Robust, true);

    PCP_CHECK(graph.bidirected_count() == 0, "true_cpdag: bidirected edge in output");
    PCP_CHECK(graph.ambiguous_count() == 0, "true_cpdag: ambiguous edge in output");
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            PCP_CHECK(graph.adjacent(i, j) == dag.adjacent(i, j),
                      "true_cpdag: adjacency mismatch with the DAG");
    return graph;
}

}  // namespace pcp
