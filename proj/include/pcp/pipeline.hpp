#ifndef PCP_PIPELINE_HPP
#define PCP_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcp/citest.hpp"
#include "pcp/fdr.hpp"
#include "pcp/graph.hpp"
#include "pcp/ledger.hpp"
#include "pcp/skeleton.hpp"
#include "pcp/vstruct.hpp"

namespace pcp {

/// One cell of the ablation matrix. legacy_pc selects the classic
/// algorithm throughout (order-dependent skeleton, over-writing
/// orientations, first-match rules) and forces stable and ambiguation
/// off.
struct VariantConfig {
    bool stable = true;
    bool ambiguation = true;
    BoundPolicy policy = BoundPolicy::Robust;
    bool legacy_pc = false;

    void normalize();
    std::string name() const;
    static VariantConfig preset(const std::string& name);
    static const std::vector<std::string>& all_names();
};

struct PipelineOptions {
    double alpha = 0.2;
    int l_max = 2;
    std::vector<int> order;       // skeleton enumeration order; empty = identity
    std::vector<double> q_grid;   // empty = default grid
    std::vector<double> alpha_grid;
    double q_control = 0.1;
};

struct RunReport {
    VariantConfig variant;
    MixedGraph graph;
    PValueLedger ledger;
    HypothesisSet hypotheses;
    FdrReport fdr;
    bool has_truth = false;
    double wall_seconds = 0.0;
    uint64_t ci_test_count = 0;

    RunReport() : graph(1) {}
};

/// Skeleton -> v-structures -> orientation rules -> FDR, honoring the
/// variant flags. Metrics versus truth are filled when truth is given.
RunReport run_pipeline(const CiTester& tester, const VariantConfig& variant,
                       const PipelineOptions& options, const MixedGraph* truth = nullptr);

}  // namespace pcp

#endif
