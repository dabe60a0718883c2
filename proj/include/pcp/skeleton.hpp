#ifndef PCP_SKELETON_HPP
#define PCP_SKELETON_HPP

#include <utility>
#include <vector>

#include "pcp/citest.hpp"
#include "pcp/graph.hpp"
#include "pcp/ledger.hpp"

namespace pcp {

enum class SkeletonMode {
    /// Adjacency sets are snapshotted once per conditioning-set size, so
    /// the outcome does not depend on the enumeration order.
    Stable,
    /// Classic behaviour: live adjacency sets, first separating set wins.
    Legacy,
};

struct SkeletonConfig {
    double alpha = 0.2;
    int l_max = 2;
    SkeletonMode mode = SkeletonMode::Stable;
    /// Vertex permutation driving pair and subset enumeration order.
    /// Empty means identity. Stable mode produces identical output for
    /// every permutation; Legacy mode generally does not.
    std::vector<int> order;
};

/// Level-wise conditional-independence search starting from the complete
/// graph. Deletes an edge when some test on a subset of a neighbourhood
/// exceeds alpha, records separating sets, stores the significant
/// p-values of surviving edges, and finalizes them (max per pair plus a
/// shared identifier).
std::pair<MixedGraph, PValueLedger> discover_skeleton(const CiTester& tester,
                                                      const SkeletonConfig& config, int d);

/// Collapses every nonempty p1 cell to its maximum and assigns one
/// identifier per surviving pair (same token in both orderings).
/// Idempotent.
void finalize_edge_pvalues(PValueLedger& ledger);

}  // namespace pcp

#endif
