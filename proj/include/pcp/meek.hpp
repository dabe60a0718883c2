#ifndef PCP_MEEK_HPP
#define PCP_MEEK_HPP

#include <span>
#include <utility>

#include "pcp/graph.hpp"
#include "pcp/ledger.hpp"
#include "pcp/vstruct.hpp"

namespace pcp {

/// Bound for orienting A - B via arrows C_i -> A whose tails are
/// non-adjacent to B: min(1, max{p_ab, sum_i p_ci_to_a}).
double bound_rule1(double p_ab, std::span<const double> p_into_a);

/// Bound for orienting A - B via directed chains A -> C_i -> B:
/// min(1, max{p_ab, sum_i max(p_a_to_ci, p_ci_to_b)}).
double bound_rule2(double p_ab, std::span<const std::pair<double, double>> chains);

/// Bound for orienting A - B via two or more paths A - C_i -> B with
/// pairwise non-adjacent middle vertices: for each of the n-choose-2
/// pairs take the max of its four constituent p-values, then
/// min(1, max{p_ab, sum over pairs}).
double bound_rule3(double p_ab, std::span<const std::pair<double, double>> paths);

/// Orientation-rule propagation to fixpoint. All three rules are
/// evaluated against the state at the start of each iteration and write
/// into a shadow copy; contributions accumulate per edge and per
/// iteration. Conflicting orientations become bidirected in the shadow;
/// with ambiguation on, the edge and every antecedent of the conflicting
/// rule applications are unoriented and labelled ambiguous, otherwise
/// the last-written direction is kept. Newly directed edges receive
/// p2 = max{p1, accumulated contributions} (min under NonRobust) and a
/// fresh identifier; undirected leftovers get p2 = p1 in both orderings.
void apply_orientation_rules(MixedGraph& graph, PValueLedger& ledger, BoundPolicy policy,
                             bool ambiguation);

/// Classic first-match propagation: rules tried in order on the live
/// graph, one rule per edge, p-values from the rule that fired.
void legacy_apply_orientation_rules(MixedGraph& graph, PValueLedger& ledger, BoundPolicy policy);

}  // namespace pcp

#endif
