#ifndef PCP_TEST_ORACLES_HPP
#define PCP_TEST_ORACLES_HPP

// Independent reference implementations used only by tests. Each one
// deliberately takes the slow, direct route (path enumeration, class
// enumeration, textbook recursions) so it shares no code path with the
// library implementation it checks.

#include <span>
#include <vector>

#include "pcp/citest.hpp"
#include "pcp/graph.hpp"

namespace pcp::testing {

/// d-separation by enumerating every simple path and checking the
/// collider/non-collider blocking rule on each.
bool d_separated_bruteforce(const Dag& dag, int x, int y, std::span<const int> z);

/// CPDAG via the definition: enumerate every acyclic orientation of the
/// skeleton, keep the ones with identical d-separation fingerprints, and
/// direct exactly the edges oriented the same way in all of them.
MixedGraph cpdag_by_enumeration(const Dag& dag);

/// All DAGs in dag's Markov equivalence class (same fingerprint).
std::vector<Dag> markov_equivalence_class(const Dag& dag);

/// Classical recursive formula for the partial correlation.
double partial_correlation_recursive(const DatasetStats& stats, int a, int b,
                                     std::vector<int> s);

/// Supremum of { alpha : estimator(alpha) <= q } located by interval
/// scanning plus bisection, using an independently coded estimator.
double alpha_star_search(std::span<const double> pvals, double q);

/// The independently coded estimator backing alpha_star_search.
double by_estimate_reference(std::span<const double> pvals, double alpha);

}  // namespace pcp::testing

#endif
