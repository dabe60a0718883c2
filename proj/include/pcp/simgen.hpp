#ifndef PCP_SIMGEN_HPP
#define PCP_SIMGEN_HPP

#include <map>
#include <utility>
#include <vector>

#include "pcp/dataset.hpp"
#include "pcp/graph.hpp"
#include "pcp/rng.hpp"

namespace pcp {

/// Degree-bounded random DAG: draws a uniform vertex order, shuffles the
/// forward candidate pairs uniformly, and accepts each one the degree
/// caps allow. The resulting density tracks where the uniform
/// distribution over the degree-capped DAG family concentrates.
Dag random_dag(int p, int max_in, int max_out, Rng& rng);

/// Linear Gaussian structural model over a DAG: one coefficient per edge
/// and one noise standard deviation per vertex.
struct SemModel {
    Dag dag;
    std::map<std::pair<int, int>, double> weights;  // (parent, child) -> coefficient
    std::vector<double> noise_sd;
};

/// Coefficients are standard normal draws; noise standard deviations are
/// |standard normal| floored at 0.1 to avoid near-deterministic columns.
SemModel random_sem(const Dag& dag, Rng& rng);

/// n rows generated in topological order:
/// X_j = sum_i w(i, j) X_i + sd_j * eps_j with standard normal eps.
Dataset sample_dataset(const SemModel& sem, int n, Rng& rng);

}  // namespace pcp

#endif
