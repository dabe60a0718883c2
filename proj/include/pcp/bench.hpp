#ifndef PCP_BENCH_HPP
#define PCP_BENCH_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pcp/pipeline.hpp"

namespace pcp {

/// One benchmark tier: graphs of a given size with a given sample count.
struct BenchTier {
    int vertices;
    int samples;
    int replicates;
};

struct BenchConfig {
    std::string suite = "lowdim";  // lowdim | highdim
    int replicates = 0;            // 0 = suite default
    uint64_t seed = 1;
    std::string out_dir = ".";
    bool full_scale = false;  // highdim only: adds the 200/300-variable tiers
    double alpha = 0.2;
    int l_max = 2;
    double q_control = 0.1;
    int threads = 0;  // 0 = PCP_THREADS env or hardware concurrency
};

struct BenchRow {
    std::string suite;
    int vertices = 0, samples = 0, replicate = 0;
    uint64_t seed = 0;
    std::string variant;
    int m = 0;
    double alpha_star = 0, realized_fdr_at_star = 0;
    double mean_uc = 0, mean_oc = 0, mean_ue = 0, mean_oe = 0;
    std::vector<double> realized_samples;  // realized FDR at the sample alphas
    std::vector<double> estimate_samples;
    int shd_value = 0, edges = 0, directed = 0, ambiguous = 0;
    uint64_t ci_tests = 0;
    int dominance_violations = 0;  // robust vs non-robust, no-robust rows only
    double wall_ms = 0;
};

std::vector<BenchTier> bench_tiers(const BenchConfig& config);
const std::vector<double>& bench_sample_alphas();

/// Runs every variant on every replicate and writes results.csv,
/// aggregate.csv and timings.csv into out_dir. The result files are
/// byte-identical across reruns and thread counts; timings.csv is not.
void run_bench(const BenchConfig& config);

/// Worker-pool map over [0, count): deterministic per-index work items.
int resolve_thread_count(int requested);
void parallel_for(int count, int threads, const std::function<void(int)>& body);

}  // namespace pcp

#endif
