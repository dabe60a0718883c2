#include "pcp/bench.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include "pcp/error.hpp"
#include "pcp/io.hpp"
#include "pcp/simgen.hpp"

namespace pcp {

namespace {

constexpr int kMaxDegree = 2;

std::string metric(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

/// Pointwise robust >= non-robust violations across hypotheses shared by
/// identifier between two runs with identical phase traces.
int dominance_violations(const RunReport& robust, const RunReport& nonrobust) {
    int violations = 0;
    std::map<uint64_t, double> robust_p;
    for (const auto& h : robust.hypotheses.entries) robust_p[h.identifier] = h.p_value;
    for (const auto& h : nonrobust.hypotheses.entries) {
        const auto it = robust_p.find(h.identifier);
        if (it == robust_p.end()) continue;
        if (it->second < h.p_value) ++violations;
    }
    return violations;
}

}  // namespace

std::vector<BenchTier> bench_tiers(const BenchConfig& config) {
    std::vector<BenchTier> tiers;
    if (config.suite == "lowdim") {
        tiers.push_back({20, 10000, config.replicates > 0 ? config.replicates : 30});
    } else if (config.suite == "highdim") {
        const int reps = config.replicates > 0 ? config.replicates : 10;
        tiers.push_back({100, 1000, reps});
        if (config.full_scale) {
            tiers.push_back({200, 1000, reps});
            tiers.push_back({300, 1000, reps});
        }
    } else {
        throw DataError("unknown bench suite: " + config.suite);
    }
    return tiers;
}

const std::vector<double>& bench_sample_alphas() {
    static const std::vector<double> alphas{0.0001, 0.001, 0.01, 0.05, 0.1};
    return alphas;
}

int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("PCP_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(int count, int threads, const std::function<void(int)>& body) {
    threads = std::min(std::max(threads, 1), std::max(count, 1));
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::atomic<bool> failed{false};
    std::string first_error;
    std::mutex error_mutex;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            while (true) {
                const int i = next.fetch_add(1);
                if (i >= count || failed.load()) break;
                try {
                    body(i);
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!failed.exchange(true)) first_error = e.what();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (failed.load()) throw InternalError("bench worker failed: " + first_error);
}

void run_bench(const BenchConfig& config) {
    namespace fs = std::filesystem;
    fs::create_directories(config.out_dir);

    const std::vector<BenchTier> tiers = bench_tiers(config);
    const int threads = resolve_thread_count(config.threads);

    struct Task {
        BenchTier tier;
        int replicate;
    };
    std::vector<Task> tasks;
    for (const auto& tier : tiers)
        for (int r = 0; r < tier.replicates; ++r) tasks.push_back({tier, r});

    const auto& variant_names = VariantConfig::all_names();
    std::vector<std::vector<BenchRow>> rows_per_task(tasks.size());

    parallel_for(static_cast<int>(tasks.size()), threads, [&](int task_idx) {
        const auto& [tier, replicate] = tasks[task_idx];
        // Stream id mixes the tier so replicate 0 of each tier differs.
        const uint64_t stream = static_cast<uint64_t>(tier.vertices) * 1000003ULL + replicate;
        Rng rng = Rng(config.seed).split(stream);

        const Dag dag = random_dag(tier.vertices, kMaxDegree, kMaxDegree, rng);
        const SemModel sem = random_sem(dag, rng);
        const Dataset data = sample_dataset(sem, tier.samples, rng);
        const MixedGraph truth = true_cpdag(dag);
        const FisherZTester tester(DatasetStats::from_data(data));

        PipelineOptions options;
        options.alpha = config.alpha;
        options.l_max = config.l_max;
        options.q_control = config.q_control;

        std::map<std::string, RunReport> reports;
        for (const auto& name : variant_names)
            reports.emplace(name,
                            run_pipeline(tester, VariantConfig::preset(name), options, &truth));

        auto& rows = rows_per_task[task_idx];
        for (const auto& name : variant_names) {
            const RunReport& rep = reports.at(name);
            BenchRow row;
            row.suite = config.suite;
            row.vertices = tier.vertices;
            row.samples = tier.samples;
            row.replicate = replicate;
            row.seed = config.seed;
            row.variant = name;
            row.m = static_cast<int>(rep.hypotheses.entries.size());
            row.alpha_star = rep.fdr.alpha_star;
            row.realized_fdr_at_star = rep.fdr.realized_fdr_at_star;
            row.mean_uc = rep.fdr.mean_uc;
            row.mean_oc = rep.fdr.mean_oc;
            row.mean_ue = rep.fdr.mean_ue;
            row.mean_oe = rep.fdr.mean_oe;
            const auto pvals = rep.hypotheses.pvalues();
            const auto correct = hypothesis_correctness(rep.hypotheses, truth);
            for (double a : bench_sample_alphas()) {
                row.realized_samples.push_back(
                    pvals.empty() ? 0.0 : realized_fdr(pvals, correct, a));
                row.estimate_samples.push_back(pvals.empty() ? 0.0 : by_estimate(pvals, a));
            }
            row.shd_value = rep.fdr.shd_value;
            row.edges = rep.graph.edge_count();
            row.directed = rep.graph.directed_count();
            row.ambiguous = rep.graph.ambiguous_count();
            row.ci_tests = rep.ci_test_count;
            if (name == "no-robust")
                row.dominance_violations = dominance_violations(reports.at("pcp"), rep);
            row.wall_ms = rep.wall_seconds * 1000.0;
            rows.push_back(std::move(row));
        }
    });

    std::ofstream results(fs::path(config.out_dir) / "results.csv");
    std::ofstream timings(fs::path(config.out_dir) / "timings.csv");
    results << "suite,vertices,samples,replicate,seed,variant,m,alpha_star,realized_fdr_at_star,"
               "mean_uc,mean_oc,mean_ue,mean_oe";
    for (double a : bench_sample_alphas()) results << ",rfdr_at_" << metric(a);
    for (double a : bench_sample_alphas()) results << ",est_at_" << metric(a);
    results << ",shd,edges,directed,ambiguous,ci_tests,dominance_violations\n";
    timings << "suite,vertices,samples,replicate,variant,wall_ms\n";

    struct Aggregate {
        int count = 0;
        double uc = 0, oc = 0, ue = 0, oe = 0, shd_sum = 0, fdr_star = 0;
    };
    std::map<std::pair<int, std::string>, Aggregate> aggregates;

    for (const auto& rows : rows_per_task)
        for (const auto& row : rows) {
            results << row.suite << ',' << row.vertices << ',' << row.samples << ','
                    << row.replicate << ',' << row.seed << ',' << row.variant << ',' << row.m << ','
                    << metric(row.alpha_star) << ',' << metric(row.realized_fdr_at_star) << ','
                    << metric(row.mean_uc) << ',' << metric(row.mean_oc) << ','
                    << metric(row.mean_ue) << ',' << metric(row.mean_oe);
            for (double v : row.realized_samples) results << ',' << metric(v);
            for (double v : row.estimate_samples) results << ',' << metric(v);
            results << ',' << row.shd_value << ',' << row.edges << ',' << row.directed << ','
                    << row.ambiguous << ',' << row.ci_tests << ',' << row.dominance_violations
                    << '\n';
            timings << row.suite << ',' << row.vertices << ',' << row.samples << ','
                    << row.replicate << ',' << row.variant << ',' << metric(row.wall_ms) << '\n';

            auto& agg = aggregates[{row.vertices, row.variant}];
            ++agg.count;
            agg.uc += row.mean_uc;
            agg.oc += row.mean_oc;
            agg.ue += row.mean_ue;
            agg.oe += row.mean_oe;
            agg.shd_sum += row.shd_value;
            agg.fdr_star += row.realized_fdr_at_star;
        }

    std::ofstream aggregate(fs::path(config.out_dir) / "aggregate.csv");
    aggregate << "suite,vertices,variant,replicates,mean_uc,mean_oc,mean_ue,mean_oe,mean_shd,"
                 "mean_realized_fdr_at_star\n";
    for (const auto& [key, agg] : aggregates) {
        const auto& [vertices, variant] = key;
        aggregate << config.suite << ',' << vertices << ',' << variant << ',' << agg.count << ','
                  << metric(agg.uc / agg.count) << ',' << metric(agg.oc / agg.count) << ','
                  << metric(agg.ue / agg.count) << ',' << metric(agg.oe / agg.count) << ','
                  << metric(agg.shd_sum / agg.count) << ',' << metric(agg.fdr_star / agg.count)
                  << '\n';
    }
}

}  // namespace pcp
