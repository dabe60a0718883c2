// Command-line front end: simulate synthetic datasets, discover CPDAGs
// with edge-specific p-values, evaluate against a known truth, run the
// benchmark suites, and sanity-check the oracle pipeline.

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pcp/bench.hpp"
#include "pcp/error.hpp"
#include "pcp/io.hpp"
#include "pcp/pipeline.hpp"
#include "pcp/simgen.hpp"

namespace {

using namespace pcp;

Dataset load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open dataset file: " + path);
    return read_dataset_csv(in);
}

MixedGraph load_graph(const std::string& path, const std::vector<std::string>& names) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open graph file: " + path);
    return read_graph(in, names);
}

void save_graph(const std::string& path, const MixedGraph& graph,
                const std::vector<std::string>& names) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write graph file: " + path);
    write_graph(out, graph, names);
}

std::vector<int> parse_order(const std::string& spec) {
    std::vector<int> order;
    if (spec.empty()) return order;
    std::istringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) order.push_back(std::stoi(tok));
    return order;
}

void write_hypotheses_csv(const std::string& path, const RunReport& report,
                          const std::vector<std::string>& names) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write report file: " + path);
    out << "identifier,p_value,asserts\n";
    for (const auto& h : report.hypotheses.entries) {
        out << h.identifier << ',' << format_double(h.p_value) << ',';
        for (size_t k = 0; k < h.asserted.size(); ++k) {
            const auto& a = h.asserted[k];
            if (k) out << ';';
            out << names[a.i] << (a.directed ? "->" : "--") << names[a.j];
        }
        out << '\n';
    }
}

struct DiscoverArgs {
    std::string data_path, out_path, pruned_path, report_path, order_spec;
    std::string variant = "pcp";
    double alpha = 0.2;
    int l_max = 2;
    double fdr_q = 0.1;
    bool spearman = false;
};

// Expands "--config FILE" into the flags a flat key=value file holds.
// Flags given on the command line win over file entries. Produces the
// argument list: prog subcommand <file flags> <explicit flags>.
std::vector<std::string> apply_flat_config(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    std::string config_path;
    for (size_t i = 1; i + 1 < args.size(); ++i)
        if (args[i] == "--config") {
            config_path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            break;
        }
    if (config_path.empty()) return args;
    if (args.size() < 2) throw DataError("--config requires a subcommand");

    std::ifstream in(config_path);
    if (!in) throw DataError("cannot open config file: " + config_path);

    std::set<std::string> explicit_flags;
    for (size_t i = 2; i < args.size(); ++i)
        if (args[i].rfind("--", 0) == 0) explicit_flags.insert(args[i]);

    std::vector<std::string> from_file;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        line = strip(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected key=value", line_no);
        const std::string key = "--" + strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (key == "--") throw ParseError("empty key", line_no);
        if (explicit_flags.count(key)) continue;  // command line wins
        if (value == "true") {
            from_file.push_back(key);
        } else if (value == "false") {
            // flag left off
        } else {
            from_file.push_back(key);
            from_file.push_back(value);
        }
    }
    args.insert(args.begin() + 2, from_file.begin(), from_file.end());
    return args;
}

RunReport run_discover(const DiscoverArgs& args, const Dataset& data,
                       const MixedGraph* truth = nullptr) {
    const DatasetStats stats =
        args.spearman ? spearman_prepare(data) : DatasetStats::from_data(data);
    const FisherZTester tester(stats);
    PipelineOptions options;
    options.alpha = args.alpha;
    options.l_max = args.l_max;
    options.q_control = args.fdr_q;
    options.order = parse_order(args.order_spec);
    return run_pipeline(tester, VariantConfig::preset(args.variant), options, truth);
}

int run(int argc, char** argv) {
    CLI::App app{"PC-p causal discovery with edge-specific p-values and FDR control"};
    app.require_subcommand(1);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "generate a linear Gaussian dataset");
    int sim_vertices = 20, sim_samples = 1000, sim_max_in = 2, sim_max_out = 2;
    uint64_t sim_seed = 1;
    std::string sim_out, sim_dag_out;
    simulate->add_option("--vertices", sim_vertices)->check(CLI::Range(2, 100000));
    simulate->add_option("--samples", sim_samples)->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim_seed);
    simulate->add_option("--max-in", sim_max_in);
    simulate->add_option("--max-out", sim_max_out);
    simulate->add_option("--out", sim_out)->required();
    simulate->add_option("--dag-out", sim_dag_out, "write the generating DAG as an edge list");

    // discover
    auto* discover = app.add_subcommand("discover", "estimate a CPDAG with p-values");
    DiscoverArgs dargs;
    discover->add_option("--data", dargs.data_path)->required();
    discover->add_option("--alpha", dargs.alpha, "CI significance threshold");
    discover->add_option("--lmax", dargs.l_max, "maximum conditioning set size");
    discover->add_option("--variant", dargs.variant)
        ->check(CLI::IsMember(VariantConfig::all_names()));
    discover->add_option("--fdr-q", dargs.fdr_q, "FDR level for pruning");
    discover->add_option("--order", dargs.order_spec, "vertex enumeration order, e.g. 2,0,1");
    discover->add_flag("--spearman", dargs.spearman, "rank-transform columns first");
    discover->add_option("--out", dargs.out_path)->required();
    discover->add_option("--pruned-out", dargs.pruned_path, "graph after FDR pruning");
    discover->add_option("--report", dargs.report_path, "per-hypothesis p-value CSV");

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "run discovery and score against a truth");
    DiscoverArgs eargs;
    std::string truth_path;
    evaluate->add_option("--data", eargs.data_path)->required();
    evaluate->add_option("--truth", truth_path, "true DAG or CPDAG edge list")->required();
    evaluate->add_option("--alpha", eargs.alpha);
    evaluate->add_option("--lmax", eargs.l_max);
    evaluate->add_option("--variant", eargs.variant)
        ->check(CLI::IsMember(VariantConfig::all_names()));
    evaluate->add_option("--fdr-q", eargs.fdr_q);
    evaluate->add_option("--order", eargs.order_spec);
    evaluate->add_flag("--spearman", eargs.spearman);

    // bench
    auto* bench = app.add_subcommand("bench", "run a benchmark suite");
    BenchConfig bconfig;
    bench->add_option("--suite", bconfig.suite)->check(CLI::IsMember({"lowdim", "highdim"}));
    bench->add_option("--replicates", bconfig.replicates);
    bench->add_option("--seed", bconfig.seed);
    bench->add_option("--out", bconfig.out_dir)->required();
    bench->add_flag("--full", bconfig.full_scale, "include the 200/300-variable tiers");
    bench->add_option("--alpha", bconfig.alpha);
    bench->add_option("--lmax", bconfig.l_max);
    bench->add_option("--fdr-q", bconfig.q_control);
    bench->add_option("--threads", bconfig.threads, "0 = PCP_THREADS or hardware");

    // oracle-check
    auto* oracle_check = app.add_subcommand("oracle-check", "verify oracle soundness");
    int oc_vertices = 12, oc_count = 200;
    uint64_t oc_seed = 1;
    oracle_check->add_option("--vertices", oc_vertices)->check(CLI::Range(2, 64));
    oracle_check->add_option("--count", oc_count)->check(CLI::PositiveNumber);
    oracle_check->add_option("--seed", oc_seed);

    const std::vector<std::string> args = apply_flat_config(argc, argv);
    std::vector<const char*> argv2;
    argv2.reserve(args.size());
    for (const auto& a : args) argv2.push_back(a.c_str());
    CLI11_PARSE(app, static_cast<int>(argv2.size()), argv2.data());

    if (*simulate) {
        Rng rng(sim_seed);
        const Dag dag = random_dag(sim_vertices, sim_max_in, sim_max_out, rng);
        const SemModel sem = random_sem(dag, rng);
        const Dataset data = sample_dataset(sem, sim_samples, rng);
        std::ofstream out(sim_out);
        if (!out) throw DataError("cannot write dataset file: " + sim_out);
        write_dataset_csv(out, data);
        if (!sim_dag_out.empty()) {
            MixedGraph directed(dag.vertex_count());
            for (const auto& [a, b] : dag.edges()) directed.set_mark(a, b, EdgeMark::DirectedForward);
            save_graph(sim_dag_out, directed, data.names);
        }
        std::cout << "wrote " << data.n << " samples over " << data.p << " variables ("
                  << dag.edge_count() << " edges)\n";
    } else if (*discover) {
        const Dataset data = load_dataset(dargs.data_path);
        const RunReport report = run_discover(dargs, data);
        save_graph(dargs.out_path, report.graph, data.names);
        if (!dargs.pruned_path.empty())
            save_graph(dargs.pruned_path, report.fdr.pruned_graph, data.names);
        if (!dargs.report_path.empty()) write_hypotheses_csv(dargs.report_path, report, data.names);
        std::cout << "variant=" << report.variant.name() << " edges=" << report.graph.edge_count()
                  << " directed=" << report.graph.directed_count()
                  << " ambiguous=" << report.graph.ambiguous_count()
                  << " hypotheses=" << report.hypotheses.entries.size()
                  << " alpha_star=" << report.fdr.alpha_star
                  << " pruned_edges=" << report.fdr.pruned_graph.edge_count()
                  << " ci_tests=" << report.ci_test_count << '\n';
    } else if (*evaluate) {
        const Dataset data = load_dataset(eargs.data_path);
        MixedGraph truth = load_graph(truth_path, data.names);
        // An edge list of a DAG is promoted to its CPDAG for scoring.
        if (truth.directed_count() == truth.edge_count() && truth.edge_count() > 0) {
            Dag dag(data.p);
            for (const auto& [i, j] : truth.edge_pairs())
                dag.add_edge(truth.has_directed(i, j) ? i : j, truth.has_directed(i, j) ? j : i);
            truth = true_cpdag(dag);
        }
        const RunReport report = run_discover(eargs, data, &truth);
        std::cout << "variant,m,alpha_star,realized_fdr_at_star,mean_uc,mean_oc,mean_ue,mean_oe,"
                     "shd\n";
        std::cout << report.variant.name() << ',' << report.hypotheses.entries.size() << ','
                  << format_double(report.fdr.alpha_star) << ','
                  << format_double(report.fdr.realized_fdr_at_star) << ','
                  << format_double(report.fdr.mean_uc) << ',' << format_double(report.fdr.mean_oc)
                  << ',' << format_double(report.fdr.mean_ue) << ','
                  << format_double(report.fdr.mean_oe) << ',' << report.fdr.shd_value << '\n';
    } else if (*bench) {
        run_bench(bconfig);
        std::cout << "benchmark written to " << bconfig.out_dir << '\n';
    } else if (*oracle_check) {
        Rng rng(oc_seed);
        int failures = 0;
        for (int i = 0; i < oc_count; ++i) {
            Rng local = rng.split(i);
            const int n = 2 + static_cast<int>(local.next_below(oc_vertices - 1));
            const Dag dag = random_dag(n, 2, 2, local);
            const OracleTester oracle(dag);
            PipelineOptions options;
            options.alpha = 0.5;
            options.l_max = n;
            const MixedGraph truth = true_cpdag(dag);
            const RunReport report =
                run_pipeline(oracle, VariantConfig::preset("pcp"), options, &truth);
            if (report.fdr.shd_value != 0) ++failures;
        }
        std::cout << "oracle-check: " << (oc_count - failures) << "/" << oc_count
                  << " exact recoveries\n";
        if (failures > 0) throw InternalError("oracle-check found mismatches");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    }
}
