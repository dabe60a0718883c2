#include "pcp/fdr.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "pcp/error.hpp"

namespace pcp {

double harmonic_number(int m) {
    long double sum = 0.0L;
    for (int i = 1; i <= m; ++i) sum += 1.0L / i;
    return static_cast<double>(sum);
}

double by_estimate(std::span<const double> pvals, double alpha) {
    if (pvals.empty()) throw DataError("by_estimate: empty p-value list");
    const int m = static_cast<int>(pvals.size());
    int rejected = 0;
    for (double p : pvals)
        if (p <= alpha) ++rejected;
    return m * alpha * harmonic_number(m) / std::max(rejected, 1);
}

double by_alpha_star(std::span<const double> pvals, double q) {
    if (pvals.empty()) throw DataError("by_alpha_star: empty p-value list");
    const int m = static_cast<int>(pvals.size());
    std::vector<double> sorted(pvals.begin(), pvals.end());
    std::sort(sorted.begin(), sorted.end());
    const double scale = q / (m * harmonic_number(m));
    int k_star = 0;
    for (int k = m; k >= 1; --k)
        if (sorted[k - 1] <= scale * k) {
            k_star = k;
            break;
        }
    if (k_star == 0) return 0.0;
    // The exact boundary satisfies estimate == q; nudge away any upward
    // rounding so by_estimate(result) <= q holds in floating point too.
    double result = scale * k_star;
    for (int guard = 0; guard < 8 && by_estimate(pvals, result) > q; ++guard)
        result = std::nextafter(result, 0.0);
    PCP_CHECK(by_estimate(pvals, result) <= q, "by_alpha_star: boundary rounding");
    return result;
}

std::vector<double> HypothesisSet::pvalues() const {
    std::vector<double> out;
    out.reserve(entries.size());
    for (const auto& h : entries) out.push_back(h.p_value);
    return out;
}

HypothesisSet collect_hypotheses(const MixedGraph& graph, const PValueLedger& ledger) {
    std::map<uint64_t, Hypothesis> by_token;
    auto record = [&](uint64_t token, double p, Hypothesis::Assertion assertion) {
        auto& h = by_token[token];
        h.identifier = token;
        h.p_value = h.asserted.empty() ? p : std::max(h.p_value, p);
        h.asserted.push_back(assertion);
    };

    for (const auto& [i, j] : graph.edge_pairs()) {
        const EdgeMark m = graph.mark(i, j);
        PCP_CHECK(m != EdgeMark::Bidirected, "collect_hypotheses: bidirected edge in output");
        if (m == EdgeMark::Undirected) {
            const auto id = ledger.identifiers.find({i, j});
            const auto p = ledger.p2.find({i, j});
            PCP_CHECK(id != ledger.identifiers.end() && p != ledger.p2.end(),
                      "collect_hypotheses: undirected edge without identifier or p2");
            record(id->second, p->second, {i, j, false});
        } else {
            const int tail = m == EdgeMark::DirectedForward ? i : j;
            const int head = m == EdgeMark::DirectedForward ? j : i;
            const auto id = ledger.identifiers.find({tail, head});
            const auto p = ledger.p2.find({tail, head});
            PCP_CHECK(id != ledger.identifiers.end() && p != ledger.p2.end(),
                      "collect_hypotheses: directed edge without identifier or p2");
            record(id->second, p->second, {tail, head, true});
        }
    }

    HypothesisSet out;
    out.entries.reserve(by_token.size());
    for (auto& [token, hyp] : by_token) out.entries.push_back(std::move(hyp));
    return out;
}

std::vector<uint8_t> hypothesis_correctness(const HypothesisSet& hypotheses,
                                            const MixedGraph& truth) {
    std::vector<uint8_t> out;
    out.reserve(hypotheses.entries.size());
    for (const auto& h : hypotheses.entries) {
        bool ok = true;
        for (const auto& a : h.asserted) {
            if (a.directed)
                ok = ok && truth.has_directed(a.i, a.j);
            else
                ok = ok && truth.adjacent(a.i, a.j);
        }
        out.push_back(ok ? 1 : 0);
    }
    return out;
}

double realized_fdr(std::span<const double> pvals, std::span<const uint8_t> correct, double alpha) {
    PCP_CHECK(pvals.size() == correct.size(), "realized_fdr: size mismatch");
    int rejected = 0, false_pos = 0;
    for (size_t i = 0; i < pvals.size(); ++i) {
        if (pvals[i] > alpha) continue;
        ++rejected;
        if (!correct[i]) ++false_pos;
    }
    return static_cast<double>(false_pos) / std::max(rejected, 1);
}

MixedGraph prune_graph(const MixedGraph& graph, const HypothesisSet& hypotheses,
                       double alpha_star) {
    std::set<OrderedPair> covered;
    MixedGraph pruned = graph;
    for (const auto& h : hypotheses.entries) {
        for (const auto& a : h.asserted) {
            covered.insert(unordered(a.i, a.j));
            if (h.p_value > alpha_star) pruned.remove_edge(a.i, a.j);
        }
    }
    for (const auto& [i, j] : graph.edge_pairs())
        PCP_CHECK(covered.count(unordered(i, j)),
                  "prune_graph: edge not covered by any hypothesis");
    return pruned;
}

std::vector<double> default_q_grid() {
    std::vector<double> grid(100);
    for (int i = 0; i < 100; ++i) grid[i] = 0.001 + i * (0.1 - 0.001) / 99.0;
    return grid;
}

std::vector<double> default_alpha_grid() {
    std::vector<double> grid(100);
    for (int i = 0; i < 100; ++i) grid[i] = 1e-10 + i * (0.1 - 1e-10) / 99.0;
    return grid;
}

FdrReport evaluate_against_truth(const MixedGraph& estimated, const HypothesisSet& hypotheses,
                                 const MixedGraph& truth, std::span<const double> q_grid,
                                 std::span<const double> alpha_grid, double q_control) {
    if (estimated.vertex_count() != truth.vertex_count())
        throw DataError("evaluate: vertex count mismatch");

    FdrReport report;
    report.alpha_grid.assign(alpha_grid.begin(), alpha_grid.end());
    report.shd_value = shd(estimated, truth);

    const std::vector<double> pvals = hypotheses.pvalues();
    const std::vector<uint8_t> correct = hypothesis_correctness(hypotheses, truth);

    if (pvals.empty()) {
        report.estimates.assign(alpha_grid.size(), 0.0);
        report.realized_curve.assign(alpha_grid.size(), 0.0);
        report.mean_oc = 0.0;
        for (double q : q_grid) report.mean_oc += q;
        report.mean_oc /= q_grid.empty() ? 1 : q_grid.size();
        report.pruned_graph = estimated;
        return report;
    }

    double sum_ue = 0.0, sum_oe = 0.0;
    for (double alpha : alpha_grid) {
        const double est = by_estimate(pvals, alpha);
        const double real = realized_fdr(pvals, correct, alpha);
        report.estimates.push_back(est);
        report.realized_curve.push_back(real);
        sum_ue += std::max(real - est, 0.0);
        sum_oe += std::max(est - real, 0.0);
    }
    report.mean_ue = sum_ue / alpha_grid.size();
    report.mean_oe = sum_oe / alpha_grid.size();

    double sum_uc = 0.0, sum_oc = 0.0;
    for (double q : q_grid) {
        const double a_star = by_alpha_star(pvals, q);
        const double real = realized_fdr(pvals, correct, a_star);
        sum_uc += std::max(real - q, 0.0);
        sum_oc += std::max(q - real, 0.0);
    }
    report.mean_uc = sum_uc / q_grid.size();
    report.mean_oc = sum_oc / q_grid.size();

    report.alpha_star = by_alpha_star(pvals, q_control);
    report.realized_fdr_at_star = realized_fdr(pvals, correct, report.alpha_star);
    report.pruned_graph = prune_graph(estimated, hypotheses, report.alpha_star);
    return report;
}

FdrReport estimate_only(const MixedGraph& estimated, const HypothesisSet& hypotheses,
                        std::span<const double> alpha_grid, double q_control) {
    FdrReport report;
    report.alpha_grid.assign(alpha_grid.begin(), alpha_grid.end());
    const std::vector<double> pvals = hypotheses.pvalues();
    if (pvals.empty()) {
        report.estimates.assign(alpha_grid.size(), 0.0);
        report.pruned_graph = estimated;
        return report;
    }
    for (double alpha : alpha_grid) report.estimates.push_back(by_estimate(pvals, alpha));
    report.alpha_star = by_alpha_star(pvals, q_control);
    report.pruned_graph = prune_graph(estimated, hypotheses, report.alpha_star);
    return report;
}

}  // namespace pcp
