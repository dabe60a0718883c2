#ifndef PCP_FDR_HPP
#define PCP_FDR_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "pcp/graph.hpp"
#include "pcp/ledger.hpp"

namespace pcp {

/// Sum 1/1 + ... + 1/m, accumulated in extended precision.
double harmonic_number(int m);

/// Benjamini-Yekutieli estimate m * alpha * H(m) / max{R, 1} with
/// R = #{p <= alpha}. Not clamped; the raw estimator may exceed 1.
double by_estimate(std::span<const double> pvals, double alpha);

/// Largest threshold whose estimate stays at or below q, in closed form:
/// with sorted p(1) <= ... <= p(m), take k* = max{k : p(k) <= q*k/(m*H(m))}
/// and return q*k*/(m*H(m)), or 0 when no k qualifies. Exactly k*
/// p-values fall at or below the result and by_estimate(result) <= q.
double by_alpha_star(std::span<const double> pvals, double q);

/// One distinct hypothesis test: its identifier, final p-value bound,
/// and the edge claims it makes. An undirected claim asserts adjacency;
/// a directed claim asserts the exact arrow.
struct Hypothesis {
    uint64_t identifier = 0;
    double p_value = 1.0;
    struct Assertion {
        int i, j;
        bool directed;  // directed: i -> j must be present; else i, j adjacent
        bool operator==(const Assertion&) const = default;
    };
    std::vector<Assertion> asserted;
};

struct HypothesisSet {
    std::vector<Hypothesis> entries;  // unique identifiers, sorted by token
    std::vector<double> pvalues() const;
};

/// Extracts one hypothesis per unique identifier from the final graph
/// and ledger. A shared v-structure identifier yields a single entry
/// asserting both arms.
HypothesisSet collect_hypotheses(const MixedGraph& graph, const PValueLedger& ledger);

/// A hypothesis is correct when all of its asserted edges hold in truth.
std::vector<uint8_t> hypothesis_correctness(const HypothesisSet& hypotheses,
                                            const MixedGraph& truth);

/// Realized FDR V / max{R, 1} at threshold alpha.
double realized_fdr(std::span<const double> pvals, std::span<const uint8_t> correct, double alpha);

/// Removes every edge asserted by a hypothesis with p > alpha_star.
MixedGraph prune_graph(const MixedGraph& graph, const HypothesisSet& hypotheses,
                       double alpha_star);

struct FdrReport {
    std::vector<double> alpha_grid;
    std::vector<double> estimates;       // by_estimate at each grid alpha
    std::vector<double> realized_curve;  // realized FDR at each grid alpha (with truth)
    double alpha_star = 0.0;
    double realized_fdr_at_star = 0.0;
    MixedGraph pruned_graph;
    double mean_uc = 0.0, mean_oc = 0.0;  // control bias over the q grid
    double mean_ue = 0.0, mean_oe = 0.0;  // estimation bias over the alpha grid
    int shd_value = 0;

    FdrReport() : pruned_graph(1) {}
};

/// 100 equispaced points on [0.001, 0.1].
std::vector<double> default_q_grid();
/// 100 equispaced points on [1e-10, 0.1].
std::vector<double> default_alpha_grid();

/// Grid evaluation of estimation and control bias against a known truth,
/// plus pruning at q_control.
FdrReport evaluate_against_truth(const MixedGraph& estimated, const HypothesisSet& hypotheses,
                                 const MixedGraph& truth, std::span<const double> q_grid,
                                 std::span<const double> alpha_grid, double q_control);

/// Estimates and pruning only, for runs without ground truth.
FdrReport estimate_only(const MixedGraph& estimated, const HypothesisSet& hypotheses,
                        std::span<const double> alpha_grid, double q_control);

}  // namespace pcp

#endif
