#ifndef PCP_LEDGER_HPP
#define PCP_LEDGER_HPP

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace pcp {

using OrderedPair = std::pair<int, int>;

inline OrderedPair unordered(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

/// Bookkeeping carried through the discovery phases: per-pair p-value
/// cells, separating sets, and hypothesis-test identifiers.
///
/// p1 holds the significant CI p-values of each surviving adjacency
/// (collapsed to their maximum by finalize_edge_pvalues). p2 holds the
/// final per-edge bound; for a directed edge only the cell in edge
/// direction is populated. p_prime collects the per-orientation-source
/// contributions that are summed into p2.
struct PValueLedger {
    std::map<OrderedPair, std::vector<double>> p1;
    std::map<OrderedPair, double> p2;
    std::map<OrderedPair, std::vector<double>> p_prime;
    std::map<OrderedPair, std::vector<std::vector<int>>> sepsets;  // keyed on unordered pair
    std::map<OrderedPair, uint64_t> identifiers;
    uint64_t next_identifier = 1;

    uint64_t fresh_identifier() { return next_identifier++; }

    // Identifiers assigned by skeleton discovery, kept so an edge whose
    // orientation is retracted can fall back to its adjacency test.
    std::map<OrderedPair, uint64_t> skeleton_identifiers;

    void store_p1(int a, int b, double p) {
        p1[{a, b}].push_back(p);
        p1[{b, a}].push_back(p);
    }
    void clear_p1(int a, int b) {
        p1.erase({a, b});
        p1.erase({b, a});
    }
    bool has_p1(int a, int b) const { return p1.count({a, b}) > 0; }

    /// Finalized p1 (requires finalize_edge_pvalues to have run).
    double p1_value(int a, int b) const;

    void add_sepset(int a, int b, const std::vector<int>& s);
    bool sepset_contains(int a, int b, int v) const;
    const std::vector<std::vector<int>>& sepset_list(int a, int b) const;
};

}  // namespace pcp

#endif
