#ifndef PCP_VSTRUCT_HPP
#define PCP_VSTRUCT_HPP

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "pcp/citest.hpp"
#include "pcp/graph.hpp"
#include "pcp/ledger.hpp"

namespace pcp {

enum class BoundPolicy {
    /// Max-combination: robust to an under-estimated constituent.
    Robust,
    /// Min-combination variant; pointwise below the robust bound.
    NonRobust,
};

/// Upper bound for "a and b are dependent given every neighbourhood
/// subset containing c": the maximum p-value over tests (a ⟂ b | S) for
/// all S containing c with S ⊆ N(a)\{b} or S ⊆ N(b)\{a} and |S| <= l_max.
/// Every test in the schedule is executed regardless of significance.
double gamma_pvalue(const CiTester& tester, const MixedGraph& graph, int a, int b, int c,
                    int l_max);

/// Combined bound for a directed edge a -> c supported by one or more
/// v-structures; contributions are (p of the other arm, gamma of the
/// v-structure) pairs. Robust:  min(1, max{p_ac, sum_i max(...)}).
/// NonRobust: min(1, min{p_ac, sum_i min(...)}).
double combine_vstruct_bound(double p_ac, std::span<const std::pair<double, double>> contributions,
                             BoundPolicy policy);

/// One detected v-structure a -> c <- b with its gamma bound.
struct VStructRecord {
    int a, b, c;
    double gamma_p;
};

/// Arrowhead accumulation pass: every unshielded triple whose collider
/// is outside all recorded separating sets adds arrowheads into the
/// collider, so conflicting v-structures produce bidirected marks.
struct VStructScan {
    MixedGraph accumulated;
    struct Contribution {
        int other_arm;
        int collider;
        double other_p1;
        double gamma;
    };
    /// Per ordered pair (tail, head): the v-structures supporting it.
    std::map<OrderedPair, std::vector<Contribution>> contributions;
    /// Sequence number of the last arrowhead written per ordered pair.
    std::map<OrderedPair, uint64_t> last_arrow;
    std::vector<VStructRecord> records;
};

VStructScan scan_v_structures(const MixedGraph& graph, const PValueLedger& ledger,
                              const CiTester& tester, int l_max);

/// Full v-structure phase: accumulate arrowheads, resolve conflicts
/// (ambiguation on: unorient every bidirected edge plus all edges
/// directed into its endpoints and label them ambiguous; off: keep the
/// last-written direction), then assign p2 bounds and identifiers to the
/// surviving directed edges. A single supporting v-structure shares one
/// identifier across both arms.
void orient_v_structures(MixedGraph& graph, PValueLedger& ledger, const CiTester& tester,
                         int l_max, BoundPolicy policy, bool ambiguation);

/// Classic over-write semantics: each qualifying triple re-orients both
/// arms into the collider unconditionally, and p-values follow the
/// v-structure that ultimately owns each directed edge.
void legacy_orient_v_structures(MixedGraph& graph, PValueLedger& ledger, const CiTester& tester,
                                int l_max, BoundPolicy policy);

}  // namespace pcp

#endif
