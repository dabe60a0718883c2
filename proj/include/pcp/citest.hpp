#ifndef PCP_CITEST_HPP
#define PCP_CITEST_HPP

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "pcp/dataset.hpp"
#include "pcp/graph.hpp"

namespace pcp {

/// Sample size plus the Pearson correlation matrix of a dataset
/// (possibly computed on rank-transformed columns). All conditional
/// independence queries are answered from this summary.
struct DatasetStats {
    int n = 0;
    int d = 0;
    std::vector<double> correlation;  // d x d, row-major

    double corr(int i, int j) const { return correlation[static_cast<size_t>(i) * d + j]; }

    static DatasetStats from_data(const Dataset& data);
};

/// Rank-transforms every column (average ranks on ties) and computes
/// Pearson correlations of the ranks. Strictly monotone marginal
/// transformations of the data leave the result unchanged.
DatasetStats spearman_prepare(const Dataset& data);

struct CiResult {
    double p_value = 1.0;
    double statistic = 0.0;
    int conditioning_size = 0;
};

/// rho_{ab.s}: correlation of a and b after partialling out s, computed
/// from the inverse of the correlation submatrix over {a, b} union s.
/// Throws DegenerateInput when the submatrix is singular.
double partial_correlation(const DatasetStats& stats, int a, int b, std::span<const int> s);

/// Two-sided test of zero partial correlation via the z-transform
/// atanh(r) * sqrt(n - |s| - 3). Requires n - |s| - 3 >= 1.
CiResult fisher_z_test(const DatasetStats& stats, int a, int b, std::span<const int> s);

/// Conditional-independence test interface. Implementations are pure
/// after construction; identical queries return identical results.
class CiTester {
public:
    virtual ~CiTester() = default;
    virtual CiResult test(int a, int b, std::span<const int> s) const = 0;
    virtual int variable_count() const = 0;
};

class FisherZTester final : public CiTester {
public:
    explicit FisherZTester(DatasetStats stats) : stats_(std::move(stats)) {}
    CiResult test(int a, int b, std::span<const int> s) const override {
        return fisher_z_test(stats_, a, b, s);
    }
    int variable_count() const override { return stats_.d; }

private:
    DatasetStats stats_;
};

/// Answers queries from d-separation in a known DAG: p = 1 when
/// separated, p = 0 otherwise.
class OracleTester final : public CiTester {
public:
    explicit OracleTester(Dag dag) : dag_(std::move(dag)) {}
    CiResult test(int a, int b, std::span<const int> s) const override;
    int variable_count() const override { return dag_.vertex_count(); }
    const Dag& dag() const { return dag_; }

private:
    Dag dag_;
};

/// Test double: a table of prescribed independence decisions for
/// specific (a, b, s) queries, falling through to another tester for
/// everything else. Decisions are keyed on the unordered pair.
class ScriptedTester final : public CiTester {
public:
    ScriptedTester(const CiTester& fallthrough) : fallthrough_(fallthrough) {}

    void script(int a, int b, std::vector<int> s, bool independent);

    CiResult test(int a, int b, std::span<const int> s) const override;
    int variable_count() const override { return fallthrough_.variable_count(); }

private:
    using Key = std::pair<std::pair<int, int>, std::vector<int>>;
    const CiTester& fallthrough_;
    std::map<Key, bool> decisions_;
};

/// Wrapper counting how many CI queries a pipeline run issued.
class CountingTester final : public CiTester {
public:
    explicit CountingTester(const CiTester& inner) : inner_(inner) {}
    CiResult test(int a, int b, std::span<const int> s) const override {
        ++count_;
        return inner_.test(a, b, s);
    }
    int variable_count() const override { return inner_.variable_count(); }
    uint64_t count() const { return count_; }

private:
    const CiTester& inner_;
    mutable uint64_t count_ = 0;
};

}  // namespace pcp

#endif
