#include "pcp/citest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pcp/error.hpp"

namespace pcp {

namespace {

constexpr double kCorrClamp = 1.0 - 1e-7;

std::vector<double> column(const Dataset& data, int j) {
    std::vector<double> col(data.n);
    for (int i = 0; i < data.n; ++i) col[i] = data.at(i, j);
    return col;
}

std::vector<double> average_ranks(const std::vector<double>& col) {
    const int n = static_cast<int>(col.size());
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return col[a] < col[b]; });
    std::vector<double> ranks(n);
    int i = 0;
    while (i < n) {
        int j = i;
        while (j + 1 < n && col[idx[j + 1]] == col[idx[i]]) ++j;
        const double r = 0.5 * (i + j) + 1.0;  // average of 1-based positions
        for (int k = i; k <= j; ++k) ranks[idx[k]] = r;
        i = j + 1;
    }
    return ranks;
}

DatasetStats correlation_of_columns(int n, const std::vector<std::vector<double>>& cols) {
    const int d = static_cast<int>(cols.size());
    std::vector<double> mean(d, 0.0), sd(d, 0.0);
    std::vector<std::vector<double>> centered(d, std::vector<double>(n));
    for (int j = 0; j < d; ++j) {
        double m = 0.0;
        for (double v : cols[j]) m += v;
        m /= n;
        mean[j] = m;
        double ss = 0.0;
        for (int i = 0; i < n; ++i) {
            centered[j][i] = cols[j][i] - m;
            ss += centered[j][i] * centered[j][i];
        }
        if (ss <= 0.0) throw DegenerateInput("constant column in dataset");
        sd[j] = std::sqrt(ss);
    }
    DatasetStats stats;
    stats.n = n;
    stats.d = d;
    stats.correlation.assign(static_cast<size_t>(d) * d, 0.0);
    for (int i = 0; i < d; ++i) {
        stats.correlation[static_cast<size_t>(i) * d + i] = 1.0;
        for (int j = i + 1; j < d; ++j) {
            double dot = 0.0;
            for (int r = 0; r < n; ++r) dot += centered[i][r] * centered[j][r];
            const double c = std::clamp(dot / (sd[i] * sd[j]), -1.0, 1.0);
            stats.correlation[static_cast<size_t>(i) * d + j] = c;
            stats.correlation[static_cast<size_t>(j) * d + i] = c;
        }
    }
    return stats;
}

// Gauss-Jordan inverse of a small symmetric matrix, in place.
// Throws DegenerateInput on a vanishing pivot.
void invert_small(std::vector<double>& m, int k) {
    std::vector<double> inv(static_cast<size_t>(k) * k, 0.0);
    for (int i = 0; i < k; ++i) inv[static_cast<size_t>(i) * k + i] = 1.0;
    auto a = [&](int r, int c) -> double& { return m[static_cast<size_t>(r) * k + c]; };
    auto b = [&](int r, int c) -> double& { return inv[static_cast<size_t>(r) * k + c]; };
    for (int col = 0; col < k; ++col) {
        int pivot = col;
        for (int r = col + 1; r < k; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        if (std::abs(a(pivot, col)) < 1e-12) throw DegenerateInput("singular correlation submatrix");
        if (pivot != col)
            for (int c = 0; c < k; ++c) {
                std::swap(a(pivot, c), a(col, c));
                std::swap(b(pivot, c), b(col, c));
            }
        const double d = a(col, col);
        for (int c = 0; c < k; ++c) {
            a(col, c) /= d;
            b(col, c) /= d;
        }
        for (int r = 0; r < k; ++r) {
            if (r == col) continue;
            const double f = a(r, col);
            if (f == 0.0) continue;
            for (int c = 0; c < k; ++c) {
                a(r, c) -= f * a(col, c);
                b(r, c) -= f * b(col, c);
            }
        }
    }
    m = std::move(inv);
}

}  // namespace

DatasetStats DatasetStats::from_data(const Dataset& data) {
    if (data.n < 2) throw DataError("need at least 2 samples");
    std::vector<std::vector<double>> cols;
    cols.reserve(data.p);
    for (int j = 0; j < data.p; ++j) cols.push_back(column(data, j));
    return correlation_of_columns(data.n, cols);
}

DatasetStats spearman_prepare(const Dataset& data) {
    if (data.n < 4) throw DataError("spearman_prepare: need at least 4 samples");
    std::vector<std::vector<double>> cols;
    cols.reserve(data.p);
    for (int j = 0; j < data.p; ++j) {
        auto col = column(data, j);
        const auto [mn, mx] = std::minmax_element(col.begin(), col.end());
        if (*mn == *mx) throw DegenerateInput("spearman_prepare: constant column");
        cols.push_back(average_ranks(col));
    }
    return correlation_of_columns(data.n, cols);
}

double partial_correlation(const DatasetStats& stats, int a, int b, std::span<const int> s) {
    const int d = stats.d;
    if (a < 0 || a >= d || b < 0 || b >= d) throw std::out_of_range("partial_correlation: vertex");
    PCP_CHECK(a != b, "partial_correlation: a == b");
    for (int v : s) {
        if (v < 0 || v >= d) throw std::out_of_range("partial_correlation: conditioning vertex");
        PCP_CHECK(v != a && v != b, "partial_correlation: endpoint in conditioning set");
    }
    PCP_CHECK(static_cast<int>(s.size()) <= d - 2, "partial_correlation: conditioning set too large");

    if (s.empty()) return stats.corr(a, b);

    // Index order [min(a,b), max(a,b), s...] keeps the result bit-identical
    // under swapping a and b.
    std::vector<int> idx;
    idx.reserve(2 + s.size());
    idx.push_back(std::min(a, b));
    idx.push_back(std::max(a, b));
    std::vector<int> cond(s.begin(), s.end());
    std::sort(cond.begin(), cond.end());
    idx.insert(idx.end(), cond.begin(), cond.end());

    const int k = static_cast<int>(idx.size());
    std::vector<double> sub(static_cast<size_t>(k) * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub[static_cast<size_t>(i) * k + j] = stats.corr(idx[i], idx[j]);
    invert_small(sub, k);

    const double om_ab = sub[1];
    const double om_aa = sub[0];
    const double om_bb = sub[static_cast<size_t>(k) + 1];
    if (om_aa <= 0.0 || om_bb <= 0.0) throw DegenerateInput("singular correlation submatrix");
    return std::clamp(-om_ab / std::sqrt(om_aa * om_bb), -1.0, 1.0);
}

CiResult fisher_z_test(const DatasetStats& stats, int a, int b, std::span<const int> s) {
    const double df = static_cast<double>(stats.n) - static_cast<double>(s.size()) - 3.0;
    if (df < 1.0) throw DataError("fisher_z_test: insufficient samples for conditioning size");

    double r;
    try {
        r = partial_correlation(stats, a, b, s);
    } catch (const DegenerateInput&) {
        // Maximal dependence is the conservative reading of a degenerate
        // conditioning solve: the edge is kept.
        return {0.0, std::numeric_limits<double>::infinity(), static_cast<int>(s.size())};
    }

    if (r >= 1.0 || r <= -1.0) {
        const double inf = std::numeric_limits<double>::infinity();
        return {0.0, r > 0 ? inf : -inf, static_cast<int>(s.size())};
    }
    const double rc = std::clamp(r, -kCorrClamp, kCorrClamp);
    const double z = std::atanh(rc) * std::sqrt(df);
    const double p = std::erfc(std::abs(z) / std::sqrt(2.0));  // = 2 * (1 - Phi(|z|))
    return {p, z, static_cast<int>(s.size())};
}

CiResult OracleTester::test(int a, int b, std::span<const int> s) const {
    const bool sep = d_separated(dag_, a, b, s);
    return {sep ? 1.0 : 0.0, 0.0, static_cast<int>(s.size())};
}

void ScriptedTester::script(int a, int b, std::vector<int> s, bool independent) {
    std::sort(s.begin(), s.end());
    decisions_[{{std::min(a, b), std::max(a, b)}, std::move(s)}] = independent;
}

CiResult ScriptedTester::test(int a, int b, std::span<const int> s) const {
    std::vector<int> cond(s.begin(), s.end());
    std::sort(cond.begin(), cond.end());
    const auto it = decisions_.find({{std::min(a, b), std::max(a, b)}, cond});
    if (it == decisions_.end()) return fallthrough_.test(a, b, s);
    return {it->second ? 1.0 : 0.0, 0.0, static_cast<int>(s.size())};
}

}  // namespace pcp
