#ifndef PCP_DATASET_HPP
#define PCP_DATASET_HPP

#include <string>
#include <vector>

namespace pcp {

/// Row-major n x p data matrix with column names.
struct Dataset {
    int n = 0;
    int p = 0;
    std::vector<double> values;  // n * p, row-major
    std::vector<std::string> names;

    double at(int row, int col) const { return values[static_cast<size_t>(row) * p + col]; }
    double& at(int row, int col) { return values[static_cast<size_t>(row) * p + col]; }
};

inline std::vector<std::string> default_names(int p) {
    std::vector<std::string> names(p);
    for (int i = 0; i < p; ++i) names[i] = "X" + std::to_string(i + 1);
    return names;
}

}  // namespace pcp

#endif
