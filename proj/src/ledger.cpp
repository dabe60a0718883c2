#include "pcp/ledger.hpp"

#include <algorithm>

#include "pcp/error.hpp"

namespace pcp {

double PValueLedger::p1_value(int a, int b) const {
    const auto it = p1.find({a, b});
    PCP_CHECK(it != p1.end() && it->second.size() == 1, "ledger: p1 cell not finalized");
    return it->second.front();
}

void PValueLedger::add_sepset(int a, int b, const std::vector<int>& s) {
    auto& list = sepsets[unordered(a, b)];
    if (std::find(list.begin(), list.end(), s) == list.end()) list.push_back(s);
}

bool PValueLedger::sepset_contains(int a, int b, int v) const {
    const auto it = sepsets.find(unordered(a, b));
    if (it == sepsets.end()) return false;
    for (const auto& s : it->second)
        if (std::find(s.begin(), s.end(), v) != s.end()) return true;
    return false;
}

const std::vector<std::vector<int>>& PValueLedger::sepset_list(int a, int b) const {
    static const std::vector<std::vector<int>> empty;
    const auto it = sepsets.find(unordered(a, b));
    return it == sepsets.end() ? empty : it->second;
}

}  // namespace pcp
