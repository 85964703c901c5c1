#pragma once

#include <string>
#include <vector>

#include "frl/antecedent.hpp"
#include "frl/dataset.hpp"
#include "frl/oracle.hpp"

namespace frl::test {

// Dataset from explicit predicate columns (one source column each) and 0/1 labels.
inline BinaryDataset from_columns(const std::vector<std::string>& names, const std::vector<std::vector<int>>& cols,
                                  const std::vector<int>& labels) {
    std::vector<Predicate> preds;
    std::vector<BitVector> bits;
    for (std::size_t p = 0; p < names.size(); ++p) {
        preds.push_back({names[p], p, PredicateKind::category});
        BitVector b(labels.size());
        for (std::size_t r = 0; r < labels.size(); ++r)
            if (cols[p][r]) b.set(r);
        bits.push_back(std::move(b));
    }
    BitVector y(labels.size());
    for (std::size_t r = 0; r < labels.size(); ++r)
        if (labels[r]) y.set(r);
    return BinaryDataset(std::move(preds), std::move(bits), std::move(y));
}

// 19 rows, 14 positive (rows 0-13) and 5 negative (rows 14-18). A1 and A2
// are each satisfied by 8 positives and 3 negatives.
inline BinaryDataset toy19() {
    std::vector<int> y(19, 0), a1(19, 0), a2(19, 0);
    for (int r = 0; r < 14; ++r) y[r] = 1;
    for (int r = 0; r < 8; ++r) a1[r] = 1;
    for (int r = 14; r < 17; ++r) a1[r] = 1;
    for (int r = 6; r < 14; ++r) a2[r] = 1;
    for (int r = 16; r < 19; ++r) a2[r] = 1;
    return from_columns({"A1", "A2"}, {a1, a2}, y);
}

// Antecedent set of every predicate, in predicate order.
inline AntecedentSet all_singletons(const BinaryDataset& d) { return singleton_antecedents(d); }

} // namespace frl::test
