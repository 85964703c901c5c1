#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "frl/bitvec.hpp"
#include "frl/dataset.hpp"
#include "frl/kernels.hpp"
#include "frl/rational.hpp"

namespace frl {

// Conjunction of one or two predicates with its satisfying rows cached.
struct Antecedent {
    std::vector<std::size_t> predicate_ids;  // strictly increasing
    BitVector bits;
    std::size_t support_pos = 0;
    std::size_t support_neg = 0;

    std::string name(const BinaryDataset& dataset) const;
};

struct MiningPolicy {
    std::size_t max_predicates = 2;
    Rational min_class_support = Rational(1, 10);
};

class AntecedentSet {
public:
    AntecedentSet() = default;
    AntecedentSet(std::vector<Antecedent> antecedents, MiningPolicy policy)
        : antecedents_(std::move(antecedents)), policy_(std::move(policy)) {}

    std::size_t m() const { return antecedents_.size(); }
    bool empty() const { return antecedents_.empty(); }
    const Antecedent& operator[](std::size_t i) const { return antecedents_[i]; }
    const std::vector<Antecedent>& all() const { return antecedents_; }
    const MiningPolicy& policy() const { return policy_; }

    auto begin() const { return antecedents_.begin(); }
    auto end() const { return antecedents_.end(); }

private:
    std::vector<Antecedent> antecedents_;
    MiningPolicy policy_;
};

// Conjunctions of up to max_predicates predicates (from distinct source
// columns) whose support reaches min_class_support of the positives or of the
// negatives. Sorted by predicate_ids.
AntecedentSet mine(const BinaryDataset& dataset, std::size_t max_predicates, const Rational& min_class_support,
                   bool parallel = true);

// Builds an antecedent from predicate ids, computing bits and supports.
Antecedent make_antecedent(const BinaryDataset& dataset, std::vector<std::size_t> predicate_ids);

// Antecedents named by predicate lists (e.g. loaded from JSON); throws SchemaMismatch.
AntecedentSet antecedents_from_names(const BinaryDataset& dataset,
                                     const std::vector<std::vector<std::string>>& names, MiningPolicy policy = {});

ClassCounts coverage_counts(const BinaryDataset& dataset, const Antecedent& antecedent, const BitVector& alive);

} // namespace frl
