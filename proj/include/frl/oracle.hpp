#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "frl/antecedent.hpp"
#include "frl/bounds.hpp"
#include "frl/dataset.hpp"
#include "frl/random.hpp"
#include "frl/rational.hpp"
#include "frl/rulelist.hpp"

namespace frl {

// Exhaustive ground truth for small instances. Capture counts come from a
// per-row scan over predicate membership, not from the bit-vector kernels, and
// objectives are assembled here from those counts.

struct OracleResult {
    Rational best_objective;
    RuleList best_list;
    std::vector<std::size_t> antecedent_ids;
    std::size_t explored = 0;       // sequences visited, the empty one included
    std::size_t zero_capture = 0;   // branches cut because the next rule captured nothing
    std::size_t non_monotone = 0;   // branches cut by the falling constraint (hard only)
};

// m <= 14 with max_len <= 6, or m <= 10 with any max_len; throws OracleGuard otherwise.
void check_oracle_guard(std::size_t m, std::size_t max_len);

// min L over compatible falling lists of at most max_len distinct antecedents.
OracleResult enumerate_optimal_frl(const BinaryDataset& dataset, const AntecedentSet& antecedents,
                                   const Rational& w, const Rational& C, std::size_t max_len);
// min L̃ over all compatible lists of at most max_len distinct antecedents.
OracleResult enumerate_optimal_soft(const BinaryDataset& dataset, const AntecedentSet& antecedents,
                                    const Rational& w, const Rational& C, const Rational& C1, std::size_t max_len);

struct BoundReport {
    Rational bound;                         // L*(e) or L̃*(e)
    std::optional<Rational> enumerated_min; // nullopt when no extension qualifies
    Rational closed_objective;              // objective of ē, recomputed by the oracle
    std::size_t extensions = 0;
    bool sound = true;                      // bound <= every enumerated objective

    std::optional<Rational> gap() const {
        if (!enumerated_min) return std::nullopt;
        return *enumerated_min - bound;
    }
};

// Enumerates every extension of `prefix` with at most max_len rules in total
// (falling ones for the hard bound) and compares the bounds-module value.
BoundReport verify_prefix_bound(const std::vector<std::size_t>& prefix, const BinaryDataset& dataset,
                                const AntecedentSet& antecedents, const ObjectiveParams& params,
                                ObjectiveKind kind, std::size_t max_len);

// Does some compatible falling list begin with `prefix`? Searched over
// extensions of at most max_len rules in total.
bool has_falling_extension(const std::vector<std::size_t>& prefix, const BinaryDataset& dataset,
                           const AntecedentSet& antecedents, std::size_t max_len);

// Random test instances: each predicate is its own column with a random
// density, labels follow a noisy planted score.
struct Instance {
    BinaryDataset data;
    AntecedentSet antecedents;
};

struct InstanceShape {
    std::size_t rows = 60;
    std::size_t predicates = 8;
};

Instance random_instance(std::uint64_t seed, InstanceShape shape);
// Single-predicate antecedents over every predicate with non-zero support.
AntecedentSet singleton_antecedents(const BinaryDataset& dataset);

// Random prefix of up to max_len rules; falling=true keeps rule alphas
// non-increasing. May be shorter if candidates run out.
std::vector<std::size_t> random_prefix(const BinaryDataset& dataset, const AntecedentSet& antecedents, Rng& rng,
                                       std::size_t max_len, bool falling);

// 0/1 CSV of a dataset (one column per predicate plus "label"), for reproducers.
void write_instance_csv(std::ostream& out, const BinaryDataset& dataset);

} // namespace frl
