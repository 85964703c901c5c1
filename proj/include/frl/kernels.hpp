#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "frl/bitvec.hpp"

namespace frl {

class BinaryDataset;
struct Antecedent;

struct ClassCounts {
    std::size_t pos = 0;
    std::size_t neg = 0;
    std::size_t total() const { return pos + neg; }
    friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

// Support of the conjunction of predicates first and second (first < second).
struct PairSupport {
    std::size_t first = 0;
    std::size_t second = 0;
    ClassCounts counts;
};

// Data-parallel counting kernels. The serial versions are the reference the
// OpenMP versions are tested and benchmarked against; both produce identical
// output in identical order.
namespace kernels {

// out[i] = class counts of antecedents[i].bits & alive
void capture_counts_serial(std::span<const Antecedent> antecedents, const BitVector& alive,
                           const BitVector& labels, std::vector<ClassCounts>& out);
void capture_counts_parallel(std::span<const Antecedent> antecedents, const BitVector& alive,
                             const BitVector& labels, std::vector<ClassCounts>& out);

// Supports of every predicate pair drawn from different source columns,
// ordered lexicographically by (first, second).
std::vector<PairSupport> pair_supports_serial(const BinaryDataset& dataset);
std::vector<PairSupport> pair_supports_parallel(const BinaryDataset& dataset);

int max_threads();

} // namespace kernels
} // namespace frl
