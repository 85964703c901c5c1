#include "frl/kernels.hpp"

#include <bit>

#include "frl/antecedent.hpp"
#include "frl/dataset.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace frl::kernels {

namespace {

inline ClassCounts count_one(const BitVector& bits, const BitVector& alive, const BitVector& labels) {
    std::size_t tot = 0, pos = 0;
    const auto* b = bits.data();
    const auto* a = alive.data();
    const auto* y = labels.data();
    for (std::size_t w = 0, k = bits.num_words(); w < k; ++w) {
        const std::uint64_t x = b[w] & a[w];
        tot += static_cast<std::size_t>(std::popcount(x));
        pos += static_cast<std::size_t>(std::popcount(x & y[w]));
    }
    return {pos, tot - pos};
}

struct PairIndex {
    std::vector<std::size_t> offsets;  // first slot of each `first` predicate
    std::size_t total = 0;
};

PairIndex index_pairs(const BinaryDataset& d) {
    PairIndex idx;
    const std::size_t p = d.num_predicates();
    idx.offsets.resize(p + 1);
    for (std::size_t i = 0; i < p; ++i) {
        idx.offsets[i] = idx.total;
        for (std::size_t j = i + 1; j < p; ++j)
            if (d.predicate(i).source_column != d.predicate(j).source_column) ++idx.total;
    }
    idx.offsets[p] = idx.total;
    return idx;
}

void fill_pairs_for(const BinaryDataset& d, std::size_t i, std::size_t slot, std::vector<PairSupport>& out) {
    const BitVector& bi = d.predicate_bits(i);
    for (std::size_t j = i + 1; j < d.num_predicates(); ++j) {
        if (d.predicate(i).source_column == d.predicate(j).source_column) continue;
        out[slot++] = {i, j, count_one(d.predicate_bits(j), bi, d.labels())};
    }
}

} // namespace

void capture_counts_serial(std::span<const Antecedent> antecedents, const BitVector& alive,
                           const BitVector& labels, std::vector<ClassCounts>& out) {
    out.resize(antecedents.size());
    for (std::size_t i = 0; i < antecedents.size(); ++i) out[i] = count_one(antecedents[i].bits, alive, labels);
}

void capture_counts_parallel(std::span<const Antecedent> antecedents, const BitVector& alive,
                             const BitVector& labels, std::vector<ClassCounts>& out) {
    out.resize(antecedents.size());
    const auto m = static_cast<std::ptrdiff_t>(antecedents.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < m; ++i)
        out[static_cast<std::size_t>(i)] = count_one(antecedents[static_cast<std::size_t>(i)].bits, alive, labels);
}

std::vector<PairSupport> pair_supports_serial(const BinaryDataset& dataset) {
    const PairIndex idx = index_pairs(dataset);
    std::vector<PairSupport> out(idx.total);
    for (std::size_t i = 0; i < dataset.num_predicates(); ++i) fill_pairs_for(dataset, i, idx.offsets[i], out);
    return out;
}

std::vector<PairSupport> pair_supports_parallel(const BinaryDataset& dataset) {
    const PairIndex idx = index_pairs(dataset);
    std::vector<PairSupport> out(idx.total);
    const auto p = static_cast<std::ptrdiff_t>(dataset.num_predicates());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < p; ++i) {
        const auto u = static_cast<std::size_t>(i);
        fill_pairs_for(dataset, u, idx.offsets[u], out);
    }
    return out;
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace frl::kernels
