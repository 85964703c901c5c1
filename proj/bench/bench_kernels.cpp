// Serial vs OpenMP counting kernels on bank-sized synthetic data.
#include <benchmark/benchmark.h>

#include "frl/antecedent.hpp"
#include "frl/kernels.hpp"
#include "frl/oracle.hpp"
#include "frl/random.hpp"

using namespace frl;

namespace {

// 45k rows, 12 columns of 6 one-hot values each: ~2000 cross-column pairs
const BinaryDataset& bank_like() {
    static const BinaryDataset d = [] {
        Rng rng(2016);
        const std::size_t n = 45211, cols = 12, vals = 6;
        std::vector<Predicate> preds;
        std::vector<BitVector> bits(cols * vals, BitVector(n));
        for (std::size_t c = 0; c < cols; ++c)
            for (std::size_t v = 0; v < vals; ++v)
                preds.push_back({"c" + std::to_string(c) + "=" + std::to_string(v), c, PredicateKind::category});
        BitVector y(n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < cols; ++c) bits[c * vals + rng.below(vals)].set(r);
            if (rng.uniform() < 0.117) y.set(r);
        }
        return BinaryDataset(std::move(preds), std::move(bits), std::move(y));
    }();
    return d;
}

const AntecedentSet& bank_antecedents() {
    static const AntecedentSet a = mine(bank_like(), 2, Rational(1, 10), false);
    return a;
}

BitVector half_alive() {
    BitVector alive(bank_like().n());
    for (std::size_t r = 0; r < alive.size(); r += 2) alive.set(r);
    return alive;
}

void BM_capture_serial(benchmark::State& s) {
    const auto& a = bank_antecedents();
    const BitVector alive = half_alive();
    std::vector<ClassCounts> out;
    for (auto _ : s) {
        kernels::capture_counts_serial(a.all(), alive, bank_like().labels(), out);
        benchmark::DoNotOptimize(out.data());
    }
    s.counters["antecedents"] = static_cast<double>(a.m());
}

void BM_capture_parallel(benchmark::State& s) {
    const auto& a = bank_antecedents();
    const BitVector alive = half_alive();
    std::vector<ClassCounts> out;
    for (auto _ : s) {
        kernels::capture_counts_parallel(a.all(), alive, bank_like().labels(), out);
        benchmark::DoNotOptimize(out.data());
    }
    s.counters["threads"] = kernels::max_threads();
}

void BM_pairs_serial(benchmark::State& s) {
    for (auto _ : s) benchmark::DoNotOptimize(kernels::pair_supports_serial(bank_like()));
}

void BM_pairs_parallel(benchmark::State& s) {
    for (auto _ : s) benchmark::DoNotOptimize(kernels::pair_supports_parallel(bank_like()));
    s.counters["threads"] = kernels::max_threads();
}

} // namespace

BENCHMARK(BM_capture_serial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_capture_parallel)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_pairs_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_pairs_parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
