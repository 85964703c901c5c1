#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frl/antecedent.hpp"
#include "frl/bitvec.hpp"
#include "frl/kernels.hpp"
#include "frl/oracle.hpp"
#include "frl/random.hpp"

using namespace frl;

namespace {

BitVector random_bits(Rng& rng, std::size_t n, double density) {
    BitVector b(n);
    for (std::size_t i = 0; i < n; ++i)
        if (rng.uniform() < density) b.set(i);
    return b;
}

} // namespace

TEST_CASE("bit vector counts match a naive loop across word boundaries") {
    Rng rng(11);
    for (std::size_t n : {1u, 63u, 64u, 65u, 127u, 128u, 200u, 1000u}) {
        const BitVector a = random_bits(rng, n, 0.4), b = random_bits(rng, n, 0.6), c = random_bits(rng, n, 0.5);
        std::size_t ca = 0, cab = 0, cabc = 0;
        for (std::size_t i = 0; i < n; ++i) {
            ca += a.test(i);
            cab += a.test(i) && b.test(i);
            cabc += a.test(i) && b.test(i) && c.test(i);
        }
        CHECK(a.count() == ca);
        CHECK(and_count(a, b) == cab);
        CHECK(and_count(a, b, c) == cabc);
        const BitVector na = ~a;
        CHECK(na.count() == n - ca);
        BitVector d = a;
        d.clear_bits(b);
        CHECK(d.count() == ca - cab);
    }
}

TEST_CASE("capture counts: serial and parallel agree and match a row scan") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Instance inst = random_instance(seed, {150 + seed * 7, 12});
        Rng rng(seed);
        const BitVector alive = random_bits(rng, inst.data.n(), 0.7);
        std::vector<ClassCounts> s, p;
        kernels::capture_counts_serial(inst.antecedents.all(), alive, inst.data.labels(), s);
        kernels::capture_counts_parallel(inst.antecedents.all(), alive, inst.data.labels(), p);
        CHECK(s == p);
        for (std::size_t l = 0; l < inst.antecedents.m(); ++l) {
            ClassCounts naive;
            for (std::size_t r = 0; r < inst.data.n(); ++r)
                if (alive.test(r) && inst.antecedents[l].bits.test(r))
                    (inst.data.is_positive(r) ? naive.pos : naive.neg)++;
            CHECK(s[l] == naive);
        }
    }
}

TEST_CASE("pair supports: serial and parallel agree; same-column pairs are skipped") {
    std::vector<Predicate> preds;
    std::vector<BitVector> bits;
    Rng rng(5);
    const std::size_t n = 300;
    for (std::size_t p = 0; p < 9; ++p) {
        preds.push_back({"p" + std::to_string(p), p / 3, PredicateKind::category});
        bits.push_back(random_bits(rng, n, 0.3));
    }
    const BinaryDataset d(preds, bits, random_bits(rng, n, 0.5));
    const auto s = kernels::pair_supports_serial(d);
    const auto q = kernels::pair_supports_parallel(d);
    REQUIRE(s.size() == q.size());
    CHECK(s.size() == 27);  // 3 columns of 3: 3·3·3 cross-column pairs
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(s[i].first == q[i].first);
        CHECK(s[i].second == q[i].second);
        CHECK(s[i].counts == q[i].counts);
        CHECK(d.predicate(s[i].first).source_column != d.predicate(s[i].second).source_column);
        if (i) CHECK(std::pair(s[i - 1].first, s[i - 1].second) < std::pair(s[i].first, s[i].second));
        CHECK(s[i].counts.total() == and_count(d.predicate_bits(s[i].first), d.predicate_bits(s[i].second)));
    }
}
