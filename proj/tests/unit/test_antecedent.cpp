#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "frl/antecedent.hpp"
#include "frl/errors.hpp"
#include "frl/random.hpp"
#include "helpers.hpp"

using namespace frl;

namespace {

// 100 positives then 100 negatives; column k holds predicate k only.
BinaryDataset class_split(const std::vector<std::pair<int, int>>& support) {
    std::vector<std::string> names;
    std::vector<std::vector<int>> cols;
    std::vector<int> y(200, 0);
    for (int r = 0; r < 100; ++r) y[r] = 1;
    for (std::size_t k = 0; k < support.size(); ++k) {
        names.push_back("p" + std::to_string(k));
        std::vector<int> c(200, 0);
        for (int r = 0; r < support[k].first; ++r) c[r] = 1;
        for (int r = 0; r < support[k].second; ++r) c[100 + r] = 1;
        cols.push_back(c);
    }
    return test::from_columns(names, cols, y);
}

// Brute-force reference: every size <= 2 cross-column conjunction with the OR-of-thresholds rule.
std::set<std::vector<std::size_t>> brute(const BinaryDataset& d, std::size_t max_preds, const Rational& s) {
    std::set<std::vector<std::size_t>> out;
    auto keep = [&](std::size_t pos, std::size_t neg) {
        if (pos + neg == 0) return false;
        return Rational(static_cast<std::int64_t>(pos)) >= s * Rational(static_cast<std::int64_t>(d.n_pos())) ||
               Rational(static_cast<std::int64_t>(neg)) >= s * Rational(static_cast<std::int64_t>(d.n_neg()));
    };
    for (std::size_t i = 0; i < d.num_predicates(); ++i) {
        std::size_t pos = 0, neg = 0;
        for (std::size_t r = 0; r < d.n(); ++r)
            if (d.predicate_bits(i).test(r)) (d.is_positive(r) ? pos : neg)++;
        if (keep(pos, neg)) out.insert({i});
        if (max_preds < 2) continue;
        for (std::size_t j = i + 1; j < d.num_predicates(); ++j) {
            if (d.predicate(i).source_column == d.predicate(j).source_column) continue;
            pos = neg = 0;
            for (std::size_t r = 0; r < d.n(); ++r)
                if (d.predicate_bits(i).test(r) && d.predicate_bits(j).test(r)) (d.is_positive(r) ? pos : neg)++;
            if (keep(pos, neg)) out.insert({i, j});
        }
    }
    return out;
}

} // namespace

TEST_CASE("support threshold is an OR over the two classes") {
    const BinaryDataset d = class_split({{12, 3}, {5, 5}, {3, 12}});
    const AntecedentSet a = mine(d, 1, Rational(1, 10));
    std::set<std::string> names;
    for (const auto& x : a) names.insert(x.name(d));
    CHECK(names.count("p0"));
    CHECK_FALSE(names.count("p1"));
    CHECK(names.count("p2"));
}

TEST_CASE("threshold is inclusive") {
    const BinaryDataset d = class_split({{10, 0}, {9, 9}});
    const AntecedentSet a = mine(d, 1, Rational(1, 10));
    REQUIRE(a.m() == 1);
    CHECK(a[0].name(d) == "p0");
}

TEST_CASE("mining equals brute-force enumeration on random instances") {
    Rng rng(9);
    for (int trial = 0; trial < 15; ++trial) {
        std::vector<Predicate> preds;
        std::vector<BitVector> bits;
        const std::size_t n = 80 + rng.below(60), np = 6 + rng.below(24);
        for (std::size_t p = 0; p < np; ++p) {
            preds.push_back({"p" + std::to_string(p), p / 2, PredicateKind::category});
            BitVector b(n);
            const double dens = 0.1 + 0.5 * rng.uniform();
            for (std::size_t r = 0; r < n; ++r)
                if (rng.uniform() < dens) b.set(r);
            bits.push_back(b);
        }
        BitVector y(n);
        for (std::size_t r = 0; r < n; ++r)
            if (rng.uniform() < 0.4) y.set(r);
        y.set(0);
        y.set(1, false);
        const BinaryDataset d(preds, bits, y);
        const Rational s(static_cast<std::int64_t>(1 + rng.below(30)), 100);
        for (std::size_t mp : {1u, 2u}) {
            const AntecedentSet a = mine(d, mp, s, trial % 2 == 0);
            std::set<std::vector<std::size_t>> got;
            for (std::size_t i = 0; i < a.m(); ++i) {
                got.insert(a[i].predicate_ids);
                if (i) CHECK(a[i - 1].predicate_ids < a[i].predicate_ids);
                // cached bits and counts recomputed from scratch
                BitVector b = d.predicate_bits(a[i].predicate_ids[0]);
                for (auto p : a[i].predicate_ids) b &= d.predicate_bits(p);
                CHECK(b == a[i].bits);
                CHECK(a[i].support_pos == and_count(b, d.labels()));
                CHECK(a[i].support_pos + a[i].support_neg == b.count());
            }
            CHECK(got == brute(d, mp, s));
            const AntecedentSet serial = mine(d, mp, s, false);
            REQUIRE(serial.m() == a.m());
            for (std::size_t i = 0; i < a.m(); ++i) CHECK(serial[i].predicate_ids == a[i].predicate_ids);
        }
    }
}

TEST_CASE("mining errors and naming") {
    const BinaryDataset all_pos = test::from_columns({"a"}, {{1, 0, 1}}, {1, 1, 1});
    CHECK_THROWS_AS(mine(all_pos, 2, Rational(1, 10)), DegenerateLabels);
    const BinaryDataset d = test::toy19();
    CHECK_THROWS(mine(d, 3, Rational(1, 10)));
    CHECK_THROWS(mine(d, 2, Rational(0)));
    const AntecedentSet a = mine(d, 2, Rational(1, 10));
    // A1 and A2 come from different columns, so their conjunction is mined too; {0} < {0,1} < {1}
    REQUIRE(a.m() == 3);
    CHECK(a[1].name(d) == "A1 AND A2");
    CHECK(a[1].support_pos == 2);
    CHECK(a[1].support_neg == 1);
    const AntecedentSet named = antecedents_from_names(d, {{"A2"}, {"A1", "A2"}});
    CHECK(named.m() == 2);
    CHECK(named[1].bits == a[1].bits);
    CHECK_THROWS_AS(antecedents_from_names(d, {{"nope"}}), SchemaMismatch);
}

TEST_CASE("coverage counts") {
    const BinaryDataset d = test::toy19();
    const Antecedent a1 = make_antecedent(d, {0});
    const ClassCounts all = coverage_counts(d, a1, BitVector(d.n(), true));
    CHECK(all.pos == 8);
    CHECK(all.neg == 3);
    const ClassCounts none = coverage_counts(d, a1, BitVector(d.n()));
    CHECK(none.total() == 0);
    Rng rng(2);
    Instance inst = random_instance(17, {50, 6});
    for (int t = 0; t < 20; ++t) {
        BitVector mask(50);
        for (std::size_t r = 0; r < 50; ++r)
            if (rng.uniform() < 0.5) mask.set(r);
        for (const auto& ant : inst.antecedents) {
            ClassCounts naive;
            for (std::size_t r = 0; r < 50; ++r) {
                bool sat = mask.test(r);
                for (auto p : ant.predicate_ids) sat = sat && inst.data.predicate_bits(p).test(r);
                if (sat) (inst.data.is_positive(r) ? naive.pos : naive.neg)++;
            }
            CHECK(coverage_counts(inst.data, ant, mask) == naive);
        }
    }
}
