#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "frl/errors.hpp"
#include "frl/oracle.hpp"
#include "frl/rulelist.hpp"
#include "helpers.hpp"

using namespace frl;

namespace {

std::size_t permutations(std::size_t m, std::size_t max_len) {
    std::size_t total = 0, term = 1;
    for (std::size_t k = 0; k <= max_len && k <= m; ++k) {
        total += term;
        term *= m - k;
    }
    return total;
}

} // namespace

TEST_CASE("perfect separator: optimum zero") {
    const BinaryDataset d = test::from_columns({"s", "x"}, {{1, 1, 0, 0, 0}, {1, 0, 1, 0, 1}}, {1, 1, 0, 0, 0});
    const OracleResult o = enumerate_optimal_frl(d, test::all_singletons(d), 1, 0, 2);
    CHECK(o.best_objective == Rational(0));
    const OracleResult s = enumerate_optimal_soft(d, test::all_singletons(d), 1, 0, Rational(1, 2), 2);
    CHECK(s.best_objective == Rational(0));
}

TEST_CASE("toy: the trivial list is the only compatible falling list") {
    const BinaryDataset d = test::toy19();
    for (std::int64_t w : {1, 3, 7}) {
        const OracleResult o = enumerate_optimal_frl(d, test::all_singletons(d), w, 0, 2);
        CHECK(o.best_list.size() == 0);
        CHECK(o.best_list.else_estimate == Rational(14, 19));
    }
}

TEST_CASE("visit count equals the number of ordered sequences when nothing is cut") {
    // disjoint antecedents never lose all their rows to earlier rules
    std::vector<std::vector<int>> cols(5, std::vector<int>(20, 0));
    std::vector<int> y(20, 0);
    for (int r = 0; r < 20; ++r) {
        cols[r % 5][r] = 1;
        y[r] = r % 2;
    }
    const BinaryDataset d = test::from_columns({"a", "b", "c", "d", "e"}, cols, y);
    const AntecedentSet a = test::all_singletons(d);
    for (std::size_t len = 0; len <= 5; ++len) {
        const OracleResult o = enumerate_optimal_soft(d, a, 1, 0, Rational(1, 2), len);
        CHECK(o.explored == permutations(5, len));
        CHECK(o.zero_capture == 0);
    }
    // overlapping antecedents: visited + cut branches account for every child
    Instance inst = random_instance(4, {12, 5});
    const OracleResult o = enumerate_optimal_soft(inst.data, inst.antecedents, 1, 0, Rational(1, 2), 3);
    CHECK(o.explored <= permutations(inst.antecedents.m(), 3));
    const OracleResult h = enumerate_optimal_frl(inst.data, inst.antecedents, 1, 0, 3);
    CHECK(h.explored <= o.explored);
}

TEST_CASE("results recompute from scratch and do not depend on antecedent order") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        Instance inst = random_instance(seed, {50, 7});
        const ObjectiveParams p{Rational(1 + static_cast<std::int64_t>(seed % 5)), Rational(1, 100), Rational(1, 3)};
        const OracleResult h = enumerate_optimal_frl(inst.data, inst.antecedents, p.w, p.C, 4);
        const OracleResult s = enumerate_optimal_soft(inst.data, inst.antecedents, p.w, p.C, p.C1, 4);
        CHECK(h.best_objective == objective_L(h.best_list, inst.data, p.tau(), p.w, p.C));
        CHECK(s.best_objective == soft_objective(s.best_list, inst.data, p.tau(), p.w, p.C, p.C1));
        CHECK(h.best_list.is_falling());
        for (const auto& rule : h.best_list.rules) CHECK(rule.estimate > p.tau());

        // relaxation: no monotonicity constraint and zero penalty can only help
        const OracleResult s0 = enumerate_optimal_soft(inst.data, inst.antecedents, p.w, p.C, 0, 4);
        CHECK(s0.best_objective <= h.best_objective);

        std::vector<Antecedent> reversed(inst.antecedents.begin(), inst.antecedents.end());
        std::reverse(reversed.begin(), reversed.end());
        const AntecedentSet r(reversed, inst.antecedents.policy());
        CHECK(enumerate_optimal_frl(inst.data, r, p.w, p.C, 4).best_objective == h.best_objective);
        CHECK(enumerate_optimal_soft(inst.data, r, p.w, p.C, p.C1, 4).best_objective == s.best_objective);
    }
}

TEST_CASE("large penalty: soft optimum converges to the hard optimum") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        Instance inst = random_instance(seed + 60, {40, 6});
        const OracleResult h = enumerate_optimal_frl(inst.data, inst.antecedents, 3, Rational(1, 100), 4);
        const OracleResult s3 = enumerate_optimal_soft(inst.data, inst.antecedents, 3, Rational(1, 100), 1000, 4);
        const OracleResult s6 = enumerate_optimal_soft(inst.data, inst.antecedents, 3, Rational(1, 100), 1000000, 4);
        CHECK(s3.best_objective <= s6.best_objective);
        CHECK(s6.best_objective <= h.best_objective);
        // a non-falling list pays at least 10^6/40^2 in penalty, so the optimum is falling
        CHECK(s6.best_objective == h.best_objective);
    }
}

TEST_CASE("guards") {
    CHECK_NOTHROW(check_oracle_guard(14, 6));
    CHECK_NOTHROW(check_oracle_guard(10, 10));
    CHECK_THROWS_AS(check_oracle_guard(15, 3), OracleGuard);
    CHECK_THROWS_AS(check_oracle_guard(12, 7), OracleGuard);
}

TEST_CASE("bound verification: empty prefix and termination equality") {
    const BinaryDataset d = test::toy19();
    const AntecedentSet a = test::all_singletons(d);
    const BoundReport r = verify_prefix_bound({}, d, a, ObjectiveParams{1, 0, 0}, ObjectiveKind::hard, 2);
    REQUIRE(r.gap());
    CHECK(*r.gap() >= Rational(0));
    CHECK(r.sound);

    int equalities = 0;
    for (std::uint64_t seed = 1; seed <= 120; ++seed) {
        Instance inst = random_instance(seed, {30, 6});
        Rng rng(seed);
        const ObjectiveParams p{Rational(1 + static_cast<std::int64_t>(rng.below(7))),
                                Rational(static_cast<std::int64_t>(rng.below(8)), 40), 0};
        const auto ids = random_prefix(inst.data, inst.antecedents, rng, 2, true);
        PrefixState e = PrefixState::empty(inst.data);
        for (auto l : ids) e = e.extend(inst.data, inst.antecedents, l, p);
        const BoundInputs in = bound_inputs(e, p, ObjectiveKind::hard);
        if (!is_feasible(in)) continue;
        const BoundReport rep = verify_prefix_bound(ids, inst.data, inst.antecedents, p, ObjectiveKind::hard, 5);
        CHECK(rep.sound);
        if (should_terminate(in, p)) {
            ++equalities;
            CHECK(rep.closed_objective == rep.bound);
            CHECK(rep.gap() == Rational(0));
        }
    }
    CHECK(equalities > 0);
}

TEST_CASE("toy soft bound over a five-antecedent pool") {
    const BinaryDataset d = test::toy19();
    std::vector<std::vector<int>> cols;
    for (int k = 0; k < 5; ++k) {
        std::vector<int> c(19, 0);
        for (int i = 0; i < 8; ++i) c[(k * 3 + i) % 14] = 1;
        for (int i = 0; i < 3; ++i) c[14 + (k + i) % 5] = 1;
        cols.push_back(c);
    }
    std::vector<int> y(19, 0);
    for (int r = 0; r < 14; ++r) y[r] = 1;
    const BinaryDataset five = test::from_columns({"A1", "A2", "A3", "A4", "A5"}, cols, y);
    const AntecedentSet a = test::all_singletons(five);
    for (std::size_t l = 0; l < a.m(); ++l) {
        CHECK(a[l].support_pos == 8);
        CHECK(a[l].support_neg == 3);
    }
    const BoundReport r = verify_prefix_bound({0}, five, a, ObjectiveParams{1, 0, Rational(1, 2)}, ObjectiveKind::soft, 4);
    CHECK(r.sound);
    CHECK(r.bound <= r.closed_objective);
}

TEST_CASE("feasibility: enumeration agrees with the two closed-form statements") {
    int checked = 0, infeasible = 0;
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
        Instance inst = random_instance(seed + 5000, {25, 6});
        Rng rng(seed);
        const auto ids = random_prefix(inst.data, inst.antecedents, rng, 1 + rng.below(3), true);
        if (ids.empty()) continue;
        PrefixState e = PrefixState::empty(inst.data);
        for (auto l : ids) e = e.extend(inst.data, inst.antecedents, l, ObjectiveParams{});
        const bool by_condition = is_feasible(bound_inputs(e, ObjectiveParams{}, ObjectiveKind::hard));
        const bool by_alpha = e.tilde_alpha() <= e.last_alpha();
        const bool by_search = has_falling_extension(ids, inst.data, inst.antecedents, inst.antecedents.m());
        CHECK(by_condition == by_alpha);
        CHECK(by_condition == by_search);
        ++checked;
        infeasible += !by_condition;
    }
    CHECK(checked > 100);
    CHECK(infeasible > 5);
}

TEST_CASE("reproducer CSV round trip shape") {
    Instance inst = random_instance(3, {10, 3});
    std::ostringstream os;
    write_instance_csv(os, inst.data);
    const std::string s = os.str();
    CHECK(s.rfind("p0,p1,p2,label\n", 0) == 0);
    CHECK(std::count(s.begin(), s.end(), '\n') == 11);
}
