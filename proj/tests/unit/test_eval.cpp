#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "frl/errors.hpp"
#include "frl/eval.hpp"
#include "frl/model_io.hpp"
#include "frl/oracle.hpp"
#include "helpers.hpp"

using namespace frl;

namespace {

std::string squash(const std::string& s) {
    std::istringstream in(s);
    std::string word, out;
    while (in >> word) out += (out.empty() ? "" : " ") + word;
    return out;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

// rows 0..29: label = (r % 3 == 0), predicate "sep" equals the label
BinaryDataset separable(std::size_t n = 30) {
    std::vector<int> y, sep, noise;
    for (std::size_t r = 0; r < n; ++r) {
        y.push_back(r % 3 == 0);
        sep.push_back(r % 3 == 0);
        noise.push_back(r % 2);
    }
    return test::from_columns({"noise", "sep"}, {noise, sep}, y);
}

} // namespace

TEST_CASE("trivial list with estimate 0 predicts all negative") {
    const BinaryDataset d = separable();
    RuleList l;
    l.else_estimate = 0;
    const EvalReport r = evaluate(l, d, 1);
    CHECK(r.tpr == 0.0);
    CHECK(r.fpr == 0.0);
    CHECK(r.tp + r.fn == d.n_pos());
    CHECK(r.fp + r.tn == d.n_neg());
    CHECK(r.weighted_loss == Rational(static_cast<std::int64_t>(d.n_pos()), static_cast<std::int64_t>(d.n())));
    CHECK(r.tau == Rational(1, 2));
}

TEST_CASE("perfect separator scores perfectly") {
    const BinaryDataset d = separable();
    RuleList l;
    l.rules.push_back(Rule{{1}, 1, {10, 0}});
    l.else_estimate = 0;
    const EvalReport r = evaluate(l, d, 3);
    CHECK(r.tpr == 1.0);
    CHECK(r.fpr == 0.0);
    CHECK(r.weighted_loss == Rational(0));
    RuleList bad = l;
    bad.rules[0].predicates = {7};
    CHECK_THROWS_AS(evaluate(bad, d, 1), SchemaMismatch);
}

TEST_CASE("training loss plus rule cost reproduces the search objective") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        Instance inst = random_instance(seed, {80, 9});
        SearchConfig cfg;
        cfg.params = ObjectiveParams{Rational(1 + static_cast<std::int64_t>(seed % 4) * 2), Rational(1, 100), 0};
        cfg.iterations = 200;
        cfg.seed = seed;
        const SearchResult r = run_frl(inst.data, inst.antecedents, cfg);
        const EvalReport e = evaluate(r.best, inst.data, cfg.params.w);
        CHECK(e.weighted_loss + cfg.params.C * Rational(static_cast<std::int64_t>(r.best.size())) == r.best_objective);
        CHECK(e.tp + e.fn == inst.data.n_pos());
        if (e.tp + e.fn > 0)
            CHECK(e.tpr == doctest::Approx(static_cast<double>(e.tp) / static_cast<double>(e.tp + e.fn)));
    }
}

TEST_CASE("ROC sweep on separable data") {
    const BinaryDataset train = separable(60), test = separable(30);
    const AntecedentSet a = test::all_singletons(train);
    SearchConfig cfg;
    cfg.params.C = Rational(1, 1000000);
    cfg.params.C1 = Rational(1, 2);
    cfg.iterations = 100;
    const auto points = roc_sweep(train, test, a, {7, 1, 3, 5}, cfg);
    REQUIRE(points.size() == 8);
    for (std::size_t i = 0; i < points.size(); ++i) {
        CHECK(points[i].test.tpr == 1.0);
        CHECK(points[i].test.fpr == 0.0);
        if (i >= 2) CHECK(points[i - 2].w <= points[i].w);
    }
    std::ostringstream os;
    write_roc_csv(os, points);
    const auto rows = lines(os.str());
    CHECK(rows.size() == 9);
    CHECK(rows[0] == "algorithm,w,tpr,fpr,tp,fp,tn,fn,weighted_loss,size");
    CHECK(rows[1].rfind("frl,1,", 0) == 0);
    CHECK(rows[2].rfind("softfrl,1,", 0) == 0);
    CHECK_THROWS(roc_sweep(train, test, a, {}, cfg));
}

TEST_CASE("render: trivial list and the Table 1 top row") {
    RuleList trivial;
    trivial.else_estimate = Rational(14, 19);
    trivial.else_counts = {14, 5};
    const auto t = lines(render_rulelist(trivial, {}));
    REQUIRE(t.size() == 1);
    CHECK(squash(t[0]) == "ELSE success prob. is 0.74 14 5");

    RuleList l;
    l.rules.push_back(Rule{{0, 1}, Rational(978, 1509), {978, 531}});
    l.rules.push_back(Rule{{2}, Rational(434, 1547), {434, 1113}});
    l.else_estimate = Rational(2365, 2365 + 31146);
    l.else_counts = {2365, 31146};
    const auto r = lines(render_rulelist(l, {"poutcome=success", "default=no", "age in [60,100)"}));
    REQUIRE(r.size() == 3);
    CHECK(squash(r[0]) == "IF poutcome=success AND default=no THEN success prob. is 0.65 978 531");
    CHECK(squash(r[1]) == "ELSE IF age in [60,100) THEN success prob. is 0.28 434 1113");
    CHECK(squash(r[2]) == "ELSE success prob. is 0.07 2365 31146");
}

TEST_CASE("model JSON round trip is byte-identical and renders the same") {
    Instance inst = random_instance(8, {80, 9});
    SearchConfig cfg;
    cfg.params = ObjectiveParams{3, Rational(1, 100), Rational(1, 2)};
    cfg.iterations = 200;
    for (bool soft : {false, true}) {
        const SearchResult r = soft ? run_soft_frl(inst.data, inst.antecedents, cfg) : run_frl(inst.data, inst.antecedents, cfg);
        Model m = make_model(r.best, inst.data, cfg.params, r.best_objective);
        m.label_column = "y";
        m.positive_value = "yes";
        const std::string a = dump_model(m);
        const Model back = model_from_json(nlohmann::json::parse(a));
        CHECK(dump_model(back) == a);
        CHECK(render_rulelist(back.list, back.predicate_names()) == render_rulelist(m.list, m.predicate_names()));
        CHECK(back.list.mode == r.best.mode);
        CHECK(*back.objective == r.best_objective);
        const RuleList bound = bind_model(back, inst.data);
        CHECK(evaluate(bound, inst.data, 3).weighted_loss == evaluate(r.best, inst.data, 3).weighted_loss);
    }
}

TEST_CASE("binding by name") {
    const BinaryDataset d = separable();
    RuleList l;
    l.rules.push_back(Rule{{1}, 1, {10, 0}});
    const Model m = make_model(l, d, ObjectiveParams{});
    const BinaryDataset other = test::from_columns({"sep", "extra"}, {std::vector<int>(5, 1), std::vector<int>(5, 0)},
                                                   {1, 0, 1, 0, 0});
    const RuleList b = bind_model(m, other);
    CHECK(b.rules[0].predicates == std::vector<std::size_t>{0});
    const BinaryDataset missing = test::from_columns({"x"}, {std::vector<int>(3, 1)}, {1, 0, 0});
    CHECK_THROWS_AS(bind_model(m, missing), SchemaMismatch);
    CHECK_THROWS_AS(model_from_json(nlohmann::json::parse("{}")), DataError);
}

TEST_CASE("antecedent JSON round trip") {
    const BinaryDataset d = test::toy19();
    const AntecedentSet a = mine(d, 2, Rational(1, 10));
    const nlohmann::json j = antecedents_to_json(a, d);
    REQUIRE(j.is_array());
    CHECK(j[1]["predicates"] == nlohmann::json::array({"A1", "A2"}));
    CHECK(j[0]["support_pos"] == 8);
    const AntecedentSet b = antecedents_from_json(j, d);
    REQUIRE(b.m() == a.m());
    for (std::size_t i = 0; i < a.m(); ++i) CHECK(b[i].bits == a[i].bits);
}

TEST_CASE("trace CSV") {
    SearchTrace t;
    t.improvements.push_back({1, 0.5, Rational(1, 2), 0, 3});
    t.improvements.push_back({4, 1.25, Rational(1, 4), 2, 7});
    std::ostringstream os;
    write_trace_csv(os, t);
    const auto r = lines(os.str());
    REQUIRE(r.size() == 3);
    CHECK(r[0] == "iteration,elapsed_ms,objective,size,candidates_considered");
    CHECK(r[1] == "1,0.500,0.5,0,3");
    CHECK(r[2] == "4,1.250,0.25,2,7");
    std::ostringstream plain;
    write_trace_csv(plain, t, false);
    CHECK(lines(plain.str())[1] == "1,,0.5,0,3");
}
