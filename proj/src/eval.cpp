#include "frl/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "frl/errors.hpp"

namespace frl {

EvalReport evaluate(const RuleList& list, const BinaryDataset& dataset, const Rational& w) {
    if (w.sign() <= 0) throw std::invalid_argument("w must be positive");
    if (dataset.n() == 0) throw DataError("cannot evaluate on an empty dataset");
    for (const auto& rule : list.rules)
        for (auto p : rule.predicates)
            if (p >= dataset.num_predicates()) throw SchemaMismatch("model predicate id outside the dataset");

    EvalReport r;
    r.w = w;
    r.tau = Rational(1) / (Rational(1) + w);
    for (std::size_t row = 0; row < dataset.n(); ++row) {
        const bool predicted = predict(list, dataset.row_predicates(row), r.tau) > 0;
        const bool actual = dataset.is_positive(row);
        if (actual) (predicted ? r.tp : r.fn)++;
        else (predicted ? r.fp : r.tn)++;
    }
    if (r.tp + r.fn > 0) r.tpr = static_cast<double>(r.tp) / static_cast<double>(r.tp + r.fn);
    if (r.fp + r.tn > 0) r.fpr = static_cast<double>(r.fp) / static_cast<double>(r.fp + r.tn);
    r.weighted_loss = (w * Rational(static_cast<std::int64_t>(r.fn)) + Rational(static_cast<std::int64_t>(r.fp))) /
                      Rational(static_cast<std::int64_t>(dataset.n()));
    return r;
}

std::vector<RocPoint> roc_sweep(const BinaryDataset& train, const BinaryDataset& test,
                                const AntecedentSet& antecedents, std::vector<Rational> w_values,
                                const SearchConfig& base) {
    if (w_values.empty()) throw std::invalid_argument("w grid is empty");
    if (train.num_predicates() != test.num_predicates())
        throw SchemaMismatch("train and test predicates differ");
    for (std::size_t p = 0; p < train.num_predicates(); ++p)
        if (train.predicate(p).name != test.predicate(p).name)
            throw SchemaMismatch("train and test predicates differ at '" + train.predicate(p).name + "'");

    std::sort(w_values.begin(), w_values.end());
    std::vector<RocPoint> out;
    for (const auto& w : w_values) {
        SearchConfig cfg = base;
        cfg.params.w = w;
        const SearchResult hard = run_frl(train, antecedents, cfg);
        out.push_back({"frl", w, evaluate(hard.best, test, w), hard.best.size()});
        const SearchResult soft = run_soft_frl(train, antecedents, cfg);
        out.push_back({"softfrl", w, evaluate(soft.best, test, w), soft.best.size()});
    }
    return out;
}

void write_roc_csv(std::ostream& out, const std::vector<RocPoint>& points) {
    out << "algorithm,w,tpr,fpr,tp,fp,tn,fn,weighted_loss,size\n";
    out << std::setprecision(10);
    for (const auto& p : points)
        out << p.algorithm << ',' << p.w.to_double() << ',' << p.test.tpr << ',' << p.test.fpr << ',' << p.test.tp
            << ',' << p.test.fp << ',' << p.test.tn << ',' << p.test.fn << ',' << p.test.weighted_loss.to_double()
            << ',' << p.size << '\n';
}

std::string render_rulelist(const RuleList& list, const std::vector<std::string>& predicate_names,
                            const std::string& outcome) {
    struct Row {
        std::string keyword, condition, then, prob, pos, neg;
    };
    std::vector<Row> rows;
    const std::string phrase = outcome + " prob. is";
    for (std::size_t j = 0; j < list.rules.size(); ++j) {
        const Rule& rule = list.rules[j];
        std::string cond;
        for (std::size_t k = 0; k < rule.predicates.size(); ++k) {
            if (rule.predicates[k] >= predicate_names.size()) throw SchemaMismatch("rule predicate id out of range");
            if (k) cond += " AND ";
            cond += predicate_names[rule.predicates[k]];
        }
        rows.push_back({j == 0 ? "IF" : "ELSE IF", cond, "THEN " + phrase, round_decimal(rule.estimate, 2),
                        std::to_string(rule.counts.pos), std::to_string(rule.counts.neg)});
    }
    rows.push_back({"ELSE", "", phrase, round_decimal(list.else_estimate, 2), std::to_string(list.else_counts.pos),
                    std::to_string(list.else_counts.neg)});

    std::size_t wk = 0, wc = 0, wt = 0, wp = 1, wn = 1;
    for (const auto& r : rows) {
        wk = std::max(wk, r.keyword.size());
        wc = std::max(wc, r.condition.size());
        wt = std::max(wt, r.then.size());
        wp = std::max(wp, r.pos.size());
        wn = std::max(wn, r.neg.size());
    }
    std::ostringstream os;
    for (const auto& r : rows) {
        os << std::left << std::setw(static_cast<int>(wk)) << r.keyword << "  " << std::setw(static_cast<int>(wc))
           << r.condition << "  " << std::setw(static_cast<int>(wt)) << r.then << "  " << r.prob << "  "
           << std::right << std::setw(static_cast<int>(wp)) << r.pos << "  " << std::setw(static_cast<int>(wn))
           << r.neg << '\n';
    }
    return os.str();
}

void write_trace_csv(std::ostream& out, const SearchTrace& trace, bool with_elapsed) {
    out << "iteration,elapsed_ms,objective,size,candidates_considered\n";
    char buf[64];
    for (const auto& imp : trace.improvements) {
        out << imp.iteration << ',';
        if (with_elapsed) {
            std::snprintf(buf, sizeof buf, "%.3f", imp.elapsed_ms);
            out << buf;
        }
        std::snprintf(buf, sizeof buf, "%.12g", imp.objective.to_double());
        out << ',' << buf << ',' << imp.size << ',' << imp.candidates_considered << '\n';
    }
}

void write_candidates_csv(std::ostream& out, const SearchTrace& trace) {
    out << "iteration,depth,candidates\n";
    for (const auto& c : trace.candidates) out << c.iteration << ',' << c.depth << ',' << c.count << '\n';
}

} // namespace frl
