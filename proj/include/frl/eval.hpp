#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "frl/antecedent.hpp"
#include "frl/dataset.hpp"
#include "frl/rational.hpp"
#include "frl/rulelist.hpp"
#include "frl/search.hpp"

namespace frl {

struct EvalReport {
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
    double tpr = 0, fpr = 0;  // 0 when the class is absent
    Rational weighted_loss;   // (w·fn + fp)/n
    Rational w, tau;
};

// Predictions at tau = 1/(1+w); the list's predicate ids must index `dataset`.
EvalReport evaluate(const RuleList& list, const BinaryDataset& dataset, const Rational& w);

struct RocPoint {
    std::string algorithm;  // "frl" or "softfrl"
    Rational w;
    EvalReport test;
    std::size_t size = 0;
};

// Trains FRL and softFRL at each w on `train`, evaluates on `test`. Both
// datasets must carry the same predicates in the same order.
std::vector<RocPoint> roc_sweep(const BinaryDataset& train, const BinaryDataset& test,
                                const AntecedentSet& antecedents, std::vector<Rational> w_values,
                                const SearchConfig& base);
void write_roc_csv(std::ostream& out, const std::vector<RocPoint>& points);

// IF / ELSE IF / ELSE table with 2-decimal probabilities and +/- supports.
std::string render_rulelist(const RuleList& list, const std::vector<std::string>& predicate_names,
                            const std::string& outcome = "success");

// iteration,elapsed_ms,objective,size,candidates_considered
void write_trace_csv(std::ostream& out, const SearchTrace& trace, bool with_elapsed = true);
// iteration,depth,candidates
void write_candidates_csv(std::ostream& out, const SearchTrace& trace);

} // namespace frl
