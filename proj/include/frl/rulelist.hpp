#pragma once

#include <cstddef>
#include <vector>

#include "frl/antecedent.hpp"
#include "frl/bitvec.hpp"
#include "frl/dataset.hpp"
#include "frl/kernels.hpp"
#include "frl/rational.hpp"

namespace frl {

// Instance parameters: positive-class weight w, per-rule cost C and
// monotonicity penalty C1 (soft objective only).
struct ObjectiveParams {
    Rational w = 1;
    Rational C = 0;
    Rational C1 = 0;

    // Optimal decision threshold 1/(1+w).
    Rational tau() const { return Rational(1) / (Rational(1) + w); }
    // α = pos/(pos+neg) > 1/(1+w), decided without division.
    bool predicts_positive(std::size_t pos, std::size_t neg) const {
        return w * Rational(static_cast<std::int64_t>(pos)) > Rational(static_cast<std::int64_t>(neg));
    }
};

inline Rational proportion(std::size_t pos, std::size_t total) {
    return total == 0 ? Rational(0) : Rational(static_cast<std::int64_t>(pos), static_cast<std::int64_t>(total));
}

// An ordered antecedent sequence with incrementally maintained capture
// statistics. Values are immutable: extend() returns a new state.
//
// The else clause of an empty remainder has estimate 0 by convention, so it
// adds neither risk nor monotonicity penalty.
class PrefixState {
public:
    static PrefixState empty(const BinaryDataset& dataset);

    // Throws ZeroCapture when the antecedent captures no alive row.
    PrefixState extend(const BinaryDataset& dataset, const AntecedentSet& antecedents, std::size_t antecedent_id,
                       const ObjectiveParams& params) const;

    std::size_t size() const { return ids_.size(); }
    bool is_empty() const { return ids_.empty(); }
    bool contains(std::size_t antecedent_id) const;
    std::size_t n() const { return n_; }

    const std::vector<std::size_t>& antecedent_ids() const { return ids_; }
    const std::vector<ClassCounts>& rule_counts() const { return counts_; }
    const std::vector<Rational>& alphas() const { return alphas_; }
    // min over rule alphas; 1 for the empty prefix
    const Rational& min_alpha() const { return min_alpha_; }
    // alpha of the last rule; 1 for the empty prefix
    Rational last_alpha() const { return alphas_.empty() ? Rational(1) : alphas_.back(); }

    const BitVector& alive() const { return alive_; }
    std::size_t tilde_n_pos() const { return tilde_pos_; }
    std::size_t tilde_n_neg() const { return tilde_neg_; }
    Rational tilde_alpha() const { return proportion(tilde_pos_, tilde_pos_ + tilde_neg_); }

    // Misclassified positives / negatives among captured rows at tau = 1/(1+w).
    std::size_t false_negatives() const { return fn_; }
    std::size_t false_positives() const { return fp_; }
    // Σ_j ⌊α_j − min_{k<j} α_k⌋₊ over the prefix rules.
    const Rational& penalty() const { return penalty_; }

    Rational risk(const ObjectiveParams& p) const;            // R(e)
    Rational objective(const ObjectiveParams& p) const;       // L(e)
    Rational soft_objective(const ObjectiveParams& p) const;  // L̃(e)

    // Else-clause risk contribution (times n) and the objectives of ē = {e, α̃}.
    Rational else_risk(const ObjectiveParams& p) const;
    Rational else_penalty() const { return positive_part(tilde_alpha() - min_alpha_); }
    Rational closed_objective(const ObjectiveParams& p) const;       // L(ē)
    Rational closed_soft_objective(const ObjectiveParams& p) const;  // L̃(ē)

private:
    std::size_t n_ = 0;
    std::vector<std::size_t> ids_;
    std::vector<ClassCounts> counts_;
    std::vector<Rational> alphas_;
    Rational min_alpha_ = 1;
    BitVector alive_;
    std::size_t tilde_pos_ = 0, tilde_neg_ = 0;
    std::size_t fn_ = 0, fp_ = 0;
    Rational penalty_ = 0;
};

enum class ListMode { compatible, softly_falling };

struct Rule {
    std::vector<std::size_t> predicates;  // predicate ids of the conjunction
    Rational estimate;
    ClassCounts counts;
};

struct RuleList {
    std::vector<Rule> rules;
    Rational else_estimate;
    ClassCounts else_counts;
    ListMode mode = ListMode::compatible;

    std::size_t size() const { return rules.size(); }
    // Estimates non-increasing down the list including the else clause.
    bool is_falling() const;
};

// Closes a prefix with its else clause. softly_falling mode replaces the
// estimates with running minima.
RuleList close(const PrefixState& prefix, const AntecedentSet& antecedents, ListMode mode);

// Per-rule and else capture counts recomputed from the dataset.
struct CaptureSummary {
    std::vector<ClassCounts> rules;
    ClassCounts remainder;
};
CaptureSummary recount(const RuleList& list, const BinaryDataset& dataset);

// Index of the capturing rule for a row; list.size() for the else clause.
std::size_t capture_index(const RuleList& list, const std::vector<bool>& row_predicates);

// R(d, D, tau, w) and L = R + C|d|, computed from scratch with the list's estimates.
Rational empirical_risk(const RuleList& list, const BinaryDataset& dataset, const Rational& tau, const Rational& w);
Rational objective_L(const RuleList& list, const BinaryDataset& dataset, const Rational& tau, const Rational& w,
                     const Rational& C);
// L + C1 Σ_{j=0}^{|d|} ⌊α_j − min_{k<j} α_k⌋₊ with α_j the empirical proportions.
Rational soft_objective(const RuleList& list, const BinaryDataset& dataset, const Rational& tau, const Rational& w,
                        const Rational& C, const Rational& C1);
// Monotonicity overshoot Σ_j ⌊a_j − min_{k<j} a_k⌋₊ of a sequence.
Rational monotonicity_penalty(const std::vector<Rational>& values);

// Replaces estimates by running minima.
RuleList softify(const RuleList& list);

// +1 iff the capturing estimate is strictly above tau.
int predict(const RuleList& list, const std::vector<bool>& row_predicates, const Rational& tau);

} // namespace frl
