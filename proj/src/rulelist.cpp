#include "frl/rulelist.hpp"

#include <algorithm>

#include "frl/errors.hpp"

namespace frl {

namespace {

Rational count(std::size_t v) { return Rational(static_cast<std::int64_t>(v)); }

BitVector conjunction_bits(const BinaryDataset& dataset, const std::vector<std::size_t>& predicates) {
    BitVector bits(dataset.n(), true);
    for (auto p : predicates) bits &= dataset.predicate_bits(p);
    return bits;
}

} // namespace

PrefixState PrefixState::empty(const BinaryDataset& dataset) {
    PrefixState s;
    s.n_ = dataset.n();
    s.alive_ = BitVector(dataset.n(), true);
    s.tilde_pos_ = dataset.n_pos();
    s.tilde_neg_ = dataset.n_neg();
    return s;
}

bool PrefixState::contains(std::size_t antecedent_id) const {
    return std::find(ids_.begin(), ids_.end(), antecedent_id) != ids_.end();
}

PrefixState PrefixState::extend(const BinaryDataset& dataset, const AntecedentSet& antecedents,
                                std::size_t antecedent_id, const ObjectiveParams& params) const {
    const Antecedent& a = antecedents[antecedent_id];
    const ClassCounts c = coverage_counts(dataset, a, alive_);
    if (c.total() == 0) throw ZeroCapture();

    PrefixState s(*this);
    s.ids_.push_back(antecedent_id);
    s.counts_.push_back(c);
    Rational alpha = proportion(c.pos, c.total());
    s.penalty_ += positive_part(alpha - min_alpha_);
    if (alpha < s.min_alpha_) s.min_alpha_ = alpha;
    s.alphas_.push_back(std::move(alpha));
    s.alive_.clear_bits(a.bits);
    s.tilde_pos_ -= c.pos;
    s.tilde_neg_ -= c.neg;
    if (params.predicts_positive(c.pos, c.neg))
        s.fp_ += c.neg;
    else
        s.fn_ += c.pos;
    return s;
}

Rational PrefixState::risk(const ObjectiveParams& p) const {
    return (p.w * count(fn_) + count(fp_)) / count(n_);
}

Rational PrefixState::objective(const ObjectiveParams& p) const { return risk(p) + p.C * count(ids_.size()); }

Rational PrefixState::soft_objective(const ObjectiveParams& p) const { return objective(p) + p.C1 * penalty_; }

Rational PrefixState::else_risk(const ObjectiveParams& p) const {
    if (p.predicts_positive(tilde_pos_, tilde_neg_)) return count(tilde_neg_) / count(n_);
    return p.w * count(tilde_pos_) / count(n_);
}

Rational PrefixState::closed_objective(const ObjectiveParams& p) const { return objective(p) + else_risk(p); }

Rational PrefixState::closed_soft_objective(const ObjectiveParams& p) const {
    return soft_objective(p) + else_risk(p) + p.C1 * else_penalty();
}

bool RuleList::is_falling() const {
    for (std::size_t j = 1; j < rules.size(); ++j)
        if (rules[j].estimate > rules[j - 1].estimate) return false;
    return rules.empty() || !(else_estimate > rules.back().estimate);
}

RuleList close(const PrefixState& prefix, const AntecedentSet& antecedents, ListMode mode) {
    RuleList list;
    list.mode = mode;
    Rational running = 1;
    for (std::size_t j = 0; j < prefix.size(); ++j) {
        Rule r;
        r.predicates = antecedents[prefix.antecedent_ids()[j]].predicate_ids;
        r.counts = prefix.rule_counts()[j];
        r.estimate = prefix.alphas()[j];
        if (mode == ListMode::softly_falling) {
            running = min(running, r.estimate);
            r.estimate = running;
        }
        list.rules.push_back(std::move(r));
    }
    list.else_counts = {prefix.tilde_n_pos(), prefix.tilde_n_neg()};
    list.else_estimate = prefix.tilde_alpha();
    if (mode == ListMode::softly_falling) list.else_estimate = min(prefix.min_alpha(), list.else_estimate);
    return list;
}

CaptureSummary recount(const RuleList& list, const BinaryDataset& dataset) {
    CaptureSummary out;
    BitVector alive(dataset.n(), true);
    for (const auto& r : list.rules) {
        BitVector captured = conjunction_bits(dataset, r.predicates) & alive;
        const std::size_t pos = and_count(captured, dataset.labels());
        out.rules.push_back({pos, captured.count() - pos});
        alive.clear_bits(captured);
    }
    const std::size_t pos = and_count(alive, dataset.labels());
    out.remainder = {pos, alive.count() - pos};
    return out;
}

std::size_t capture_index(const RuleList& list, const std::vector<bool>& row_predicates) {
    for (std::size_t j = 0; j < list.rules.size(); ++j) {
        const auto& preds = list.rules[j].predicates;
        if (std::all_of(preds.begin(), preds.end(), [&](std::size_t p) { return row_predicates.at(p); })) return j;
    }
    return list.rules.size();
}

Rational empirical_risk(const RuleList& list, const BinaryDataset& dataset, const Rational& tau, const Rational& w) {
    const CaptureSummary cs = recount(list, dataset);
    Rational missed_pos = 0, false_pos = 0;
    auto tally = [&](const ClassCounts& c, const Rational& estimate) {
        if (estimate > tau)
            false_pos += count(c.neg);
        else
            missed_pos += count(c.pos);
    };
    for (std::size_t j = 0; j < list.rules.size(); ++j) tally(cs.rules[j], list.rules[j].estimate);
    tally(cs.remainder, list.else_estimate);
    return (w * missed_pos + false_pos) / count(dataset.n());
}

Rational objective_L(const RuleList& list, const BinaryDataset& dataset, const Rational& tau, const Rational& w,
                     const Rational& C) {
    return empirical_risk(list, dataset, tau, w) + C * count(list.size());
}

Rational monotonicity_penalty(const std::vector<Rational>& values) {
    Rational total = 0, running = 1;
    for (std::size_t j = 0; j < values.size(); ++j) {
        if (j > 0) total += positive_part(values[j] - running);
        running = j == 0 ? values[0] : min(running, values[j]);
    }
    return total;
}

Rational soft_objective(const RuleList& list, const BinaryDataset& dataset, const Rational& tau, const Rational& w,
                        const Rational& C, const Rational& C1) {
    const CaptureSummary cs = recount(list, dataset);
    std::vector<Rational> alphas;
    for (const auto& c : cs.rules) {
        if (c.total() == 0) throw ZeroCapture();
        alphas.push_back(proportion(c.pos, c.total()));
    }
    if (cs.remainder.total() > 0) alphas.push_back(proportion(cs.remainder.pos, cs.remainder.total()));
    return objective_L(list, dataset, tau, w, C) + C1 * monotonicity_penalty(alphas);
}

RuleList softify(const RuleList& list) {
    RuleList out(list);
    out.mode = ListMode::softly_falling;
    Rational running = 1;
    for (auto& r : out.rules) {
        running = min(running, r.estimate);
        r.estimate = running;
    }
    out.else_estimate = min(running, out.else_estimate);
    return out;
}

int predict(const RuleList& list, const std::vector<bool>& row_predicates, const Rational& tau) {
    const std::size_t j = capture_index(list, row_predicates);
    const Rational& estimate = j < list.rules.size() ? list.rules[j].estimate : list.else_estimate;
    return estimate > tau ? 1 : -1;
}

} // namespace frl
