#include "frl/bounds.hpp"

#include <stdexcept>

namespace frl {

namespace {

Rational count(std::size_t v) { return Rational(static_cast<std::int64_t>(v)); }

} // namespace

BoundInputs bound_inputs(const PrefixState& prefix, const ObjectiveParams& params, ObjectiveKind kind) {
    BoundInputs in;
    in.tilde_n_pos = prefix.tilde_n_pos();
    in.tilde_n_neg = prefix.tilde_n_neg();
    in.last_alpha = prefix.last_alpha();
    in.min_alpha = prefix.min_alpha();
    in.tilde_alpha = prefix.tilde_alpha();
    in.prefix_objective = kind == ObjectiveKind::hard ? prefix.objective(params) : prefix.soft_objective(params);
    in.n = prefix.n();
    return in;
}

BoundInputs extension_inputs(const PrefixState& prefix, const ClassCounts& captured, const ObjectiveParams& params,
                             ObjectiveKind kind) {
    BoundInputs in;
    in.n = prefix.n();
    in.tilde_n_pos = prefix.tilde_n_pos() - captured.pos;
    in.tilde_n_neg = prefix.tilde_n_neg() - captured.neg;
    in.last_alpha = proportion(captured.pos, captured.total());
    in.min_alpha = min(prefix.min_alpha(), in.last_alpha);
    in.tilde_alpha = proportion(in.tilde_n_pos, in.tilde_n_pos + in.tilde_n_neg);

    const Rational rule_risk = params.predicts_positive(captured.pos, captured.neg) ? count(captured.neg)
                                                                                   : params.w * count(captured.pos);
    in.prefix_objective = prefix.objective(params) + rule_risk / count(in.n) + params.C;
    if (kind == ObjectiveKind::soft)
        in.prefix_objective += params.C1 * (prefix.penalty() + positive_part(in.last_alpha - prefix.min_alpha()));
    return in;
}

bool is_feasible(const BoundInputs& in) {
    const Rational& a = in.last_alpha;
    return count(in.tilde_n_neg) * a >= (Rational(1) - a) * count(in.tilde_n_pos);
}

bool passes_necessary_condition(const Rational& alpha, const Rational& w) {
    return alpha * (Rational(1) + w) > Rational(1);
}

namespace {

// (1/α − 1) ñ⁺ / n; nullopt (+∞) when α = 0 and ñ⁺ > 0.
std::optional<Rational> negatives_to_reach(const Rational& alpha, std::size_t tilde_pos, std::size_t n) {
    if (tilde_pos == 0) return Rational(0);
    if (alpha.is_zero()) return std::nullopt;
    return (Rational(1) / alpha - Rational(1)) * count(tilde_pos) / count(n);
}

} // namespace

Rational prefix_bound_frl(const BoundInputs& in, const ObjectiveParams& params) {
    const auto extra = negatives_to_reach(in.last_alpha, in.tilde_n_pos, in.n);
    if (!extra) throw std::logic_error("prefix bound requested for a prefix with a zero-proportion last rule");
    const Rational all_negative = params.w * count(in.tilde_n_pos) / count(in.n);
    const Rational all_positive = count(in.tilde_n_neg) / count(in.n);
    return in.prefix_objective + min(*extra + params.C, min(all_negative, all_positive));
}

bool should_terminate(const BoundInputs& in, const ObjectiveParams& params) {
    const auto extra = negatives_to_reach(in.last_alpha, in.tilde_n_pos, in.n);
    if (!extra) return false;
    const Rational all_negative = params.w * count(in.tilde_n_pos) / count(in.n);
    const Rational all_positive = count(in.tilde_n_neg) / count(in.n);
    return params.C >= min(all_negative, all_positive) - *extra;
}

std::optional<Rational> g_infimum(std::size_t tilde_n_pos, std::size_t n, const Rational& C, const Rational& C1,
                                  const Rational& zeta, const Rational& min_alpha) {
    if (C1.sign() <= 0) throw std::invalid_argument("g_infimum needs C1 > 0");
    if (zeta >= Rational(1)) return std::nullopt;
    const Rational pos_rate = count(tilde_n_pos) / count(n);
    auto g = [&](const Rational& beta) {
        return (Rational(1) / beta - Rational(1)) * pos_rate + C + C1 * (beta - min_alpha);
    };
    const Rational beta_sq = pos_rate / C1;
    if (zeta * zeta < beta_sq && beta_sq <= Rational(1)) {
        // g(β*) = 2 sqrt(C1 ñ⁺/n) − ñ⁺/n + C − C1 α_min
        return Rational(2) * sqrt_lower(C1 * pos_rate) - pos_rate + C - C1 * min_alpha;
    }
    return min(g(zeta), g(Rational(1)));
}

Rational SoftBoundTerms::minimum() const {
    Rational m = min(all_negative, all_positive);
    if (split_at_min) m = min(m, *split_at_min);
    if (rising_rule) m = min(m, *rising_rule);
    return m;
}

SoftBoundTerms soft_bound_terms(const BoundInputs& in, const ObjectiveParams& params) {
    SoftBoundTerms t;
    const Rational overshoot = params.C1 * positive_part(in.tilde_alpha - in.min_alpha);
    const Rational all_negative = params.w * count(in.tilde_n_pos) / count(in.n);
    t.all_negative = all_negative + overshoot;
    t.all_positive = count(in.tilde_n_neg) / count(in.n) + overshoot;

    if (const auto extra = negatives_to_reach(in.min_alpha, in.tilde_n_pos, in.n)) {
        Rational v = *extra + params.C + overshoot;
        if (in.tilde_alpha >= in.min_alpha) v += all_negative;
        t.split_at_min = std::move(v);
    }

    const Rational zeta = max(max(in.min_alpha, in.tilde_alpha), params.tau());
    if (params.C1.is_zero()) {
        // g is non-increasing without the C1 term: the infimum is g(1) = C.
        if (zeta < Rational(1)) t.rising_rule = params.C;
    } else {
        t.rising_rule = g_infimum(in.tilde_n_pos, in.n, params.C, params.C1, zeta, in.min_alpha);
    }
    return t;
}

Rational prefix_bound_soft(const BoundInputs& in, const ObjectiveParams& params) {
    return in.prefix_objective + soft_bound_terms(in, params).minimum();
}

} // namespace frl
