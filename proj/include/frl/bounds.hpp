#pragma once

#include <cstddef>
#include <optional>

#include "frl/kernels.hpp"
#include "frl/rational.hpp"
#include "frl/rulelist.hpp"

namespace frl {

// Quantities of a prefix e that the pruning bounds depend on.
struct BoundInputs {
    std::size_t tilde_n_pos = 0;
    std::size_t tilde_n_neg = 0;
    Rational last_alpha = 1;  // α of the last rule (1 for the empty prefix)
    Rational min_alpha = 1;   // min α over the prefix (1 for the empty prefix)
    Rational tilde_alpha = 0;
    Rational prefix_objective = 0;  // L(e) for the hard bound, L̃(e) for the soft one
    std::size_t n = 0;
};

enum class ObjectiveKind { hard, soft };

BoundInputs bound_inputs(const PrefixState& prefix, const ObjectiveParams& params, ObjectiveKind kind);

// Inputs of e' = e + (rule capturing `captured`), without materializing e'.
BoundInputs extension_inputs(const PrefixState& prefix, const ClassCounts& captured, const ObjectiveParams& params,
                             ObjectiveKind kind);

// A compatible falling extension exists: ñ⁻·α ≥ (1−α)·ñ⁺ with α the last rule's proportion.
bool is_feasible(const BoundInputs& in);

// α > 1/(1+w), strictly.
bool passes_necessary_condition(const Rational& alpha, const Rational& w);

// L*(e): lower bound on L over compatible falling lists beginning with a feasible e.
Rational prefix_bound_frl(const BoundInputs& in, const ObjectiveParams& params);

// True when closing e right away attains L*(e).
bool should_terminate(const BoundInputs& in, const ObjectiveParams& params);

// inf over zeta < β ≤ 1 of g(β) = (1/β − 1)ñ⁺/n + C + C1(β − α_min), C1 > 0.
// nullopt when the range is empty (zeta ≥ 1). When the stationary point
// β* = sqrt(ñ⁺/(C1 n)) is interior the value is rounded down by < 2^-63/n.
std::optional<Rational> g_infimum(std::size_t tilde_n_pos, std::size_t n, const Rational& C, const Rational& C1,
                                  const Rational& zeta, const Rational& min_alpha);

// The four candidates of the soft bound's inner minimum; nullopt = +∞.
struct SoftBoundTerms {
    std::optional<Rational> split_at_min;  // rule at α_min then else
    std::optional<Rational> rising_rule;   // inf g(β) over (ζ, 1]
    Rational all_negative;                 // w ñ⁺/n + C1⌊α̃ − α_min⌋₊
    Rational all_positive;                 // ñ⁻/n + C1⌊α̃ − α_min⌋₊
    Rational minimum() const;
};
SoftBoundTerms soft_bound_terms(const BoundInputs& in, const ObjectiveParams& params);

// L̃*(e): lower bound on L̃ over compatible rule lists beginning with e.
Rational prefix_bound_soft(const BoundInputs& in, const ObjectiveParams& params);

} // namespace frl
