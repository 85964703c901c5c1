#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "frl/antecedent.hpp"
#include "frl/bounds.hpp"
#include "frl/dataset.hpp"
#include "frl/random.hpp"
#include "frl/rational.hpp"
#include "frl/rulelist.hpp"

namespace frl {

struct SearchConfig {
    ObjectiveParams params;
    std::size_t iterations = 1000;  // T
    std::uint64_t seed = 42;
    double lambda = 0.5;            // curiosity mixing weight
    double p_terminate = 0.05;      // chance to stop growing a list at each level
    bool parallel_kernels = true;   // OpenMP capture counting
    bool verify_candidates = false; // re-check every admitted candidate on a materialized prefix
    bool prune = true;              // false: bound comparisons against the incumbent always pass

    void validate() const;
};

struct SearchTrace {
    struct Improvement {
        std::size_t iteration = 0;
        double elapsed_ms = 0;
        Rational objective;
        std::size_t size = 0;
        std::size_t candidates_considered = 0;  // Σ|S| over the levels of that iteration
    };
    struct Candidates {
        std::size_t iteration = 0;
        std::size_t depth = 0;
        std::size_t count = 0;
    };
    std::vector<Improvement> improvements;
    std::vector<Candidates> candidates;
};

struct SearchResult {
    RuleList best;             // FRL: compatible falling list; softFRL: softened list
    RuleList best_compatible;  // the list the objective was evaluated on
    Rational best_objective;   // L (FRL) or L̃ (softFRL) of best_compatible
    std::vector<std::size_t> antecedent_ids;
    SearchTrace trace;
};

SearchResult run_frl(const BinaryDataset& dataset, const AntecedentSet& antecedents, const SearchConfig& config);
SearchResult run_soft_frl(const BinaryDataset& dataset, const AntecedentSet& antecedents, const SearchConfig& config);

// Candidate set S at `prefix`: antecedent ids not yet used, capturing at least
// one alive row, passing the level filters of the chosen algorithm and, when
// `best` is set and prune is on, whose extension bound is below *best.
// counts[l] must be antecedent l's capture counts on prefix.alive().
std::vector<std::size_t> candidate_set(const PrefixState& prefix, std::span<const ClassCounts> counts,
                                       const ObjectiveParams& params, ObjectiveKind kind,
                                       const std::optional<Rational>& best, bool prune = true);

// λα + (1−λ) n⁺/ñ⁺ for a candidate capturing `candidate` after `prefix`.
double curiosity_frl(const ClassCounts& candidate, const PrefixState& prefix, double lambda);
// λ⌊min(α, 101 α_min − 100 α)⌋₊ + (1−λ) n⁺/ñ⁺
double curiosity_soft(const ClassCounts& candidate, const PrefixState& prefix, double lambda);

// Index drawn proportionally to scores; uniform when all scores are zero.
std::size_t sample_candidate(std::span<const double> scores, Rng& rng);

} // namespace frl
