#include "frl/search.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "frl/errors.hpp"
#include "frl/kernels.hpp"

namespace frl {

void SearchConfig::validate() const {
    if (iterations < 1) throw std::invalid_argument("iterations must be at least 1");
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must be in [0, 1]");
    if (!(p_terminate >= 0.0 && p_terminate < 1.0)) throw std::invalid_argument("p_terminate must be in [0, 1)");
    if (params.w.sign() <= 0) throw std::invalid_argument("w must be positive");
    if (params.C.sign() < 0 || params.C1.sign() < 0) throw std::invalid_argument("C and C1 must be non-negative");
}

namespace {

double positive_share(const ClassCounts& candidate, const PrefixState& prefix) {
    if (prefix.tilde_n_pos() == 0) throw std::logic_error("curiosity with no positives left");
    return static_cast<double>(candidate.pos) / static_cast<double>(prefix.tilde_n_pos());
}

void check(bool ok, const char* what) {
    if (!ok) throw std::logic_error(std::string("candidate verification failed: ") + what);
}

class Searcher {
public:
    Searcher(const BinaryDataset& dataset, const AntecedentSet& antecedents, const SearchConfig& config,
             ObjectiveKind kind)
        : d_(dataset), a_(antecedents), cfg_(config), kind_(kind), rng_(config.seed) {
        cfg_.validate();
        if (d_.n_pos() == 0 || d_.n_neg() == 0) throw DegenerateLabels();
        if (a_.empty()) throw std::invalid_argument("antecedent set is empty");
    }

    SearchResult run() {
        const auto start = std::chrono::steady_clock::now();
        SearchResult result;
        std::optional<Rational> best;
        for (std::size_t t = 1; t <= cfg_.iterations; ++t) {
            std::size_t considered = 0;
            PrefixState prefix = grow(t, best, considered);
            Rational obj = kind_ == ObjectiveKind::hard ? prefix.closed_objective(cfg_.params)
                                                        : prefix.closed_soft_objective(cfg_.params);
            if (!best || obj < *best) {
                best = obj;
                result.best_objective = std::move(obj);
                result.antecedent_ids = prefix.antecedent_ids();
                result.best_compatible = close(prefix, a_, ListMode::compatible);
                const double ms =
                    std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
                result.trace.improvements.push_back({t, ms, result.best_objective, prefix.size(), considered});
            }
            result.trace.candidates.insert(result.trace.candidates.end(), level_log_.begin(), level_log_.end());
        }
        result.best = kind_ == ObjectiveKind::hard ? result.best_compatible : softify(result.best_compatible);
        return result;
    }

private:
    bool stop_growing(const PrefixState& prefix) const {
        const BoundInputs in = bound_inputs(prefix, cfg_.params, kind_);
        if (kind_ == ObjectiveKind::hard) return should_terminate(in, cfg_.params);
        return !(prefix_bound_soft(in, cfg_.params) < prefix.closed_soft_objective(cfg_.params));
    }

    void verify(const PrefixState& prefix, std::size_t id, const std::optional<Rational>& best) const {
        const PrefixState next = prefix.extend(d_, a_, id, cfg_.params);
        const BoundInputs in = bound_inputs(next, cfg_.params, kind_);
        const BoundInputs ext = extension_inputs(prefix, next.rule_counts().back(), cfg_.params, kind_);
        check(in.prefix_objective == ext.prefix_objective, "incremental objective");
        check(in.tilde_n_pos == ext.tilde_n_pos && in.tilde_n_neg == ext.tilde_n_neg, "remaining counts");
        if (kind_ == ObjectiveKind::hard) {
            const Rational& alpha = next.alphas().back();
            check(alpha <= prefix.last_alpha(), "monotonicity");
            check(passes_necessary_condition(alpha, cfg_.params.w), "necessary condition");
            check(is_feasible(in), "feasibility");
            if (best && cfg_.prune) check(prefix_bound_frl(in, cfg_.params) < *best, "prefix bound");
        } else if (best && cfg_.prune) {
            check(prefix_bound_soft(in, cfg_.params) < *best, "soft prefix bound");
        }
    }

    PrefixState grow(std::size_t t, const std::optional<Rational>& best, std::size_t& considered) {
        level_log_.clear();
        PrefixState prefix = PrefixState::empty(d_);
        std::vector<std::size_t> pool;
        std::vector<double> scores;
        for (std::size_t depth = 0;; ++depth) {
            if (stop_growing(prefix)) break;
            if (rng_.uniform() < cfg_.p_terminate) break;

            if (cfg_.parallel_kernels)
                kernels::capture_counts_parallel(a_.all(), prefix.alive(), d_.labels(), counts_);
            else
                kernels::capture_counts_serial(a_.all(), prefix.alive(), d_.labels(), counts_);

            pool = candidate_set(prefix, counts_, cfg_.params, kind_, best, cfg_.prune);
            level_log_.push_back({t, depth, pool.size()});
            considered += pool.size();
            if (pool.empty()) break;

            scores.clear();
            for (auto l : pool)
                scores.push_back(kind_ == ObjectiveKind::hard ? curiosity_frl(counts_[l], prefix, cfg_.lambda)
                                                              : curiosity_soft(counts_[l], prefix, cfg_.lambda));
            const std::size_t chosen = pool[sample_candidate(scores, rng_)];
            if (cfg_.verify_candidates)
                for (auto l : pool) verify(prefix, l, best);
            prefix = prefix.extend(d_, a_, chosen, cfg_.params);
        }
        return prefix;
    }

    const BinaryDataset& d_;
    const AntecedentSet& a_;
    SearchConfig cfg_;
    ObjectiveKind kind_;
    Rng rng_;
    std::vector<ClassCounts> counts_;
    std::vector<SearchTrace::Candidates> level_log_;
};

} // namespace

std::vector<std::size_t> candidate_set(const PrefixState& prefix, std::span<const ClassCounts> counts,
                                       const ObjectiveParams& params, ObjectiveKind kind,
                                       const std::optional<Rational>& best, bool prune) {
    std::vector<std::size_t> out;
    const bool use_bound = best && prune;
    const ClassCounts* last = prefix.is_empty() ? nullptr : &prefix.rule_counts().back();
    for (std::size_t l = 0; l < counts.size(); ++l) {
        const ClassCounts& c = counts[l];
        if (c.total() == 0 || prefix.contains(l)) continue;
        if (kind == ObjectiveKind::hard) {
            // α ≤ α_last by cross-multiplication; the empty prefix has α_last = 1
            if (last && static_cast<unsigned __int128>(c.pos) * last->total() >
                            static_cast<unsigned __int128>(last->pos) * c.total())
                continue;
            if (!params.predicts_positive(c.pos, c.neg)) continue;
            const BoundInputs ext = extension_inputs(prefix, c, params, kind);
            if (!is_feasible(ext)) continue;
            if (use_bound && !(prefix_bound_frl(ext, params) < *best)) continue;
        } else if (use_bound) {
            const BoundInputs ext = extension_inputs(prefix, c, params, kind);
            if (!(prefix_bound_soft(ext, params) < *best)) continue;
        }
        out.push_back(l);
    }
    return out;
}

double curiosity_frl(const ClassCounts& candidate, const PrefixState& prefix, double lambda) {
    const double share = positive_share(candidate, prefix);
    const double alpha = proportion(candidate.pos, candidate.total()).to_double();
    return lambda * alpha + (1.0 - lambda) * share;
}

double curiosity_soft(const ClassCounts& candidate, const PrefixState& prefix, double lambda) {
    const double share = positive_share(candidate, prefix);
    const Rational alpha = proportion(candidate.pos, candidate.total());
    // Zero once α exceeds α_min by 1% or more.
    const Rational capped = min(alpha, Rational(101) * prefix.min_alpha() - Rational(100) * alpha);
    return lambda * positive_part(capped).to_double() + (1.0 - lambda) * share;
}

std::size_t sample_candidate(std::span<const double> scores, Rng& rng) {
    if (scores.empty()) throw std::invalid_argument("no candidates to sample");
    double total = 0;
    for (double s : scores) {
        if (!(s >= 0.0) || !std::isfinite(s)) throw std::invalid_argument("curiosity scores must be finite and >= 0");
        total += s;
    }
    if (total <= 0.0) return static_cast<std::size_t>(rng.below(scores.size()));
    const double u = rng.uniform() * total;
    double acc = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        acc += scores[i];
        if (u < acc) return i;
    }
    // Rounding can leave u just past the last partial sum.
    for (std::size_t i = scores.size(); i-- > 0;)
        if (scores[i] > 0.0) return i;
    return scores.size() - 1;
}

SearchResult run_frl(const BinaryDataset& dataset, const AntecedentSet& antecedents, const SearchConfig& config) {
    return Searcher(dataset, antecedents, config, ObjectiveKind::hard).run();
}

SearchResult run_soft_frl(const BinaryDataset& dataset, const AntecedentSet& antecedents, const SearchConfig& config) {
    return Searcher(dataset, antecedents, config, ObjectiveKind::soft).run();
}

} // namespace frl
