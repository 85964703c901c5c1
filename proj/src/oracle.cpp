#include "frl/oracle.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "frl/errors.hpp"

namespace frl {

namespace {

struct Node {
    const std::vector<std::size_t>& ids;
    const std::vector<ClassCounts>& counts;
    ClassCounts remainder;
};

// Depth-first walk over rule sequences. Membership is a dense row-by-row
// table built from the predicate columns.
class Walker {
public:
    Walker(const BinaryDataset& dataset, const AntecedentSet& antecedents, std::size_t max_len, bool falling)
        : m_(antecedents.m()), n_(dataset.n()), max_len_(max_len), falling_(falling), owner_(n_, -1) {
        sat_.assign(m_, std::vector<char>(n_, 0));
        for (std::size_t l = 0; l < m_; ++l)
            for (std::size_t r = 0; r < n_; ++r) {
                bool all = true;
                for (auto p : antecedents[l].predicate_ids) all = all && dataset.predicate_bits(p).test(r);
                sat_[l][r] = all ? 1 : 0;
            }
        positive_.resize(n_);
        for (std::size_t r = 0; r < n_; ++r) {
            positive_[r] = dataset.is_positive(r) ? 1 : 0;
            (positive_[r] ? remainder_.pos : remainder_.neg)++;
        }
    }

    // Applies a fixed prefix; false if one of its rules captures nothing.
    bool seed(const std::vector<std::size_t>& prefix) {
        for (auto l : prefix) {
            if (l >= m_) throw std::out_of_range("prefix antecedent id out of range");
            const ClassCounts c = scan(l);
            if (c.total() == 0) return false;
            push(l, c);
        }
        return true;
    }

    void walk(const std::function<void(const Node&)>& visit) { dfs(visit); }

    std::size_t explored = 0;
    std::size_t zero_capture = 0;
    std::size_t non_monotone = 0;

private:
    ClassCounts scan(std::size_t l) const {
        ClassCounts c;
        for (std::size_t r = 0; r < n_; ++r)
            if (owner_[r] < 0 && sat_[l][r]) (positive_[r] ? c.pos : c.neg)++;
        return c;
    }

    void push(std::size_t l, const ClassCounts& c) {
        const int idx = static_cast<int>(ids_.size());
        for (std::size_t r = 0; r < n_; ++r)
            if (owner_[r] < 0 && sat_[l][r]) owner_[r] = idx;
        ids_.push_back(l);
        counts_.push_back(c);
        used_.resize(m_, 0);
        used_[l] = 1;
        remainder_.pos -= c.pos;
        remainder_.neg -= c.neg;
    }

    void pop() {
        const int idx = static_cast<int>(ids_.size()) - 1;
        for (std::size_t r = 0; r < n_; ++r)
            if (owner_[r] == idx) owner_[r] = -1;
        used_[ids_.back()] = 0;
        remainder_.pos += counts_.back().pos;
        remainder_.neg += counts_.back().neg;
        ids_.pop_back();
        counts_.pop_back();
    }

    void dfs(const std::function<void(const Node&)>& visit) {
        ++explored;
        visit(Node{ids_, counts_, remainder_});
        if (ids_.size() >= max_len_) return;
        used_.resize(m_, 0);
        for (std::size_t l = 0; l < m_; ++l) {
            if (used_[l]) continue;
            const ClassCounts c = scan(l);
            if (c.total() == 0) {
                ++zero_capture;
                continue;
            }
            if (falling_ && !counts_.empty()) {
                const ClassCounts& last = counts_.back();
                if (Rational(c.pos, c.total()) > Rational(last.pos, last.total())) {
                    ++non_monotone;
                    continue;
                }
            }
            push(l, c);
            dfs(visit);
            pop();
        }
    }

    std::size_t m_, n_, max_len_;
    bool falling_;
    std::vector<std::vector<char>> sat_;
    std::vector<char> positive_;
    std::vector<int> owner_;
    std::vector<char> used_;
    std::vector<std::size_t> ids_;
    std::vector<ClassCounts> counts_;
    ClassCounts remainder_;
};

Rational share(const ClassCounts& c) {
    return c.total() == 0 ? Rational(0)
                          : Rational(static_cast<std::int64_t>(c.pos), static_cast<std::int64_t>(c.total()));
}

// Estimates of the closed list: rule proportions then the else proportion.
std::vector<Rational> estimates(const Node& node) {
    std::vector<Rational> a;
    for (const auto& c : node.counts) a.push_back(share(c));
    a.push_back(share(node.remainder));
    return a;
}

bool non_increasing(const std::vector<Rational>& a) {
    for (std::size_t j = 1; j < a.size(); ++j)
        if (a[j] > a[j - 1]) return false;
    return true;
}

// w·(missed positives) + (false alarms), each group predicting by α > 1/(1+w), over n.
Rational loss(const Node& node, const std::vector<Rational>& a, const Rational& w, std::size_t n) {
    const Rational tau = Rational(1) / (Rational(1) + w);
    Rational total = 0;
    auto add = [&](const ClassCounts& c, const Rational& alpha) {
        if (alpha > tau)
            total += Rational(static_cast<std::int64_t>(c.neg));
        else
            total += w * Rational(static_cast<std::int64_t>(c.pos));
    };
    for (std::size_t j = 0; j < node.counts.size(); ++j) add(node.counts[j], a[j]);
    add(node.remainder, a.back());
    return total / Rational(static_cast<std::int64_t>(n));
}

Rational overshoot(const std::vector<Rational>& a) {
    Rational total = 0;
    Rational lowest = 1;
    for (const auto& x : a) {
        if (x > lowest) total += x - lowest;
        if (x < lowest) lowest = x;
    }
    return total;
}

Rational hard_value(const Node& node, const std::vector<Rational>& a, const Rational& w, const Rational& C,
                    std::size_t n) {
    return loss(node, a, w, n) + C * Rational(static_cast<std::int64_t>(node.ids.size()));
}

RuleList build_list(const BinaryDataset& dataset, const AntecedentSet& antecedents,
                    const std::vector<std::size_t>& ids, const ObjectiveParams& params) {
    PrefixState prefix = PrefixState::empty(dataset);
    for (auto l : ids) prefix = prefix.extend(dataset, antecedents, l, params);
    return close(prefix, antecedents, ListMode::compatible);
}

void check_labels(const BinaryDataset& dataset) {
    if (dataset.n_pos() == 0 || dataset.n_neg() == 0) throw DegenerateLabels();
}

} // namespace

void check_oracle_guard(std::size_t m, std::size_t max_len) {
    const bool ok = (m <= 14 && max_len <= 6) || m <= 10;
    if (!ok)
        throw OracleGuard("oracle instance too large: m=" + std::to_string(m) + ", max_len=" +
                          std::to_string(max_len) + " (allowed: m<=14 with max_len<=6, or m<=10)");
}

OracleResult enumerate_optimal_frl(const BinaryDataset& dataset, const AntecedentSet& antecedents,
                                   const Rational& w, const Rational& C, std::size_t max_len) {
    check_oracle_guard(antecedents.m(), max_len);
    check_labels(dataset);
    Walker walker(dataset, antecedents, max_len, true);
    OracleResult out;
    bool have = false;
    walker.walk([&](const Node& node) {
        const auto a = estimates(node);
        if (!non_increasing(a)) return;
        Rational v = hard_value(node, a, w, C, dataset.n());
        if (!have || v < out.best_objective) {
            have = true;
            out.best_objective = std::move(v);
            out.antecedent_ids = node.ids;
        }
    });
    out.explored = walker.explored;
    out.zero_capture = walker.zero_capture;
    out.non_monotone = walker.non_monotone;
    out.best_list = build_list(dataset, antecedents, out.antecedent_ids, ObjectiveParams{w, C, 0});
    return out;
}

OracleResult enumerate_optimal_soft(const BinaryDataset& dataset, const AntecedentSet& antecedents,
                                    const Rational& w, const Rational& C, const Rational& C1, std::size_t max_len) {
    check_oracle_guard(antecedents.m(), max_len);
    check_labels(dataset);
    Walker walker(dataset, antecedents, max_len, false);
    OracleResult out;
    bool have = false;
    walker.walk([&](const Node& node) {
        const auto a = estimates(node);
        Rational v = hard_value(node, a, w, C, dataset.n()) + C1 * overshoot(a);
        if (!have || v < out.best_objective) {
            have = true;
            out.best_objective = std::move(v);
            out.antecedent_ids = node.ids;
        }
    });
    out.explored = walker.explored;
    out.zero_capture = walker.zero_capture;
    out.best_list = build_list(dataset, antecedents, out.antecedent_ids, ObjectiveParams{w, C, C1});
    return out;
}

BoundReport verify_prefix_bound(const std::vector<std::size_t>& prefix, const BinaryDataset& dataset,
                                const AntecedentSet& antecedents, const ObjectiveParams& params,
                                ObjectiveKind kind, std::size_t max_len) {
    check_oracle_guard(antecedents.m(), max_len);
    check_labels(dataset);

    PrefixState state = PrefixState::empty(dataset);
    for (auto l : prefix) state = state.extend(dataset, antecedents, l, params);
    const BoundInputs in = bound_inputs(state, params, kind);

    BoundReport report;
    report.bound = kind == ObjectiveKind::hard ? prefix_bound_frl(in, params) : prefix_bound_soft(in, params);

    const bool hard = kind == ObjectiveKind::hard;
    Walker walker(dataset, antecedents, max_len, hard);
    if (!walker.seed(prefix)) throw ZeroCapture();
    bool closed_seen = false;
    walker.walk([&](const Node& node) {
        const auto a = estimates(node);
        if (hard && !non_increasing(a)) return;
        Rational v = hard_value(node, a, params.w, params.C, dataset.n());
        if (!hard) v += params.C1 * overshoot(a);
        if (!closed_seen) {
            // the walk visits the prefix itself first
            closed_seen = true;
            report.closed_objective = v;
        }
        ++report.extensions;
        if (!report.enumerated_min || v < *report.enumerated_min) report.enumerated_min = v;
        if (v < report.bound) report.sound = false;
    });
    if (!closed_seen) {
        // ē is not falling; still report its objective for diagnostics
        Walker flat(dataset, antecedents, prefix.size(), false);
        flat.seed(prefix);
        flat.walk([&](const Node& node) {
            if (node.ids.size() != prefix.size()) return;
            report.closed_objective = hard_value(node, estimates(node), params.w, params.C, dataset.n());
        });
    }
    return report;
}

bool has_falling_extension(const std::vector<std::size_t>& prefix, const BinaryDataset& dataset,
                           const AntecedentSet& antecedents, std::size_t max_len) {
    Walker walker(dataset, antecedents, max_len, true);
    if (!walker.seed(prefix)) throw ZeroCapture();
    bool found = false;
    walker.walk([&](const Node& node) {
        if (!found && non_increasing(estimates(node))) found = true;
    });
    return found;
}

Instance random_instance(std::uint64_t seed, InstanceShape shape) {
    if (shape.rows < 2 || shape.predicates < 1) throw std::invalid_argument("instance too small");
    Rng rng(seed);
    std::vector<Predicate> predicates;
    std::vector<BitVector> bits;
    std::vector<double> weight(shape.predicates);
    double offset = 0;
    for (std::size_t p = 0; p < shape.predicates; ++p) {
        const double density = 0.15 + 0.45 * rng.uniform();
        BitVector b(shape.rows);
        for (std::size_t r = 0; r < shape.rows; ++r)
            if (rng.uniform() < density) b.set(r);
        if (!b.any()) b.set(static_cast<std::size_t>(rng.below(shape.rows)));
        predicates.push_back({"p" + std::to_string(p), p, PredicateKind::category});
        bits.push_back(std::move(b));
        weight[p] = 4.0 * rng.uniform() - 2.0;
        offset -= weight[p] * density;
    }
    BitVector labels(shape.rows);
    for (std::size_t r = 0; r < shape.rows; ++r) {
        double score = offset;
        for (std::size_t p = 0; p < shape.predicates; ++p)
            if (bits[p].test(r)) score += weight[p];
        if (rng.uniform() < 1.0 / (1.0 + std::exp(-2.0 * score))) labels.set(r);
    }
    // both classes must be present
    if (labels.count() == 0) labels.set(0);
    if (labels.count() == shape.rows) labels.set(0, false);
    BinaryDataset data(std::move(predicates), std::move(bits), std::move(labels));
    AntecedentSet antecedents = singleton_antecedents(data);
    return Instance{std::move(data), std::move(antecedents)};
}

AntecedentSet singleton_antecedents(const BinaryDataset& dataset) {
    std::vector<Antecedent> out;
    for (std::size_t p = 0; p < dataset.num_predicates(); ++p) {
        Antecedent a = make_antecedent(dataset, {p});
        if (a.support_pos + a.support_neg > 0) out.push_back(std::move(a));
    }
    return AntecedentSet(std::move(out), MiningPolicy{1, Rational(0)});
}

std::vector<std::size_t> random_prefix(const BinaryDataset& dataset, const AntecedentSet& antecedents, Rng& rng,
                                       std::size_t max_len, bool falling) {
    PrefixState state = PrefixState::empty(dataset);
    std::vector<std::size_t> pool;
    while (state.size() < max_len) {
        pool.clear();
        for (std::size_t l = 0; l < antecedents.m(); ++l) {
            if (state.contains(l)) continue;
            const ClassCounts c = coverage_counts(dataset, antecedents[l], state.alive());
            if (c.total() == 0) continue;
            if (falling && proportion(c.pos, c.total()) > state.last_alpha()) continue;
            pool.push_back(l);
        }
        if (pool.empty()) break;
        state = state.extend(dataset, antecedents, pool[rng.below(pool.size())], ObjectiveParams{});
    }
    return state.antecedent_ids();
}

void write_instance_csv(std::ostream& out, const BinaryDataset& dataset) {
    for (std::size_t p = 0; p < dataset.num_predicates(); ++p) out << dataset.predicate(p).name << ',';
    out << "label\n";
    for (std::size_t r = 0; r < dataset.n(); ++r) {
        for (std::size_t p = 0; p < dataset.num_predicates(); ++p)
            out << (dataset.predicate_bits(p).test(r) ? 1 : 0) << ',';
        out << (dataset.is_positive(r) ? 1 : 0) << '\n';
    }
}

} // namespace frl
