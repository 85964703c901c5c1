#include "frl/antecedent.hpp"

#include <algorithm>
#include <map>

#include "frl/errors.hpp"

namespace frl {

std::string Antecedent::name(const BinaryDataset& dataset) const {
    std::string s;
    for (std::size_t k = 0; k < predicate_ids.size(); ++k) {
        if (k) s += " AND ";
        s += dataset.predicate(predicate_ids[k]).name;
    }
    return s;
}

Antecedent make_antecedent(const BinaryDataset& dataset, std::vector<std::size_t> predicate_ids) {
    if (predicate_ids.empty()) throw std::invalid_argument("antecedent needs at least one predicate");
    std::sort(predicate_ids.begin(), predicate_ids.end());
    if (std::adjacent_find(predicate_ids.begin(), predicate_ids.end()) != predicate_ids.end())
        throw std::invalid_argument("antecedent repeats a predicate");
    Antecedent a;
    a.bits = dataset.predicate_bits(predicate_ids.at(0));
    for (std::size_t k = 1; k < predicate_ids.size(); ++k) a.bits &= dataset.predicate_bits(predicate_ids.at(k));
    a.support_pos = and_count(a.bits, dataset.labels());
    a.support_neg = a.bits.count() - a.support_pos;
    a.predicate_ids = std::move(predicate_ids);
    return a;
}

ClassCounts coverage_counts(const BinaryDataset& dataset, const Antecedent& antecedent, const BitVector& alive) {
    const std::size_t tot = and_count(antecedent.bits, alive);
    const std::size_t pos = and_count(antecedent.bits, alive, dataset.labels());
    return {pos, tot - pos};
}

AntecedentSet mine(const BinaryDataset& dataset, std::size_t max_predicates, const Rational& min_class_support,
                   bool parallel) {
    if (max_predicates < 1 || max_predicates > 2) throw std::invalid_argument("max_predicates must be 1 or 2");
    if (min_class_support.sign() <= 0 || min_class_support > Rational(1))
        throw std::invalid_argument("min_class_support must be in (0, 1]");
    if (dataset.n_pos() == 0 || dataset.n_neg() == 0) throw DegenerateLabels();

    const Rational pos_needed = min_class_support * Rational(static_cast<std::int64_t>(dataset.n_pos()));
    const Rational neg_needed = min_class_support * Rational(static_cast<std::int64_t>(dataset.n_neg()));
    auto passes = [&](const ClassCounts& c) {
        if (c.total() == 0) return false;
        return Rational(static_cast<std::int64_t>(c.pos)) >= pos_needed ||
               Rational(static_cast<std::int64_t>(c.neg)) >= neg_needed;
    };

    std::vector<std::vector<std::size_t>> chosen;
    for (std::size_t p = 0; p < dataset.num_predicates(); ++p) {
        const std::size_t pos = and_count(dataset.predicate_bits(p), dataset.labels());
        const ClassCounts c{pos, dataset.predicate_bits(p).count() - pos};
        if (passes(c)) chosen.push_back({p});
    }
    if (max_predicates == 2) {
        const auto pairs = parallel ? kernels::pair_supports_parallel(dataset) : kernels::pair_supports_serial(dataset);
        for (const auto& ps : pairs)
            if (passes(ps.counts)) chosen.push_back({ps.first, ps.second});
    }
    std::sort(chosen.begin(), chosen.end());

    std::vector<Antecedent> out;
    out.reserve(chosen.size());
    for (auto& ids : chosen) out.push_back(make_antecedent(dataset, std::move(ids)));
    return AntecedentSet(std::move(out), MiningPolicy{max_predicates, min_class_support});
}

AntecedentSet antecedents_from_names(const BinaryDataset& dataset,
                                     const std::vector<std::vector<std::string>>& names, MiningPolicy policy) {
    std::vector<Antecedent> out;
    for (const auto& conj : names) {
        std::vector<std::size_t> ids;
        for (const auto& nm : conj) {
            const auto idx = dataset.predicate_index(nm);
            if (!idx) throw SchemaMismatch("unknown predicate '" + nm + "'");
            ids.push_back(*idx);
        }
        out.push_back(make_antecedent(dataset, std::move(ids)));
    }
    return AntecedentSet(std::move(out), std::move(policy));
}

} // namespace frl
