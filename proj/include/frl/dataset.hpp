#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "frl/bitvec.hpp"

namespace frl {

using NumericColumn = std::vector<double>;
using CategoricalColumn = std::vector<std::string>;
using RawColumn = std::variant<NumericColumn, CategoricalColumn>;

// Parsed CSV before discretization. labels hold +1 / -1.
struct RawDataset {
    std::vector<std::string> column_names;
    std::vector<RawColumn> columns;
    std::vector<int> labels;
    std::size_t n_rows = 0;
    std::size_t dropped_rows = 0;  // rows rejected for a missing numeric cell

    RawDataset select_rows(const std::vector<std::size_t>& rows) const;
};

struct CsvOptions {
    std::string label_column;
    std::string positive_value;
    char delimiter = '\0';  // '\0': pick ';' when the header has semicolons but no commas
};

RawDataset load_csv(const std::string& path, const CsvOptions& options);
RawDataset parse_csv(std::istream& in, const CsvOptions& options);

enum class PredicateKind { category, interval };

struct Predicate {
    std::string name;
    std::size_t source_column = 0;
    PredicateKind kind = PredicateKind::category;
};

// How one raw column maps to predicates. Numeric bins are [edges[k], edges[k+1])
// with the last bin closed; values outside the training range fall into the
// first or last bin.
struct ColumnBinning {
    std::string column;
    bool numeric = false;
    std::vector<std::string> categories;  // sorted
    std::vector<double> edges;            // size = bins + 1

    std::size_t num_predicates() const { return numeric ? edges.size() - 1 : categories.size(); }
};

struct BinningSchema {
    std::vector<ColumnBinning> columns;
};

BinningSchema fit_binning(const RawDataset& raw, std::size_t bins_per_numeric);

class BinaryDataset {
public:
    BinaryDataset(std::vector<Predicate> predicates, std::vector<BitVector> predicate_bits,
                  BitVector labels, BinningSchema schema = {});

    std::size_t n() const { return n_; }
    std::size_t n_pos() const { return n_pos_; }
    std::size_t n_neg() const { return n_ - n_pos_; }
    std::size_t num_predicates() const { return predicates_.size(); }

    const std::vector<Predicate>& predicates() const { return predicates_; }
    const Predicate& predicate(std::size_t i) const { return predicates_[i]; }
    const BitVector& predicate_bits(std::size_t i) const { return bits_[i]; }
    const BitVector& labels() const { return labels_; }
    const BinningSchema& schema() const { return schema_; }

    bool is_positive(std::size_t row) const { return labels_.test(row); }
    std::vector<bool> row_predicates(std::size_t row) const;
    std::optional<std::size_t> predicate_index(const std::string& name) const;

    BinaryDataset select_rows(const std::vector<std::size_t>& rows) const;

private:
    std::vector<Predicate> predicates_;
    std::vector<BitVector> bits_;
    BitVector labels_;
    BinningSchema schema_;
    std::size_t n_ = 0;
    std::size_t n_pos_ = 0;
};

BinaryDataset apply_binning(const RawDataset& raw, const BinningSchema& schema);
BinaryDataset binarize(const RawDataset& raw, std::size_t bins_per_numeric);

// Seeded row partition; train gets round(train_fraction * n) rows, both parts
// keep the original row order.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_rows(std::size_t n, double train_fraction,
                                                                         std::uint64_t seed);
std::pair<BinaryDataset, BinaryDataset> split(const BinaryDataset& dataset, double train_fraction,
                                              std::uint64_t seed);

} // namespace frl
