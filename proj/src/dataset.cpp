#include "frl/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "frl/errors.hpp"
#include "frl/random.hpp"

namespace frl {

namespace {

// Reads one RFC-4180 record; returns false at end of input.
bool read_record(std::istream& in, char delim, std::vector<std::string>& fields) {
    fields.clear();
    if (in.peek() == std::char_traits<char>::eof()) return false;
    std::string field;
    bool quoted = false, field_started = false;
    for (;;) {
        const int ci = in.get();
        if (ci == std::char_traits<char>::eof()) {
            if (quoted) throw DataError("unterminated quoted field");
            fields.push_back(std::move(field));
            return true;
        }
        const char c = static_cast<char>(ci);
        if (quoted) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get();
                    field.push_back('"');
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"' && !field_started) {
            quoted = true;
            field_started = true;
        } else if (c == delim) {
            fields.push_back(std::move(field));
            field.clear();
            field_started = false;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && in.peek() == '\n') in.get();
            fields.push_back(std::move(field));
            return true;
        } else {
            field.push_back(c);
            field_started = true;
        }
    }
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::optional<double> parse_number(const std::string& s) {
    if (s.empty()) return std::nullopt;
    double v = 0;
    const char* first = s.data();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::string format_number(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string interval_name(const std::string& col, double lo, double hi, bool closed) {
    return col + " in [" + format_number(lo) + "," + format_number(hi) + (closed ? "]" : ")");
}

} // namespace

RawDataset RawDataset::select_rows(const std::vector<std::size_t>& rows) const {
    RawDataset out;
    out.column_names = column_names;
    out.n_rows = rows.size();
    out.labels.reserve(rows.size());
    for (auto r : rows) out.labels.push_back(labels.at(r));
    for (const auto& col : columns) {
        std::visit(
            [&](const auto& values) {
                std::decay_t<decltype(values)> picked;
                picked.reserve(rows.size());
                for (auto r : rows) picked.push_back(values.at(r));
                out.columns.emplace_back(std::move(picked));
            },
            col);
    }
    return out;
}

RawDataset load_csv(const std::string& path, const CsvOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    return parse_csv(in, options);
}

RawDataset parse_csv(std::istream& in, const CsvOptions& options) {
    // skip a UTF-8 byte order mark
    if (in.peek() == 0xEF) {
        char bom[3] = {};
        in.read(bom, 3);
        if (!(in.gcount() == 3 && bom[1] == '\xBB' && bom[2] == '\xBF')) {
            in.clear();
            in.seekg(0);
        }
    }
    char delim = options.delimiter;
    if (delim == '\0') {
        std::string first_line;
        const auto pos = in.tellg();
        std::getline(in, first_line);
        in.clear();
        in.seekg(pos);
        delim = (first_line.find(';') != std::string::npos && first_line.find(',') == std::string::npos) ? ';' : ',';
    }

    std::vector<std::string> header;
    if (!read_record(in, delim, header)) throw DataError("empty CSV: no header");
    for (auto& h : header) h = trim(h);

    const auto label_it = std::find(header.begin(), header.end(), options.label_column);
    if (label_it == header.end()) throw DataError("label column '" + options.label_column + "' not found");
    const std::size_t label_col = static_cast<std::size_t>(label_it - header.begin());

    std::vector<std::vector<std::string>> cells(header.size());
    std::vector<std::string> record;
    std::size_t line = 1;
    while (read_record(in, delim, record)) {
        ++line;
        if (record.size() == 1 && trim(record[0]).empty()) continue;  // blank line
        if (record.size() != header.size())
            throw DataError("ragged row at record " + std::to_string(line) + ": expected " +
                            std::to_string(header.size()) + " fields, got " + std::to_string(record.size()));
        for (std::size_t c = 0; c < record.size(); ++c) cells[c].push_back(trim(record[c]));
    }
    const std::size_t rows = cells[label_col].size();
    if (rows == 0) throw DataError("no data rows");

    std::set<std::string> label_values(cells[label_col].begin(), cells[label_col].end());
    if (label_values.size() > 2)
        throw DataError("label column has " + std::to_string(label_values.size()) + " distinct values, expected 2");
    if (label_values.size() == 2 && !label_values.count(options.positive_value))
        throw DataError("positive value '" + options.positive_value + "' not present in label column");

    // Numeric iff every non-empty cell parses; missing numerics reject the row.
    std::vector<bool> numeric(header.size(), false);
    std::vector<bool> keep(rows, true);
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c == label_col) continue;
        bool any = false, all = true;
        for (const auto& v : cells[c]) {
            if (v.empty()) continue;
            any = true;
            if (!parse_number(v)) {
                all = false;
                break;
            }
        }
        numeric[c] = any && all;
        if (numeric[c])
            for (std::size_t r = 0; r < rows; ++r)
                if (cells[c][r].empty()) keep[r] = false;
    }

    RawDataset raw;
    for (std::size_t r = 0; r < rows; ++r) {
        if (!keep[r]) {
            ++raw.dropped_rows;
            continue;
        }
        raw.labels.push_back(cells[label_col][r] == options.positive_value ? 1 : -1);
    }
    raw.n_rows = raw.labels.size();
    if (raw.n_rows == 0) throw DataError("no data rows");

    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c == label_col) continue;
        raw.column_names.push_back(header[c]);
        if (numeric[c]) {
            NumericColumn col;
            col.reserve(raw.n_rows);
            for (std::size_t r = 0; r < rows; ++r)
                if (keep[r]) col.push_back(*parse_number(cells[c][r]));
            raw.columns.emplace_back(std::move(col));
        } else {
            CategoricalColumn col;
            col.reserve(raw.n_rows);
            for (std::size_t r = 0; r < rows; ++r)
                if (keep[r]) col.push_back(cells[c][r].empty() ? "?" : cells[c][r]);
            raw.columns.emplace_back(std::move(col));
        }
    }
    return raw;
}

BinningSchema fit_binning(const RawDataset& raw, std::size_t bins_per_numeric) {
    if (bins_per_numeric < 2) throw std::invalid_argument("bins_per_numeric must be at least 2");
    BinningSchema schema;
    for (std::size_t c = 0; c < raw.columns.size(); ++c) {
        ColumnBinning cb;
        cb.column = raw.column_names[c];
        if (const auto* nums = std::get_if<NumericColumn>(&raw.columns[c])) {
            cb.numeric = true;
            std::vector<double> sorted(*nums);
            std::sort(sorted.begin(), sorted.end());
            if (sorted.empty()) {
                cb.edges = {0.0, 0.0};
            } else {
                std::vector<double> distinct(sorted);
                distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
                if (distinct.size() <= bins_per_numeric) {
                    // One bin per distinct value; the last bin is [max, max].
                    cb.edges = distinct;
                    cb.edges.push_back(distinct.back());
                } else {
                    cb.edges.push_back(sorted.front());
                    for (std::size_t k = 1; k < bins_per_numeric; ++k) {
                        const double cut = sorted[k * sorted.size() / bins_per_numeric];
                        if (cut > cb.edges.back()) cb.edges.push_back(cut);
                    }
                    cb.edges.push_back(sorted.back());
                }
            }
        } else {
            const auto& cats = std::get<CategoricalColumn>(raw.columns[c]);
            std::set<std::string> values(cats.begin(), cats.end());
            cb.categories.assign(values.begin(), values.end());
        }
        schema.columns.push_back(std::move(cb));
    }
    return schema;
}

BinaryDataset apply_binning(const RawDataset& raw, const BinningSchema& schema) {
    const std::size_t n = raw.n_rows;
    std::vector<Predicate> predicates;
    std::vector<BitVector> bits;
    for (std::size_t s = 0; s < schema.columns.size(); ++s) {
        const ColumnBinning& cb = schema.columns[s];
        const auto it = std::find(raw.column_names.begin(), raw.column_names.end(), cb.column);
        if (it == raw.column_names.end()) throw SchemaMismatch("column '" + cb.column + "' missing from data");
        const std::size_t c = static_cast<std::size_t>(it - raw.column_names.begin());
        const std::size_t first = bits.size();

        if (cb.numeric) {
            const auto* nums = std::get_if<NumericColumn>(&raw.columns[c]);
            if (!nums) throw SchemaMismatch("column '" + cb.column + "' is not numeric");
            const std::size_t nb = cb.num_predicates();
            for (std::size_t b = 0; b < nb; ++b) {
                predicates.push_back({interval_name(cb.column, cb.edges[b], cb.edges[b + 1], b + 1 == nb), s,
                                      PredicateKind::interval});
                bits.emplace_back(n);
            }
            for (std::size_t r = 0; r < n; ++r) {
                // bin = number of interior cut points <= value
                const auto cut_begin = cb.edges.begin() + 1;
                const auto cut_end = cb.edges.end() - 1;
                std::size_t b = static_cast<std::size_t>(std::upper_bound(cut_begin, cut_end, (*nums)[r]) - cut_begin);
                b = std::min(b, nb - 1);
                bits[first + b].set(r);
            }
        } else {
            std::map<std::string, std::size_t> index;
            for (const auto& cat : cb.categories) {
                index.emplace(cat, bits.size());
                predicates.push_back({cb.column + "=" + cat, s, PredicateKind::category});
                bits.emplace_back(n);
            }
            if (const auto* cats = std::get_if<CategoricalColumn>(&raw.columns[c])) {
                for (std::size_t r = 0; r < n; ++r)
                    if (auto f = index.find((*cats)[r]); f != index.end()) bits[f->second].set(r);
            } else {
                const auto& nums = std::get<NumericColumn>(raw.columns[c]);
                for (std::size_t r = 0; r < n; ++r)
                    if (auto f = index.find(format_number(nums[r])); f != index.end()) bits[f->second].set(r);
            }
        }
    }
    BitVector labels(n);
    for (std::size_t r = 0; r < n; ++r)
        if (raw.labels[r] == 1) labels.set(r);
    return BinaryDataset(std::move(predicates), std::move(bits), std::move(labels), schema);
}

BinaryDataset binarize(const RawDataset& raw, std::size_t bins_per_numeric) {
    return apply_binning(raw, fit_binning(raw, bins_per_numeric));
}

BinaryDataset::BinaryDataset(std::vector<Predicate> predicates, std::vector<BitVector> predicate_bits,
                             BitVector labels, BinningSchema schema)
    : predicates_(std::move(predicates)),
      bits_(std::move(predicate_bits)),
      labels_(std::move(labels)),
      schema_(std::move(schema)),
      n_(labels_.size()),
      n_pos_(labels_.count()) {
    if (predicates_.size() != bits_.size()) throw std::invalid_argument("predicate / bit vector count mismatch");
    std::set<std::string> names;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i].size() != n_) throw std::invalid_argument("predicate bit vector length differs from n");
        if (!names.insert(predicates_[i].name).second)
            throw std::invalid_argument("duplicate predicate name '" + predicates_[i].name + "'");
    }
}

std::vector<bool> BinaryDataset::row_predicates(std::size_t row) const {
    std::vector<bool> out(bits_.size());
    for (std::size_t p = 0; p < bits_.size(); ++p) out[p] = bits_[p].test(row);
    return out;
}

std::optional<std::size_t> BinaryDataset::predicate_index(const std::string& name) const {
    for (std::size_t i = 0; i < predicates_.size(); ++i)
        if (predicates_[i].name == name) return i;
    return std::nullopt;
}

BinaryDataset BinaryDataset::select_rows(const std::vector<std::size_t>& rows) const {
    std::vector<BitVector> bits;
    bits.reserve(bits_.size());
    for (const auto& src : bits_) {
        BitVector b(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (src.test(rows[i])) b.set(i);
        bits.push_back(std::move(b));
    }
    BitVector labels(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (labels_.test(rows[i])) labels.set(i);
    return BinaryDataset(predicates_, std::move(bits), std::move(labels), schema_);
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_rows(std::size_t n, double train_fraction,
                                                                         std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw std::invalid_argument("train fraction must be in (0, 1)");
    if (n < 2) throw DataError("cannot split fewer than 2 rows");
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    Rng rng(seed);
    for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    const auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n)));
    std::vector<std::size_t> train(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_train));
    std::vector<std::size_t> test(perm.begin() + static_cast<std::ptrdiff_t>(n_train), perm.end());
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
    return {std::move(train), std::move(test)};
}

std::pair<BinaryDataset, BinaryDataset> split(const BinaryDataset& dataset, double train_fraction,
                                              std::uint64_t seed) {
    auto [train, test] = split_rows(dataset.n(), train_fraction, seed);
    return {dataset.select_rows(train), dataset.select_rows(test)};
}

} // namespace frl
