#pragma once

#include <stdexcept>
#include <string>

namespace frl {

// Bad or unusable input data (CLI exit code 2).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dataset has only one label class.
struct DegenerateLabels : DataError {
    DegenerateLabels() : DataError("degenerate labels: dataset needs at least one positive and one negative row") {}
};

// A model refers to a predicate the dataset does not have.
struct SchemaMismatch : DataError {
    using DataError::DataError;
};

// Extending a prefix with an antecedent that captures no remaining rows.
struct ZeroCapture : std::logic_error {
    ZeroCapture() : std::logic_error("antecedent captures no remaining rows") {}
};

// Oracle instance too large to enumerate.
struct OracleGuard : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace frl
