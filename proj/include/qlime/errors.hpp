#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qlime {

// Base for recoverable domain errors. Precondition violations (bad qubit
// index, shape mismatch) use std::invalid_argument / std::out_of_range
// instead; the CLI maps those to the "internal error" exit code.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Problems with user-supplied data: unreadable files, malformed rows,
// instances that cannot be explained. CLI exit code 2.
struct DataError : Error {
    using Error::Error;
};

// Dataset parsing failure, stamped with the 1-based CSV record number
// (the header is record 1).
struct IngestionError : DataError {
    IngestionError(std::size_t record, const std::string& what)
        : DataError("row " + std::to_string(record) + ": " + what), row(record) {}
    std::size_t row;
};

struct TrainingError : DataError {
    using DataError::DataError;
};

// Raised when an instance offers nothing to perturb (no present features).
struct ExplanationError : DataError {
    using DataError::DataError;
};

struct ExperimentError : DataError {
    using DataError::DataError;
};

}  // namespace qlime
