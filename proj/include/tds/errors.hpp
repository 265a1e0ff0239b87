#pragma once

#include <stdexcept>
#include <string>

namespace tds {

// Bad input data or parameters; the CLI maps these to exit code 1.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidSeries : ValidationError {
    using ValidationError::ValidationError;
};

struct InvalidParameter : ValidationError {
    using ValidationError::ValidationError;
};

struct InvalidQuantile : ValidationError {
    using ValidationError::ValidationError;
};

struct InvalidCdf : ValidationError {
    using ValidationError::ValidationError;
};

struct InsufficientWeights : ValidationError {
    using ValidationError::ValidationError;
};

struct IndexError : ValidationError {
    using ValidationError::ValidationError;
};

struct ParseError : ValidationError {
    ParseError(const std::string& what, std::size_t line)
        : ValidationError(what + " (line " + std::to_string(line) + ")"), line_number(line) {}
    std::size_t line_number;
};

// Numeric failures discovered while computing; the CLI maps these to exit code 2.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// E(u) = 0: the FF estimate is undefined at this level.
struct NoExceedances : NumericError {
    using NumericError::NumericError;
};

// C_n(u,u) = 0: log C_n is not usable.
struct DegenerateCopula : NumericError {
    using NumericError::NumericError;
};

struct MissingPair : NumericError {
    using NumericError::NumericError;
};

struct InvalidLambda : NumericError {
    using NumericError::NumericError;
};

struct NoLimit : NumericError {
    using NumericError::NumericError;
};

struct EmptyCell : NumericError {
    using NumericError::NumericError;
};

}  // namespace tds
