#pragma once

#include <stdexcept>
#include <string>

namespace tzeig {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad shapes, out-of-range ranks, malformed specs.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Malformed tensor or vector files.
class ParseError : public Error {
public:
    using Error::Error;
};

/// The dense eigensolver did not converge.
class SolverError : public Error {
public:
    SolverError(const std::string& what, long rows, long cols)
        : Error(what + " (" + std::to_string(rows) + "x" + std::to_string(cols) + ")"),
          rows_(rows), cols_(cols) {}

    long rows() const noexcept { return rows_; }
    long cols() const noexcept { return cols_; }

private:
    long rows_;
    long cols_;
};

/// Perron vector requested but the top eigenvector has mixed signs.
class DegeneracyError : public Error {
public:
    using Error::Error;
};

/// 1-norm renormalization of an iterate with negative entries.
class NormalizationError : public Error {
public:
    using Error::Error;
};

/// Iterate became non-finite or blew up.
class DivergenceError : public Error {
public:
    using Error::Error;
};

/// Zero update in a power iteration.
class DegenerateIterateError : public Error {
public:
    using Error::Error;
};

/// Transition tensor with a column that is not stochastic.
class CorruptTensorError : public Error {
public:
    using Error::Error;
};

}  // namespace tzeig
