#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hre {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mismatched or unusable dimensions (non-square grid, rhs length, n < 2).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A spectral-radius input contained a negative cell.
class NonNegativityError : public Error {
public:
    using Error::Error;
};

/// An operation that requires a complete matrix got missing entries.
class MissingEntriesError : public Error {
public:
    using Error::Error;
};

/// The comparison graph is not strongly connected.
class NotIrreducibleError : public Error {
public:
    using Error::Error;
};

/// A row of the requested block has every off-diagonal entry missing.
class AllMissingRowError : public Error {
public:
    using Error::Error;
};

/// Known entries contradict each other (some cycle product differs from 1).
class NotConsistentError : public Error {
public:
    using Error::Error;
};

/// An unknown alternative has no known comparison at all (s_i = n - 1).
class IsolatedRowError : public Error {
public:
    using Error::Error;
};

/// Logarithmic assembly hit a nonpositive value.
class NonpositiveEntryError : public Error {
public:
    using Error::Error;
};

/// Strict mode: a solved weight came out nonpositive.
class NonpositiveSolutionError : public Error {
public:
    using Error::Error;
};

/// A ranking request was built on invalid comparison data.
class InvalidProblemError : public Error {
public:
    using Error::Error;
};

/// The assembled system has no unique solution at the configured tolerance.
class SingularSystemError : public Error {
public:
    SingularSystemError(const std::string& what, double pivot_floor)
        : Error(what), pivot_floor(pivot_floor) {}

    double pivot_floor = 0.0;
};

/// Malformed input text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : Error(what), line(line), column(column) {}

    std::size_t line = 0;
    std::size_t column = 0;
};

/// Structurally valid input that violates the problem-file schema.
class SchemaError : public Error {
public:
    SchemaError(std::string field_name, const std::string& what)
        : Error(field_name + ": " + what), field(std::move(field_name)) {}

    std::string field;
};

}  // namespace hre
