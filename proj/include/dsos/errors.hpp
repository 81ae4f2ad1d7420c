#pragma once

#include <stdexcept>
#include <string>

namespace dsos {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed arguments: wrong sizes, non-finite values, bad indices.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A configuration violates row/column monotonicity or an interlacing.
class ConstraintViolation : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of the function.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Iterative numerics failed to converge or to bracket.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Iteration or sampling budget exhausted.
class ResourceLimit : public Error {
public:
    using Error::Error;
};

/// Structured data (CSV/JSON) failed to parse or validate.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace dsos
