#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace psiforge {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A structure would exceed a documented size cap (or is degenerate).
class SizeError : public Error {
  public:
    using Error::Error;
};

/// Wrong number of arguments for an operation or term symbol.
class ArityError : public Error {
  public:
    using Error::Error;
};

/// A documented precondition of an operation does not hold for its input.
class PreconditionError : public Error {
  public:
    using Error::Error;
};

/// Malformed external input (JSON documents, partitions, maps, ...).
class InputError : public Error {
  public:
    using Error::Error;
};

/// A request the library refuses instead of silently degrading (e.g. an
/// exhaustive enumeration that cannot finish).
class InfeasibleError : public Error {
  public:
    using Error::Error;
};

/// A self-check failed. Always indicates a bug in this library.
class InternalError : public Error {
  public:
    using Error::Error;
};

/// Syntax errors in the term language. `column` is 1-based; end of input
/// is reported as one past the last character.
class ParseError : public Error {
  public:
    ParseError(const std::string& message, std::size_t column)
        : Error("syntax error at column " + std::to_string(column) + ": " + message), column_(column) {}

    [[nodiscard]] std::size_t column() const { return column_; }

  private:
    std::size_t column_;
};

} // namespace psiforge
