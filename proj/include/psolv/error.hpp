#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace psolv {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::string const& what, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column "
              + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A configured size limit (quotient order, homology order, closure order)
// would be exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// The input violates a structural precondition (non-transitive action,
// relator not satisfied, malformed diagram, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

}  // namespace psolv
