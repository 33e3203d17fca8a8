#pragma once

#include <stdexcept>
#include <string>

namespace epsfact {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad arguments or inputs outside a routine's domain.
struct UsageError : Error {
  using Error::Error;
};

// Truncation level too small for the requested computation.
struct PrecisionError : Error {
  using Error::Error;
};

// A configured size budget would be exceeded.
struct ResourceError : Error {
  using Error::Error;
};

// An internal consistency check failed.
struct InvariantViolation : Error {
  using Error::Error;
};

struct SyntaxError : Error {
  SyntaxError(int line, int column, const std::string& msg)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line(line), column(column) {}
  int line;
  int column;
};

}  // namespace epsfact
