#pragma once

#include <stdexcept>
#include <string>

namespace walras {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-contract input: bad item index, wrong valuation class
// for a specialized solver, invalid allocation, and so on.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A configured enumeration or search budget would be exceeded. Solvers never
// degrade silently; they raise this instead.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Syntax or semantic error in a textual instance, with a 1-based position.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace walras
