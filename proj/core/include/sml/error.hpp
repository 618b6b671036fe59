#pragma once

#include <stdexcept>
#include <string>

namespace sml {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live over different numbers of generators or base variables.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A component exceeds the order allowed by its slot.
class OrderViolation : public Error {
 public:
  using Error::Error;
};

/// The request lies outside the exactly decidable regime.
class Unsupported : public Error {
 public:
  using Error::Error;
};

class SingularError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace sml
