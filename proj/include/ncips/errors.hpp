#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ncips {

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

class FieldMismatch : public Error {
 public:
  using Error::Error;
};

/// Polynomial expansion produced more terms than the configured cap.
class TermBudgetExceeded : public Error {
 public:
  explicit TermBudgetExceeded(std::size_t cap)
      : Error("term budget exceeded (cap " + std::to_string(cap) + ")"), cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

/// A vector was expected to lie in the row space of a basis but does not.
class NotInSpan : public Error {
 public:
  NotInSpan() : Error("vector is not in the span of the basis") {}
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace ncips
