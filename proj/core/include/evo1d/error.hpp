#pragma once

#include <stdexcept>
#include <string>

namespace evo1d {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed scalar text or algebra document.
class ParseError : public Error {
 public:
  using Error::Error;
};

class FieldMismatch : public Error {
 public:
  FieldMismatch() : Error("operands live in different fields") {}
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// An exhaustive search would exceed the configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// The field does not support the requested operation or classification.
class UnsupportedField : public Error {
 public:
  using Error::Error;
};

/// An input violates an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The structure matrix violates the standing hypothesis dim(A²) = 1.
class RankError : public Error {
 public:
  enum class Kind { RankZero, RankTooLarge };

  RankError(Kind kind, std::size_t rank);

  Kind kind() const noexcept { return kind_; }
  std::size_t rank() const noexcept { return rank_; }

 private:
  Kind kind_;
  std::size_t rank_;
};

inline RankError::RankError(Kind kind, std::size_t rank)
    : Error(kind == Kind::RankZero
                ? "RankZero: structure matrix is zero (A² = 0), hypothesis dim(A²) = 1 violated"
                : "RankTooLarge: structure matrix has rank " + std::to_string(rank) +
                      ", hypothesis dim(A²) = 1 violated"),
      kind_(kind),
      rank_(rank) {}

}  // namespace evo1d
