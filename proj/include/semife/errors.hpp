#ifndef SEMIFE_ERRORS_HPP_
#define SEMIFE_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace semife {

// Base of all library errors. Subclasses distinguish bad input (a caller
// mistake) from internal guard failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  using InputError::InputError;
};

class OutOfRangeEntry : public InputError {
 public:
  OutOfRangeEntry(std::size_t x, std::size_t y, long long value)
      : InputError("table entry (" + std::to_string(x) + "," + std::to_string(y) +
                   ") = " + std::to_string(value) + " is out of range"),
        x(x),
        y(y) {}
  std::size_t x, y;
};

class AssociativityViolation : public InputError {
 public:
  AssociativityViolation(std::size_t x, std::size_t y, std::size_t z)
      : InputError("associativity fails at (" + std::to_string(x) + "," + std::to_string(y) +
                   "," + std::to_string(z) + ")"),
        x(x),
        y(y),
        z(z) {}
  std::size_t x, y, z;
};

class CapExceeded : public InputError {
 public:
  using InputError::InputError;
};

class InvalidAutomorphism : public InputError {
 public:
  using InputError::InputError;
};

class ConstraintViolation : public InputError {
 public:
  using InputError::InputError;
};

class SideConditionFailure : public InputError {
 public:
  using InputError::InputError;
};

class HypothesisFailure : public InputError {
 public:
  using InputError::InputError;
};

class InvalidBeta : public InputError {
 public:
  using InputError::InputError;
};

class NotASolution : public Error {
 public:
  explicit NotASolution(double max_residual)
      : Error("pair is not a solution (max residual " + std::to_string(max_residual) + ")"),
        max_residual(max_residual) {}
  double max_residual;
};

// Internal consistency guard: a constructed family member failed its own
// equation.
class ResidualFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace semife

#endif  // SEMIFE_ERRORS_HPP_
