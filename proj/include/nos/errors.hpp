#pragma once

#include <stdexcept>
#include <string>

namespace nos {

/// Operands that cannot be combined (dimension or modulus mismatch, bad index).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An input fails a documented precondition of the operation.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A desk-scale size limit was exceeded before any work was done.
class GuardrailExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration budget was exceeded; the question is left undecided.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical routine failed to converge or an internal identity broke.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A proven identity failed to hold; indicates a bug, never bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace nos
