#pragma once

#include <stdexcept>
#include <string>

namespace nilp {

/// Element or table does not fit the additive shape it is used with.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Non-invertible residue and similar arithmetic failures.
class ArithmeticError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Family parameters violate the family's constraints.
class ConstraintError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The prime is too small for the nilpotency index (k < p, or index < p - 1).
class RegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A radical chain stabilized above the zero subgroup.
class NotNilpotentError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed input document.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed (fixed-point did not converge,
/// recovered product is not pre-Lie, ...).
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace nilp
