#pragma once

#include <stdexcept>
#include <string>

namespace sra {

/// Malformed input: bad indices, unknown names, parameters out of range.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The carrier is too large for the requested exhaustive operation.
class BudgetExceeded : public InputError {
 public:
  using InputError::InputError;
};

/// Exhaustive operation requested on the symbolic (infinite) model.
class UnsupportedModel : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A staged precondition does not hold (e.g. the algebra fails check_sra).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace sra
