#pragma once

#include <stdexcept>
#include <string>

namespace qdouble {

/// Malformed group spec, generator file or CLI argument.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A generated or requested group exceeds the configured order cap.
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Structural data that fails its invariants (non-group tables, bad modules).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operands belong to different groups.
class GroupMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A class function that should be a character has non-integral multiplicities.
class NotACharacterError : public std::domain_error {
 public:
  NotACharacterError(const std::string& what, double residual)
      : std::domain_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// No nonzero virtual character vanishes on the requested subgroup.
class NoSuchCharacterError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A module satisfies the twisted condition for no element or for several.
class NotASimpleSectorError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Two computations that must agree do not (signals an arithmetic bug).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A structural identity that holds in theory failed on concrete matrices.
class TheoremViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qdouble
