#pragma once

#include <stdexcept>
#include <string>

namespace splitkit {

/// Input exceeds a documented size limit (ground set, family size, search budget).
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Caller broke an operation's precondition.
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numeric function was evaluated outside its domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A game move that the rules do not allow.
class IllegalMove : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace splitkit
