#pragma once

#include <stdexcept>
#include <string>

namespace seamquest {

/// Argument outside an operation's mathematical domain (zero-length vector,
/// non-positive distance).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Caller broke an operation's precondition (wrong beacon for the active
/// quest, time running backwards).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace seamquest
