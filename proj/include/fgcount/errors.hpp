#pragma once

#include <stdexcept>
#include <string>

namespace fgcount {

/// Caller broke a documented precondition (bad epsilon, empty set, ...).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// EdgeCount ran out of loop iterations before reaching an exact branch.
class IterationBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exhaustive routine was asked to work above its configured size cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A generator could not produce an instance with the requested witness count.
class InfeasiblePlant : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed instance file or configuration.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fgcount
