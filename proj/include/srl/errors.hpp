#pragma once

#include <stdexcept>
#include <string>

namespace srl {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on user-supplied parameters does not hold.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Requested signal cannot be built inside the signal class (SNR too small, too many spikes).
class InfeasibleSignal : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A least-squares subproblem is rank deficient.
class DegenerateModel : public Error {
 public:
  using Error::Error;
};

/// Exhaustive enumeration would exceed the configured subset budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// An iterative solver diverged or ran out of its iteration budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace srl
