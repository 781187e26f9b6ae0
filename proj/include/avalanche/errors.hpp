#pragma once

#include <stdexcept>

namespace avalanche {

struct SimError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyWindowError : SimError { using SimError::SimError; };
struct OutOfWindowError : SimError { using SimError::SimError; };
struct BoundaryTruncatedError : SimError { using SimError::SimError; };
struct NoVacantSiteError : SimError { using SimError::SimError; };
struct CouplingBrokenError : SimError { using SimError::SimError; };
struct DominationViolatedError : SimError { using SimError::SimError; };
struct AlreadyStoppedError : SimError { using SimError::SimError; };
struct OutOfDomainError : SimError { using SimError::SimError; };
struct IncompleteTraceError : SimError { using SimError::SimError; };
struct BudgetExceededError : SimError { using SimError::SimError; };
struct EmptyTruncationError : SimError { using SimError::SimError; };
struct BracketFailureError : SimError { using SimError::SimError; };
struct DegenerateStateError : SimError { using SimError::SimError; };
struct NegativityBreachError : SimError { using SimError::SimError; };

}  // namespace avalanche
