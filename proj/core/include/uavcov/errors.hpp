#pragma once

#include <stdexcept>
#include <string>

namespace uavcov {

/// Scenario failed validation; the message names the first violated invariant.
class InvalidScenario : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the range an operation is defined on.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class OutOfRegion : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Cell carries no user mass, so no centroid or optimum is defined.
class EmptyCell : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative solver stopped without meeting its tolerance.
class NoConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace uavcov
