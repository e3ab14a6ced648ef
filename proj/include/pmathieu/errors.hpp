#pragma once

#include <stdexcept>
#include <string>

#include "pmathieu/types.hpp"

namespace pmathieu {

/// A parameter lies outside the region where the requested quantity is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative evaluation did not reach its tolerance. Carries the best estimate.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, EvalResult best)
      : std::runtime_error(what), best_(best) {}

  const EvalResult& best() const noexcept { return best_; }

 private:
  EvalResult best_;
};

/// Internal cross-check failed (e.g. a conjugate-pair sum came out complex).
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pmathieu
