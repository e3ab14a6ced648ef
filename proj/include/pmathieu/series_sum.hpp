#pragma once

#include <array>

#include "pmathieu/types.hpp"

namespace pmathieu {

/// Sequential accumulator for series whose terms eventually decay geometrically
/// or faster.
///
/// Each term comes with an envelope (a magnitude that bounds the term and varies
/// smoothly in k, e.g. |z| of a conjugate twin). The tail is estimated as
/// env * rho / (1 - rho) with rho the largest of the last three envelope ratios.
/// Summation stops once env + tail <= tol * |partial|.
class GeometricTailSum {
 public:
  GeometricTailSum(double tol, long max_terms, const PartialObserver* observer = nullptr);

  /// Adds one term. Returns true once the stopping rule is met.
  /// Throws ConvergenceError on divergence (10 consecutive non-decreasing
  /// envelopes) or when the term budget is exhausted.
  bool add(double term, double envelope, double term_err = 0.0);

  double value() const noexcept { return partial_; }
  double tail_estimate() const noexcept { return tail_; }
  /// Tail estimate plus accumulated per-term errors.
  double error_estimate() const noexcept { return tail_ + term_err_; }
  long terms() const noexcept { return count_; }

  EvalResult result(MethodKind method) const;

 private:
  double tol_;
  long max_terms_;
  const PartialObserver* observer_;
  double partial_ = 0.0;
  double tail_ = 0.0;
  double term_err_ = 0.0;
  long count_ = 0;
  int non_decreasing_ = 0;
  std::array<double, 4> env_{};  // most recent last
};

}  // namespace pmathieu
