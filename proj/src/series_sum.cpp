#include "pmathieu/series_sum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pmathieu/errors.hpp"

namespace pmathieu {

GeometricTailSum::GeometricTailSum(double tol, long max_terms, const PartialObserver* observer)
    : tol_(tol), max_terms_(max_terms), observer_(observer) {}

bool GeometricTailSum::add(double term, double envelope, double term_err) {
  partial_ += term;
  term_err_ += term_err;
  ++count_;
  envelope = std::abs(envelope);

  if (count_ > 1 && envelope >= env_[3] && envelope > 0.0) {
    ++non_decreasing_;
  } else {
    non_decreasing_ = 0;
  }
  std::rotate(env_.begin(), env_.begin() + 1, env_.end());
  env_[3] = envelope;

  bool done = false;
  tail_ = std::numeric_limits<double>::infinity();
  if (envelope == 0.0 && count_ >= 4 && env_[2] == 0.0) {
    tail_ = 0.0;
    done = true;
  } else if (count_ >= 4) {
    double rho = 0.0;
    for (int i = 1; i < 4; ++i) {
      rho = env_[i - 1] > 0.0 ? std::max(rho, env_[i] / env_[i - 1]) : 1.0;
    }
    if (rho < 1.0) {
      tail_ = envelope * rho / (1.0 - rho);
      done = envelope + tail_ <= tol_ * std::abs(partial_) ||
             envelope + tail_ < std::numeric_limits<double>::min();
    }
  }
  if (observer_ && *observer_) (*observer_)(count_, partial_, std::isfinite(tail_) ? tail_ : envelope);
  if (done) return true;

  if (non_decreasing_ >= 10) {
    throw ConvergenceError("series diverges: 10 consecutive non-decreasing terms",
                           result(MethodKind::TermSum));
  }
  if (count_ >= max_terms_) {
    throw ConvergenceError("series did not converge within " + std::to_string(max_terms_) + " terms",
                           result(MethodKind::TermSum));
  }
  return false;
}

EvalResult GeometricTailSum::result(MethodKind method) const {
  EvalResult r;
  r.value = partial_;
  r.err_estimate = std::isfinite(tail_) ? error_estimate() : std::abs(env_[3]) + term_err_;
  r.terms = std::max<long>(count_, 1);
  r.method = method;
  return r;
}

}  // namespace pmathieu
