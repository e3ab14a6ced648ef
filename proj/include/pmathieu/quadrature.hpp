#pragma once

#include <functional>

#include "pmathieu/types.hpp"

namespace pmathieu {

enum class Weight {
  Bose,  // 1 / (e^t - 1)
  Exp,   // e^{-q t}
};

enum class Oscillator { None, BesselJ, Cos, Sin };

/// Integrand  exp(log_scale) * t^sigma * e^{-p/t} * w(t) * g(t)  on (0, inf).
struct IntegrandSpec {
  double sigma = 0.0;
  double p = 0.0;
  Weight weight = Weight::Bose;
  double q = 0.0;  // Exp weight rate
  Oscillator oscillator = Oscillator::None;
  double nu = 0.0;     // BesselJ order
  double gamma = 0.0;  // oscillator frequency
  /// Added to the exponent; lets callers fold 1/Gamma(alpha) in without overflow.
  double log_scale = 0.0;
};

/// Exponent e with integrand ~ t^e as t -> 0+ when p = 0.
double small_t_exponent(const IntegrandSpec& spec);

/// Pointwise evaluation of the integrand (t > 0).
double eval_integrand(const IntegrandSpec& spec, double t);

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;  // integral of |f|
  long evals = 0;
};

/// Globally adaptive 21-point Gauss-Kronrod on [a, b]. Subdivides the interval
/// with the largest error until the summed error drops below
/// max(abs_tol, rel_l1_tol * integral of |f|) or the interval budget runs out.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, double rel_l1_tol = 0.0, int max_intervals = 200);

/// Integral over (0, inf) of the spec's integrand.
///
/// The region near 0 is mapped by t = e^u so the e^{-p/t} singularity becomes
/// a smooth double-exponential decay. The rest is split at (approximate)
/// oscillator zeros, each panel adaptively integrated, until the exponential
/// envelope bound on the remaining tail is below 1e-18 of the accumulated
/// |f| mass. Panel sums are Wynn-epsilon accelerated if the panel budget runs
/// out while an oscillator is active.
///
/// err_estimate = sum of panel estimates + both tail bounds; terms = integrand evaluations.
EvalResult integrate_semi_infinite(const IntegrandSpec& spec, double tol);

/// sum_{k>=1} closed_form(k), i.e. the Bose weight expanded as sum_k e^{-k t}
/// and each Laplace-type integral replaced by its closed form.
EvalResult laplace_term_sum(const IntegrandSpec& spec, const std::function<double(long)>& closed_form,
                            double tol, long max_terms = 100000);

}  // namespace pmathieu
