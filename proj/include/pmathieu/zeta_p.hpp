#pragma once

#include "pmathieu/types.hpp"

namespace pmathieu {

/// Parameters of the p-extended zeta function
///   zeta_p(alpha) = 1/Gamma(alpha) * int_0^inf t^{alpha-1} e^{-p/t} / (e^t - 1) dt.
struct ZetaPParams {
  double alpha = 2.0;
  double p = 0.0;
};

/// Throws DomainError unless alpha > 0, p >= 0, and alpha > 1 when p = 0.
void validate(const ZetaPParams& params);

/// Largest order routed to the K-series; beyond it K_alpha and Gamma(alpha)
/// leave double range, so the dispatcher uses the integral.
inline constexpr double kMaxKSeriesOrder = 50.0;

EvalResult zeta_p_integral(const ZetaPParams& params, double tol);

/// 2 p^{alpha/2} / Gamma(alpha) * sum_{n>=1} K_alpha(2 sqrt(n p)) / n^{alpha/2}.
///
/// Truncation uses K_a(x) e^{x} decreasing in x, which bounds the tail after
/// term n by term_n * (sqrt(n/p) + 1/(2p)).
EvalResult zeta_p_kseries(const ZetaPParams& params, double tol, long max_terms = 200000);

/// p = 0 -> Riemann zeta; alpha > 50 or p < threshold -> integral; else K-series.
EvalResult zeta_p(const ZetaPParams& params, double tol, double dispatch_p_threshold = 0.05);

}  // namespace pmathieu
