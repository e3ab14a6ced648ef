#include "pmathieu/zeta_p.hpp"

#include <cmath>
#include <string>

#include "pmathieu/errors.hpp"
#include "pmathieu/quadrature.hpp"
#include "pmathieu/special_kernels.hpp"

namespace pmathieu {

void validate(const ZetaPParams& params) {
  if (!std::isfinite(params.alpha) || !(params.alpha > 0.0)) throw DomainError("zeta_p: requires alpha > 0");
  if (!std::isfinite(params.p) || !(params.p >= 0.0)) throw DomainError("zeta_p: requires p >= 0");
  if (params.p == 0.0 && !(params.alpha > 1.0)) throw DomainError("zeta_p: requires alpha > 1 when p = 0");
}

EvalResult zeta_p_integral(const ZetaPParams& params, double tol) {
  validate(params);
  IntegrandSpec spec;
  spec.sigma = params.alpha - 1.0;
  spec.p = params.p;
  spec.weight = Weight::Bose;
  spec.log_scale = -std::lgamma(params.alpha);
  EvalResult r = integrate_semi_infinite(spec, tol);
  r.method = MethodKind::ZetaPIntegral;
  return r;
}

EvalResult zeta_p_kseries(const ZetaPParams& params, double tol, long max_terms) {
  validate(params);
  if (!(params.p > 0.0)) throw DomainError("zeta_p_kseries: requires p > 0");
  if (params.alpha > kMaxKSeriesOrder) throw DomainError("zeta_p_kseries: order alpha must be <= 50");
  const double a = params.alpha;
  const double p = params.p;
  const double log_pref = std::log(2.0) + 0.5 * a * std::log(p) - std::lgamma(a);

  double partial = 0.0;
  double tail = 0.0;
  long n = 1;
  for (;; ++n) {
    const double x = 2.0 * std::sqrt(n * p);
    const double k = bessel_k_real(a, x);
    const double term = k == 0.0 ? 0.0 : std::exp(log_pref + std::log(k) - 0.5 * a * std::log(double(n)));
    partial += term;
    tail = term * (std::sqrt(n / p) + 0.5 / p);
    if (tail <= tol * partial) break;
    if (n >= max_terms) {
      throw ConvergenceError("zeta_p_kseries: term budget exhausted",
                             EvalResult{partial, tail, n, MethodKind::ZetaPKSeries});
    }
  }
  // Each K value carries ~1e-15 relative error.
  return EvalResult{partial, tail + 4e-16 * partial * std::sqrt(double(n)), n, MethodKind::ZetaPKSeries};
}

EvalResult zeta_p(const ZetaPParams& params, double tol, double dispatch_p_threshold) {
  validate(params);
  if (params.p == 0.0) {
    const double z = riemann_zeta(params.alpha);
    return EvalResult{z, 1e-15 * z, 1, MethodKind::RiemannZeta};
  }
  if (params.alpha <= kMaxKSeriesOrder && params.p >= dispatch_p_threshold) {
    return zeta_p_kseries(params, tol);
  }
  return zeta_p_integral(params, tol);
}

}  // namespace pmathieu
