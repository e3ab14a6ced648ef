#pragma once

#include "pmathieu/types.hpp"

namespace pmathieu {

/// (mu, p, r) for S_{mu,p}(r).
struct MathieuParams {
  double mu = 1.0;
  double p = 0.0;
  double r = 0.5;
};

/// S_{mu,p}(r) = 2 sum_{n>=0} (-1)^n r^{2n} (mu+n choose n) zeta_p(2mu+2n+1), |r| < 1.
///
/// Terms may grow before they decay when r is close to 1, so the sum stops
/// only once |term_n| < tol |partial| and the next term is smaller still. The
/// first omitted term bounds the remainder; zeta_p errors are propagated.
/// zeta_p(0) = 0 for p > 0 (the 1/Gamma(alpha) factor vanishes), which makes
/// mu = -1/2 usable.
EvalResult s_series(const MathieuParams& params, const Controls& ctl = {});

/// n-th term 2 (-1)^n r^{2n} (mu+n choose n) zeta_p(2mu+2n+1).
double s_series_term(const MathieuParams& params, long n, double tol = 1e-12);

/// sqrt(pi) / ((2r)^{mu-1/2} Gamma(mu+1)) * int_0^inf t^{mu+1/2} e^{-p/t} / (e^t-1) J_{mu-1/2}(r t) dt.
/// Valid for every r > 0; mu > 0 when p = 0, mu >= -1/2 when p > 0.
EvalResult s_integral(const MathieuParams& params, const Controls& ctl = {});

/// S_mu(r) = sum_{n>=1} 2n / (n^2 + r^2)^{mu+1} at p = 0, by direct summation
/// plus an Euler-Maclaurin tail.
EvalResult s_classical(double mu, double r, double tol = 1e-12);

namespace detail {
/// Direct sum of the first n_direct - 1 terms plus the Euler-Maclaurin tail from n_direct.
EvalResult s_classical_at_cutoff(double mu, double r, long n_direct);
}  // namespace detail

}  // namespace pmathieu
