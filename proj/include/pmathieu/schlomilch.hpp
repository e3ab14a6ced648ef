#pragma once

#include "pmathieu/special_kernels.hpp"
#include "pmathieu/types.hpp"

namespace pmathieu {

/// z_{-/+} = sqrt(2p) [sqrt(q^2+gamma^2) -/+ q]^{1/2}.
/// z_- is formed as sqrt(2p gamma^2 / (R + q)) so it keeps full precision
/// when gamma << q; z_-^2 z_+^2 = 4 p^2 gamma^2.
struct ZPair {
  double z_minus = 0.0;
  double z_plus = 0.0;
};

ZPair make_zpair(double p, double q, double gamma);

/// int_0^inf x^{-1} e^{-qx-p/x} J_nu(gamma x) dx = 2 J_nu(z_-) K_nu(z_+).
double kernel_A(double p, double q, double gamma, double nu);

/// int_0^inf x^{-2} e^{-qx-p/x} J_0(gamma x) dx
///   = 2 gamma (J_1(z_-) K_0(z_+) / z_+ + J_0(z_-) K_1(z_+) / z_-).
double kernel_B(double p, double q, double gamma);

enum class TrigKind { Sin, Cos };

/// int_0^inf x^nu e^{-qx-p/x} {sin, cos}(gamma x) dx written as the literal
/// conjugate-twin sum
///   i^{(1+-1)/2} p^{(nu+1)/2} (K_{nu+1}(2 sqrt(p s)) / s^{(nu+1)/2} -+ same at conj(s)),  s = q + i gamma.
/// Integer nu in [-1, 7]. The imaginary part is the numerical residue.
ComplexScalar kernel_E_complex(double p, double q, double gamma, int nu, TrigKind kind);

/// Real part of kernel_E_complex; throws ConsistencyError if the imaginary
/// residue exceeds 1e-8 of the value.
double kernel_E(double p, double q, double gamma, int nu, TrigKind kind);

/// Finite-difference step for the q-derivative forms: 0.05 min(1, 1/sqrt(p)).
double derivative_step(double p);

/// S_{n-3/2,p}(gamma) = 2 (-1)^n sqrt(pi) / ((2 gamma)^{n-2} Gamma(n-1/2))
///                      * sum_{k>=1} d^n/dq^n [J_{n-2}(z_-) K_{n-2}(z_+)] at q = k,  n in {2, 3, 4}.
EvalResult repr_thm1_integer(int n, double p, double gamma, const Controls& ctl = {});

/// Experimental: non-integer alpha in (1/2, 4]. The order-alpha q-derivative
/// is built as the n-th derivative (n = ceil(alpha)) of a right-sided
/// Grunwald-Letnikov integral of order n - alpha. Requires
/// ctl.allow_experimental. No accuracy guarantee.
EvalResult repr_thm1_fractional(double alpha, double p, double gamma, const Controls& ctl = {});

/// S_{1/2,p}(gamma) = -4 gamma sum_k d^3/dq^3 [J_1(z_-) K_0(z_+) / z_+ + J_0(z_-) K_1(z_+) / z_-].
EvalResult repr_b1(double p, double gamma, const Controls& ctl = {});

/// S_{-1/2,p}(gamma) = 4 gamma sum_k d/dq [J_1(z_-) K_1(z_+)].
EvalResult repr_b2(double p, double gamma, const Controls& ctl = {});

/// S_{0,p}(gamma) = 2 sqrt(p) sum_k (K_1(2 sqrt(p(k+i gamma))) / sqrt(k+i gamma) + conjugate twin).
EvalResult repr_b3(double p, double gamma, const Controls& ctl = {});

/// S_{1,p}(gamma) = (p i / gamma) sum_k (K_2(2 sqrt(p(k+i gamma))) / (k+i gamma) - conjugate twin).
///
/// The denominator power is 1, i.e. (nu+1)/2 at nu = 1 in the sin/cos Laplace
/// formula. A square root there does not reproduce S_{1,p}.
EvalResult repr_b4(double p, double gamma, const Controls& ctl = {});

/// S_{2,p}(r) = S_{1,p}(r) / (2r)^2
///            - p^{3/2} / (2r)^2 sum_n (K_3(2 sqrt(p(n+i r))) / (n+i r)^{3/2} + conjugate twin),
/// with S_{1,p} from repr_b4 accumulated in the same loop.
EvalResult repr_b7(double p, double r, const Controls& ctl = {});

/// repr_b7 with the S_{1,p}(r) term supplied by the caller.
EvalResult repr_b7_with_s1(double p, double r, const EvalResult& s1, const Controls& ctl = {});

}  // namespace pmathieu
