#pragma once

#include <complex>

namespace pmathieu {

using ComplexScalar = std::complex<double>;

/// Largest |order| accepted by the real-order kernels.
inline constexpr double kMaxRealOrder = 50.0;
/// Largest integer order accepted by bessel_k_complex.
inline constexpr int kMaxComplexOrder = 8;

/// Bessel function of the first kind J_nu(x), x > 0, |nu| <= 50.
double bessel_j(double nu, double x);

/// Modified Bessel function of the second kind K_nu(x), x > 0, |nu| <= 50.
/// Evaluated at |nu| so K_{-nu} == K_nu bit for bit. Underflows to 0 for large x.
double bessel_k_real(double nu, double x);

/// K_n(z) for integer 0 <= n <= 8 and Re z > 0 (principal branch).
///
/// Ascending series for K_0, K_1 when |z| <= 2, Steed's continued fraction
/// (Temme's CF2) otherwise, then upward recurrence
/// K_{j+1} = K_{j-1} + (2j/z) K_j, which is stable for K.
ComplexScalar bessel_k_complex(int n, ComplexScalar z);

double gamma_fn(double x);

/// (mu+n choose n) = prod_{j=1..n} (mu+j)/j.
double gen_binomial(double mu, long n);

/// Riemann zeta for s > 1.
double riemann_zeta(double s);

}  // namespace pmathieu
