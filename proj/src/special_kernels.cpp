#include "pmathieu/special_kernels.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pmathieu/errors.hpp"

namespace pmathieu {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIter = 10000;

void check_real_order(double nu, const char* who) {
  if (!std::isfinite(nu) || std::abs(nu) > kMaxRealOrder) {
    throw DomainError(std::string(who) + ": order must satisfy |nu| <= 50");
  }
}

template <class F>
double guarded(const char* who, F&& f) {
  double v;
  try {
    v = f();
  } catch (const std::exception& e) {
    throw DomainError(std::string(who) + ": " + e.what());
  }
  if (!std::isfinite(v)) throw DomainError(std::string(who) + ": result overflows");
  return v;
}

// K_0 and K_1 from the ascending series. Valid for small |z|.
void k01_series(ComplexScalar z, ComplexScalar& k0, ComplexScalar& k1) {
  const ComplexScalar y = 0.25 * z * z;
  const ComplexScalar log_half = std::log(0.5 * z);
  ComplexScalar t0 = 1.0;       // y^k / (k!)^2
  ComplexScalar t1 = 0.5 * z;   // (z/2)^{2k+1} / (k! (k+1)!)
  ComplexScalar i0 = 0.0, i1 = 0.0, s0 = 0.0, s1 = 0.0;
  double psi1 = -std::numbers::egamma_v<double>;  // psi(k+1)
  for (int k = 0; k < kMaxIter; ++k) {
    const double psi2 = psi1 + 1.0 / (k + 1);     // psi(k+2)
    i0 += t0;
    s0 += psi1 * t0;
    i1 += t1;
    s1 += (psi1 + psi2) * t1;
    if (std::abs(t0) < kEps * 1e-2 * std::abs(i0) && std::abs(t1) < kEps * 1e-2 * std::abs(i1)) break;
    t0 *= y / double((k + 1) * (k + 1));
    t1 *= y / double((k + 1) * (k + 2));
    psi1 = psi2;
  }
  k0 = -log_half * i0 + s0;
  k1 = 1.0 / z + log_half * i1 - 0.5 * s1;
}

// Steed's method for K_0, K_1 (CF2 with order 0).
void k01_cf2(ComplexScalar z, ComplexScalar& k0, ComplexScalar& k1) {
  constexpr double a1 = 0.25;
  ComplexScalar b = 2.0 * (1.0 + z);
  ComplexScalar d = 1.0 / b;
  ComplexScalar h = d, delh = d;
  ComplexScalar q1 = 0.0, q2 = 1.0;
  ComplexScalar q = a1;
  double c = a1;
  double a = -a1;
  ComplexScalar s = 1.0 + q * delh;
  int i = 1;
  for (; i < kMaxIter; ++i) {
    a -= 2 * i;
    c = -a * c / (i + 1.0);
    const ComplexScalar qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const ComplexScalar dels = q * delh;
    s += dels;
    if (std::abs(dels) < kEps * std::abs(s)) break;
  }
  if (i == kMaxIter) throw DomainError("bessel_k_complex: continued fraction did not converge");
  h *= a1;
  k0 = std::sqrt(std::numbers::pi / (2.0 * z)) * std::exp(-z) / s;
  k1 = k0 * (z + 0.5 - h) / z;
}

}  // namespace

double bessel_j(double nu, double x) {
  check_real_order(nu, "bessel_j");
  if (!(x > 0.0)) throw DomainError("bessel_j: argument must be positive");
  return guarded("bessel_j", [&] { return boost::math::cyl_bessel_j(nu, x); });
}

double bessel_k_real(double nu, double x) {
  check_real_order(nu, "bessel_k_real");
  if (!(x > 0.0)) throw DomainError("bessel_k_real: argument must be positive");
  const double order = std::abs(nu);
  return guarded("bessel_k_real", [&] { return boost::math::cyl_bessel_k(order, x); });
}

ComplexScalar bessel_k_complex(int n, ComplexScalar z) {
  if (n < 0 || n > kMaxComplexOrder) {
    throw DomainError("bessel_k_complex: order must lie in [0, 8]");
  }
  if (!(z.real() > 0.0) || !std::isfinite(z.imag())) {
    throw DomainError("bessel_k_complex: requires Re(z) > 0");
  }
  ComplexScalar k0, k1;
  if (std::abs(z) <= 2.0) {
    k01_series(z, k0, k1);
  } else {
    k01_cf2(z, k0, k1);
  }
  ComplexScalar result = k0;
  if (n >= 1) {
    ComplexScalar prev = k0, cur = k1;
    for (int j = 1; j < n; ++j) {
      const ComplexScalar next = prev + (2.0 * j / z) * cur;
      prev = cur;
      cur = next;
    }
    result = cur;
  }
  if (!std::isfinite(result.real()) || !std::isfinite(result.imag())) {
    throw DomainError("bessel_k_complex: result overflows");
  }
  return result;
}

double gamma_fn(double x) {
  if (x <= 0.0 && x == std::floor(x)) throw DomainError("gamma_fn: pole at non-positive integer");
  return guarded("gamma_fn", [&] { return boost::math::tgamma(x); });
}

double gen_binomial(double mu, long n) {
  if (n < 0) throw DomainError("gen_binomial: n must be non-negative");
  double v = 1.0;
  for (long j = 1; j <= n; ++j) v *= (mu + j) / double(j);
  return v;
}

double riemann_zeta(double s) {
  if (!(s > 1.0)) throw DomainError("riemann_zeta: requires s > 1");
  return guarded("riemann_zeta", [&] { return boost::math::zeta(s); });
}

}  // namespace pmathieu
