#include "pmathieu/schlomilch.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pmathieu/errors.hpp"
#include "pmathieu/gl_derivative.hpp"
#include "pmathieu/series_sum.hpp"

namespace pmathieu {
namespace {

constexpr long kDefaultTermCap = 5000;
constexpr double kPairResidueLimit = 1e-10;

void check_positive(double p, double gamma, const char* who) {
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError(std::string(who) + ": requires p > 0");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError(std::string(who) + ": requires gamma > 0");
}

long term_cap(const Controls& ctl) { return ctl.max_terms > 0 ? ctl.max_terms : kDefaultTermCap; }

// Sums prefactor * d^order f/dq^order over q = 1, 2, ...
EvalResult derivative_sum(const RealFunction& f, int order, double prefactor, double p, const Controls& ctl,
                          MethodKind method) {
  const double h0 = derivative_step(p);
  GeometricTailSum sum(ctl.tol, term_cap(ctl), &ctl.observer);
  try {
    for (long k = 1;; ++k) {
      Estimate d;
      try {
        d = nth_derivative(f, double(k), order, h0);
      } catch (const ConvergenceError& e) {
        EvalResult best = sum.result(method);
        throw ConvergenceError(std::string(e.what()) + " (at q = " + std::to_string(k) + ")", best);
      }
      const double term = prefactor * d.value;
      if (sum.add(term, term, std::abs(prefactor) * d.err_estimate)) break;
    }
  } catch (const ConvergenceError& e) {
    EvalResult best = e.best();
    best.method = method;
    throw ConvergenceError(e.what(), best);
  }
  return sum.result(method);
}

// K_n(2 sqrt(p s)) / s^{power}, principal branches (Re s > 0 throughout).
ComplexScalar k_twin(int n, double p, ComplexScalar s, double power) {
  const ComplexScalar z = 2.0 * std::sqrt(p * s);
  ComplexScalar denom;
  if (power == 0.5) {
    denom = std::sqrt(s);
  } else if (power == 1.0) {
    denom = s;
  } else if (power == 1.5) {
    denom = s * std::sqrt(s);
  } else {
    denom = std::pow(s, power);
  }
  return bessel_k_complex(n, z) / denom;
}

double pair_residue(ComplexScalar sum, ComplexScalar twin_a, ComplexScalar twin_b) {
  const double scale = std::abs(twin_a) + std::abs(twin_b);
  return scale > 0.0 ? std::abs(sum.imag()) / scale : 0.0;
}

void check_residue(double residue, long k, const char* who) {
  if (residue > kPairResidueLimit) {
    throw ConsistencyError(std::string(who) + ": conjugate-pair imaginary residue " + std::to_string(residue) +
                           " at k = " + std::to_string(k));
  }
}

struct PairTerm {
  double value;
  double envelope;
  double residue;
};

// Term k of the B4 sum: (p i / gamma)(F(s) - F(conj s)), F(s) = K_2(2 sqrt(ps)) / s.
PairTerm b4_term(double p, double gamma, long k) {
  const ComplexScalar s(double(k), gamma);
  const ComplexScalar a = k_twin(2, p, s, 1.0);
  const ComplexScalar b = k_twin(2, p, std::conj(s), 1.0);
  const ComplexScalar t = (p / gamma) * ComplexScalar(0.0, 1.0) * (a - b);
  return {t.real(), (p / gamma) * (std::abs(a) + std::abs(b)), pair_residue(t, a, b)};
}

// Term n of the K_3 sum in B7: F(s) + F(conj s), F(s) = K_3(2 sqrt(ps)) / s^{3/2}.
PairTerm k3_term(double p, double r, long n) {
  const ComplexScalar s(double(n), r);
  const ComplexScalar a = k_twin(3, p, s, 1.5);
  const ComplexScalar b = k_twin(3, p, std::conj(s), 1.5);
  const ComplexScalar t = a + b;
  return {t.real(), std::abs(a) + std::abs(b), pair_residue(t, a, b)};
}

}  // namespace

ZPair make_zpair(double p, double q, double gamma) {
  const double big = std::hypot(q, gamma) + q;
  return {std::sqrt(2.0 * p * gamma * gamma / big), std::sqrt(2.0 * p * big)};
}

double kernel_A(double p, double q, double gamma, double nu) {
  check_positive(p, gamma, "kernel_A");
  if (!(q > 0.0)) throw DomainError("kernel_A: requires q > 0");
  const ZPair z = make_zpair(p, q, gamma);
  return 2.0 * bessel_j(nu, z.z_minus) * bessel_k_real(nu, z.z_plus);
}

double kernel_B(double p, double q, double gamma) {
  check_positive(p, gamma, "kernel_B");
  if (!(q > 0.0)) throw DomainError("kernel_B: requires q > 0");
  const ZPair z = make_zpair(p, q, gamma);
  return 2.0 * gamma *
         (bessel_j(1, z.z_minus) * bessel_k_real(0, z.z_plus) / z.z_plus +
          bessel_j(0, z.z_minus) * bessel_k_real(1, z.z_plus) / z.z_minus);
}

ComplexScalar kernel_E_complex(double p, double q, double gamma, int nu, TrigKind kind) {
  check_positive(p, gamma, "kernel_E");
  if (!(q > 0.0)) throw DomainError("kernel_E: requires q > 0");
  if (nu < -1 || nu > kMaxComplexOrder - 1) throw DomainError("kernel_E: nu must be an integer in [-1, 7]");
  const double power = 0.5 * (nu + 1);
  const ComplexScalar s(q, gamma);
  const ComplexScalar a = k_twin(nu + 1, p, s, power);
  const ComplexScalar b = k_twin(nu + 1, p, std::conj(s), power);
  const double scale = std::pow(p, power);
  if (kind == TrigKind::Sin) return scale * ComplexScalar(0.0, 1.0) * (a - b);
  return scale * (a + b);
}

double kernel_E(double p, double q, double gamma, int nu, TrigKind kind) {
  const ComplexScalar v = kernel_E_complex(p, q, gamma, nu, kind);
  if (std::abs(v.imag()) > 1e-8 * std::abs(v.real()) && std::abs(v.imag()) > 0.0) {
    throw ConsistencyError("kernel_E: imaginary residue " + std::to_string(v.imag()));
  }
  return v.real();
}

double derivative_step(double p) { return 0.05 * std::min(1.0, 1.0 / std::sqrt(p)); }

EvalResult repr_thm1_integer(int n, double p, double gamma, const Controls& ctl) {
  check_positive(p, gamma, "repr_thm1_integer");
  if (n < 2 || n > 4) throw DomainError("repr_thm1_integer: n must lie in {2, 3, 4}");
  const double order = n - 2;
  auto f = [=](double q) {
    const ZPair z = make_zpair(p, q, gamma);
    return bessel_j(order, z.z_minus) * bessel_k_real(order, z.z_plus);
  };
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const double prefactor =
      2.0 * sign * std::sqrt(std::numbers::pi) / (std::pow(2.0 * gamma, n - 2) * gamma_fn(n - 0.5));
  return derivative_sum(f, n, prefactor, p, ctl, MethodKind::Thm1Int);
}

EvalResult repr_thm1_fractional(double alpha, double p, double gamma, const Controls& ctl) {
  if (!ctl.allow_experimental) {
    throw DomainError("repr_thm1_fractional: experimental; set Controls::allow_experimental");
  }
  check_positive(p, gamma, "repr_thm1_fractional");
  if (!(alpha > 0.5 && alpha <= 4.0)) throw DomainError("repr_thm1_fractional: alpha must lie in (1/2, 4]");
  const int n = int(std::ceil(alpha));
  if (double(n) == alpha && n >= 2) return repr_thm1_integer(n, p, gamma, ctl);
  const double beta = n - alpha;  // fractional integral order
  const double order = alpha - 2.0;

  // A(q) = 2 J_{alpha-2}(z_-) K_{alpha-2}(z_+) and a fixed-step central
  // estimate of its n-th derivative.
  auto kernel = [=](double q) {
    const ZPair z = make_zpair(p, q, gamma);
    return 2.0 * bessel_j(order, z.z_minus) * bessel_k_real(order, z.z_plus);
  };
  const double h_fd = derivative_step(p) / 4.0;
  const int half = n <= 2 ? 2 : 3;
  std::vector<double> offsets;
  for (int j = -half; j <= half; ++j) offsets.push_back(j);
  const std::vector<double> w = fd_weights(n, offsets);
  auto kernel_dn = [=](double q) {
    double s = 0.0;
    for (std::size_t i = 0; i < offsets.size(); ++i) s += w[i] * kernel(q + offsets[i] * h_fd);
    return s / std::pow(h_fd, n);
  };

  // W(q) = (-1)^n (I_right^{beta} A^{(n)})(q) = int x^{alpha-1} e^{-qx-p/x} J_{alpha-2}(gamma x) dx.
  // The right-sided integral over [q, q+L] is the left-sided GL sum of s -> A^{(n)}(-s) at x = -q.
  // (-1)^alpha in the prefactor and in D^alpha e^{-qx} = (-x)^alpha e^{-qx} are read on conjugate
  // branches e^{-i pi alpha}, e^{+i pi alpha}; their product is 1 and the sum stays real.
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  auto weyl = [&](double q) {
    const double root = std::sqrt(q) + 14.0 / std::sqrt(p);
    const double window = root * root - q;
    GLConfig cfg;
    cfg.a = -q - window;
    cfg.n_base = 512;
    cfg.n_levels = 4;
    return gl_fractional([&](double s) { return kernel_dn(-s); }, -q, beta, cfg);
  };

  const double prefactor = std::sqrt(std::numbers::pi) / (std::pow(2.0 * gamma, alpha - 2.0) * gamma_fn(alpha - 0.5));
  GeometricTailSum sum(ctl.tol, term_cap(ctl), &ctl.observer);
  for (long k = 1;; ++k) {
    const Estimate e = weyl(double(k));
    const double term = prefactor * sign * e.value;
    if (sum.add(term, term, std::abs(prefactor) * e.err_estimate)) break;
  }
  return sum.result(MethodKind::Thm1Fractional);
}

EvalResult repr_b1(double p, double gamma, const Controls& ctl) {
  check_positive(p, gamma, "repr_b1");
  auto f = [=](double q) {
    const ZPair z = make_zpair(p, q, gamma);
    return bessel_j(1, z.z_minus) * bessel_k_real(0, z.z_plus) / z.z_plus +
           bessel_j(0, z.z_minus) * bessel_k_real(1, z.z_plus) / z.z_minus;
  };
  return derivative_sum(f, 3, -4.0 * gamma, p, ctl, MethodKind::B1);
}

EvalResult repr_b2(double p, double gamma, const Controls& ctl) {
  check_positive(p, gamma, "repr_b2");
  auto f = [=](double q) {
    const ZPair z = make_zpair(p, q, gamma);
    return bessel_j(1, z.z_minus) * bessel_k_real(1, z.z_plus);
  };
  return derivative_sum(f, 1, 4.0 * gamma, p, ctl, MethodKind::B2);
}

EvalResult repr_b3(double p, double gamma, const Controls& ctl) {
  check_positive(p, gamma, "repr_b3");
  const double pref = 2.0 * std::sqrt(p);
  GeometricTailSum sum(ctl.tol, term_cap(ctl), &ctl.observer);
  double max_residue = 0.0;
  try {
    for (long k = 1;; ++k) {
      const ComplexScalar s(double(k), gamma);
      const ComplexScalar a = k_twin(1, p, s, 0.5);
      const ComplexScalar b = k_twin(1, p, std::conj(s), 0.5);
      const ComplexScalar t = pref * (a + b);
      const double residue = pair_residue(t, pref * a, pref * b);
      check_residue(residue, k, "repr_b3");
      max_residue = std::max(max_residue, residue);
      if (sum.add(t.real(), pref * (std::abs(a) + std::abs(b)))) break;
    }
  } catch (const ConvergenceError& e) {
    EvalResult best = e.best();
    best.method = MethodKind::B3;
    throw ConvergenceError(e.what(), best);
  }
  EvalResult r = sum.result(MethodKind::B3);
  r.max_imag_residue = max_residue;
  return r;
}

EvalResult repr_b4(double p, double gamma, const Controls& ctl) {
  check_positive(p, gamma, "repr_b4");
  GeometricTailSum sum(ctl.tol, term_cap(ctl), &ctl.observer);
  double max_residue = 0.0;
  try {
    for (long k = 1;; ++k) {
      const PairTerm t = b4_term(p, gamma, k);
      check_residue(t.residue, k, "repr_b4");
      max_residue = std::max(max_residue, t.residue);
      if (sum.add(t.value, t.envelope)) break;
    }
  } catch (const ConvergenceError& e) {
    EvalResult best = e.best();
    best.method = MethodKind::B4;
    throw ConvergenceError(e.what(), best);
  }
  EvalResult r = sum.result(MethodKind::B4);
  r.max_imag_residue = max_residue;
  return r;
}

EvalResult repr_b7(double p, double r, const Controls& ctl) {
  check_positive(p, r, "repr_b7");
  const double inv4r2 = 1.0 / (4.0 * r * r);
  const double k3_pref = std::pow(p, 1.5) * inv4r2;
  GeometricTailSum sum(ctl.tol, term_cap(ctl), &ctl.observer);
  double max_residue = 0.0;
  try {
    for (long n = 1;; ++n) {
      const PairTerm s1 = b4_term(p, r, n);
      const PairTerm k3 = k3_term(p, r, n);
      check_residue(s1.residue, n, "repr_b7");
      check_residue(k3.residue, n, "repr_b7");
      max_residue = std::max({max_residue, s1.residue, k3.residue});
      const double term = inv4r2 * s1.value - k3_pref * k3.value;
      if (sum.add(term, inv4r2 * s1.envelope + k3_pref * k3.envelope)) break;
    }
  } catch (const ConvergenceError& e) {
    EvalResult best = e.best();
    best.method = MethodKind::B7;
    throw ConvergenceError(e.what(), best);
  }
  EvalResult res = sum.result(MethodKind::B7);
  res.max_imag_residue = max_residue;
  return res;
}

EvalResult repr_b7_with_s1(double p, double r, const EvalResult& s1, const Controls& ctl) {
  check_positive(p, r, "repr_b7_with_s1");
  const double inv4r2 = 1.0 / (4.0 * r * r);
  const double k3_pref = std::pow(p, 1.5) * inv4r2;
  GeometricTailSum sum(ctl.tol, term_cap(ctl), nullptr);
  double max_residue = 0.0;
  for (long n = 1;; ++n) {
    const PairTerm k3 = k3_term(p, r, n);
    check_residue(k3.residue, n, "repr_b7_with_s1");
    max_residue = std::max(max_residue, k3.residue);
    if (sum.add(-k3_pref * k3.value, k3_pref * k3.envelope)) break;
  }
  EvalResult res = sum.result(MethodKind::B7);
  res.value += inv4r2 * s1.value;
  res.err_estimate += inv4r2 * s1.err_estimate;
  res.max_imag_residue = max_residue;
  return res;
}

}  // namespace pmathieu
