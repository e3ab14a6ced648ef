#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pmathieu/errors.hpp"
#include "pmathieu/gl_derivative.hpp"
#include "pmathieu/quadrature.hpp"
#include "pmathieu/schlomilch.hpp"

using namespace pmathieu;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("order-one integrals") {
  GLConfig cfg;
  cfg.a = 0.0;
  CHECK(std::abs(gl_fractional([](double) { return 1.0; }, 2.0, 1.0, cfg).value - 2.0) < 1e-12);
  CHECK(std::abs(gl_fractional([](double q) { return q; }, 2.0, 1.0, cfg).value - 2.0) < 1e-12);
}

TEST_CASE("fractional integral of e^{-1.5 t} against Riemann-Liouville quadrature") {
  auto f = [](double t) { return std::exp(-1.5 * t); };
  for (double alpha : {0.5, 1.5}) {
    for (double x : {0.0, 2.0}) {
      GLConfig cfg;
      cfg.a = x - 40.0;
      const Estimate e = gl_fractional(f, x, alpha, cfg);
      const double ref = oracle::riemann_liouville(f, cfg.a, x, alpha);
      CAPTURE(alpha);
      CAPTURE(x);
      CHECK(rel(e.value, ref) < 1e-4);
      CHECK(std::abs(e.value - ref) <= 10.0 * e.err_estimate + 1e-10 * std::abs(ref));
    }
  }
}

TEST_CASE("linearity") {
  auto f = [](double t) { return std::sin(t); };
  auto g = [](double t) { return t * t; };
  GLConfig cfg;
  cfg.a = -1.0;
  const double a = 0.7;
  const double b = -1.3;
  const double lhs = gl_fractional([&](double t) { return a * f(t) + b * g(t); }, 1.5, 0.6, cfg).value;
  const double rhs = a * gl_fractional(f, 1.5, 0.6, cfg).value + b * gl_fractional(g, 1.5, 0.6, cfg).value;
  CHECK(std::abs(lhs - rhs) < 1e-10);
}

TEST_CASE("semigroup") {
  GLConfig cfg;
  cfg.a = 0.0;
  auto f = [](double t) { return std::cos(t); };
  const Estimate once = gl_fractional(f, 1.0, 2.0, cfg);
  auto inner = [&](double s) { return gl_fractional(f, s, 1.0, cfg).value; };
  cfg.n_levels = 3;
  cfg.n_base = 32;
  const Estimate twice = gl_fractional([&](double s) { return s <= 0.0 ? 0.0 : inner(s); }, 1.0, 1.0, cfg);
  CHECK(std::abs(once.value - (1.0 - std::cos(1.0))) < 1e-10);
  CHECK(std::abs(once.value - twice.value) <= 10.0 * (once.err_estimate + twice.err_estimate) + 1e-9);
}

TEST_CASE("GL config validation") {
  GLConfig cfg;
  cfg.a = 3.0;
  CHECK_THROWS_AS(gl_fractional([](double) { return 1.0; }, 2.0, 0.5, cfg), DomainError);
  cfg.a = 0.0;
  cfg.n_base = 8;
  CHECK_THROWS_AS(gl_fractional([](double) { return 1.0; }, 2.0, 0.5, cfg), DomainError);
  cfg.n_base = 256;
  cfg.n_levels = 7;
  CHECK_THROWS_AS(gl_fractional([](double) { return 1.0; }, 2.0, 0.5, cfg), DomainError);
  cfg.n_levels = 5;
  CHECK_THROWS_AS(gl_fractional([](double) { return 1.0; }, 2.0, 0.0, cfg), DomainError);
}

TEST_CASE("nth_derivative examples") {
  CHECK(std::abs(nth_derivative([](double x) { return std::sin(x); }, 0.0, 1, 0.1).value - 1.0) < 1e-12);
  CHECK(rel(nth_derivative([](double q) { return std::exp(-2 * q); }, 1.0, 3, 0.05).value, -8 * std::exp(-2.0)) <
        1e-9);
  CHECK_THROWS_AS(nth_derivative([](double x) { return x; }, 0.0, 5, 0.1), DomainError);
}

TEST_CASE("eigen-relation for integer orders") {
  for (int n = 1; n <= 3; ++n) {
    for (double q : {0.5, 1.0, 2.0}) {
      for (double x : {0.3, 1.0, 2.5}) {
        const double v = nth_derivative([x](double s) { return std::exp(-s * x); }, q, n, 0.05).value;
        CHECK(rel(v, std::pow(-x, n) * std::exp(-q * x)) < 1e-7);
      }
    }
  }
}

TEST_CASE("second derivative of the A kernel by differentiating under the integral") {
  const double p = 1.0;
  const double gamma = 0.5;
  const double q = 2.0;
  const double nu = 0.0;
  auto a = [=](double s) { return kernel_A(p, s, gamma, nu); };
  const double d2 = nth_derivative(a, q, 2, derivative_step(p)).value;
  const double ref = oracle::integrate_0_inf([=](double x) {
    return x <= 0.0 ? 0.0 : x * std::exp(-q * x - p / x) * oracle::bessel_j(nu, gamma * x);
  });
  CHECK(rel(d2, ref) < 1e-8);
}
