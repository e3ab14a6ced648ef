#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "pmathieu/errors.hpp"
#include "pmathieu/special_kernels.hpp"
#include "pmathieu/zeta_p.hpp"

using namespace pmathieu;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("integral reduces to zeta at p = 0") {
  const EvalResult r = zeta_p_integral({3.0, 0.0}, 1e-12);
  CHECK(rel(r.value, oracle::zeta(3.0)) < 1e-11);
  CHECK(r.method == MethodKind::ZetaPIntegral);
}

TEST_CASE("strong damping") {
  const double v = zeta_p_integral({2.0, 50.0}, 1e-10).value;
  CHECK(v > 0.0);
  CHECK(v < 1e-4 * riemann_zeta(2.0));
  CHECK(rel(v, oracle::zeta_p(2.0, 50.0)) < 1e-9);
}

TEST_CASE("integral and K-series against the quadrature oracle") {
  for (double alpha : {0.5, 1.0, 2.0, 3.0, 5.0}) {
    for (double p : {0.1, 0.5, 1.0, 2.0, 10.0}) {
      CAPTURE(alpha);
      CAPTURE(p);
      const double ref = oracle::zeta_p(alpha, p);
      const EvalResult a = zeta_p_integral({alpha, p}, 1e-12);
      const EvalResult b = zeta_p_kseries({alpha, p}, 1e-12);
      CHECK(rel(a.value, ref) < 1e-10);
      CHECK(rel(b.value, ref) < 1e-10);
      CHECK(std::abs(a.value - b.value) <= 1e-10 * std::abs(b.value));
      CHECK(std::abs(a.value - ref) <= 10.0 * a.err_estimate + 1e-13 * ref);
    }
  }
}

TEST_CASE("K-series term count decreases with p") {
  const long heavy = zeta_p_kseries({3.0, 4.0}, 1e-10).terms;
  const long light = zeta_p_kseries({3.0, 0.25}, 1e-10).terms;
  CHECK(heavy < light);
  CHECK_THROWS_AS(zeta_p_kseries({3.0, 0.0}, 1e-10), DomainError);
}

TEST_CASE("continuity at small p") {
  for (double alpha : {2.0, 3.0, 5.0}) {
    CHECK(std::abs(zeta_p_integral({alpha, 1e-8}, 1e-12).value - riemann_zeta(alpha)) < 1e-6);
  }
}

TEST_CASE("monotone in p and positive") {
  for (double alpha : {0.5, 2.0, 4.0}) {
    double prev = INFINITY;
    for (double p : {0.01, 0.1, 0.3, 1.0, 3.0, 8.0}) {
      const double v = zeta_p({alpha, p}, 1e-11).value;
      CHECK(v > 0.0);
      CHECK(v < prev);
      prev = v;
    }
  }
}

TEST_CASE("dispatcher") {
  const double pi = std::numbers::pi;
  const EvalResult z = zeta_p({2.0, 0.0}, 1e-12);
  CHECK(z.method == MethodKind::RiemannZeta);
  CHECK(rel(z.value, pi * pi / 6) < 1e-14);
  CHECK(zeta_p({3.0, 1.0}, 1e-12).method == MethodKind::ZetaPKSeries);
  CHECK(zeta_p({3.0, 0.01}, 1e-12).method == MethodKind::ZetaPIntegral);
  CHECK(zeta_p({60.0, 1.0}, 1e-12).method == MethodKind::ZetaPIntegral);
  CHECK(rel(zeta_p({3.0, 1.0}, 1e-12).value, zeta_p_integral({3.0, 1.0}, 1e-12).value) < 1e-10);
  CHECK(zeta_p({3.0, 0.5}, 1e-12, 1.0).method == MethodKind::ZetaPIntegral);
  CHECK_THROWS_AS(zeta_p({1.0, 0.0}, 1e-12), DomainError);
  CHECK_THROWS_AS(zeta_p({-1.0, 1.0}, 1e-12), DomainError);
}

TEST_CASE("zero order") {
  CHECK_THROWS_AS(zeta_p_integral({0.0, 1.0}, 1e-10), DomainError);
}
