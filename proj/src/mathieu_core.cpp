#include "pmathieu/mathieu_core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pmathieu/errors.hpp"
#include "pmathieu/quadrature.hpp"
#include "pmathieu/special_kernels.hpp"
#include "pmathieu/zeta_p.hpp"

namespace pmathieu {
namespace {

constexpr long kSeriesTermCap = 10000;

double clamp_tol(double tol) { return std::clamp(tol, 1e-14, 1e-4); }

void check_common(const MathieuParams& m) {
  if (!std::isfinite(m.mu) || !std::isfinite(m.p) || !std::isfinite(m.r)) {
    throw DomainError("parameters must be finite");
  }
  if (!(m.p >= 0.0)) throw DomainError("requires p >= 0");
  if (!(m.r > 0.0)) throw DomainError("requires r > 0");
  if (m.p == 0.0 && !(m.mu > 0.0)) throw DomainError("requires mu > 0 when p = 0");
  if (m.p > 0.0 && !(m.mu >= -0.5)) throw DomainError("requires mu >= -1/2 when p > 0");
}

// Sum_{n>=N} n^{-s} by Euler-Maclaurin with 8 Bernoulli corrections.
double hurwitz_tail(double s, double n, double& remainder) {
  static constexpr std::array<double, 8> kB2k{1.0 / 6,  -1.0 / 30, 1.0 / 42,     -1.0 / 30,
                                              5.0 / 66, -691.0 / 2730, 7.0 / 6, -3617.0 / 510};
  const double lead = std::pow(n, -s);
  double sum = n * lead / (s - 1.0) + 0.5 * lead;
  double rising = s;    // (s)_{2k-1}
  double fact = 2.0;    // (2k)!
  double power = lead / n;
  double last = 0.0;
  for (std::size_t k = 1; k <= kB2k.size(); ++k) {
    last = kB2k[k - 1] / fact * rising * power;
    sum += last;
    rising *= (s + 2.0 * k - 1.0) * (s + 2.0 * k);
    fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    power /= n * n;
  }
  remainder = std::abs(last);
  return sum;
}

struct ZetaTerm {
  double value;
  double err;
};

ZetaTerm zeta_for_series(double alpha, double p, double tol, double threshold) {
  if (alpha == 0.0 && p > 0.0) return {0.0, 0.0};
  const EvalResult z = zeta_p(ZetaPParams{alpha, p}, tol, threshold);
  return {z.value, z.err_estimate};
}

}  // namespace

double s_series_term(const MathieuParams& params, long n, double tol) {
  check_common(params);
  const double coef = std::pow(-params.r * params.r, double(n)) * gen_binomial(params.mu, n);
  const ZetaTerm z = zeta_for_series(2.0 * params.mu + 2.0 * n + 1.0, params.p, clamp_tol(tol), 0.05);
  return 2.0 * coef * z.value;
}

EvalResult s_series(const MathieuParams& params, const Controls& ctl) {
  check_common(params);
  if (!(params.r < 1.0)) throw DomainError("s_series: requires |r| < 1");
  const double tol = ctl.tol;
  const double ztol = clamp_tol(tol / 10.0);
  const long cap = ctl.max_terms > 0 ? ctl.max_terms : kSeriesTermCap;
  const double r2 = params.r * params.r;

  double coef = 1.0;  // (-1)^n r^{2n} (mu+n choose n)
  auto term_at = [&](long n, double& zerr) {
    if (n > 0) coef *= -r2 * (params.mu + n) / double(n);
    const ZetaTerm z = zeta_for_series(2.0 * params.mu + 2.0 * n + 1.0, params.p, ztol, ctl.dispatch_p_threshold);
    zerr = 2.0 * std::abs(coef) * z.err;
    return 2.0 * coef * z.value;
  };

  double zerr = 0.0;
  double term = term_at(0, zerr);
  double partial = 0.0;
  double err_acc = 0.0;
  for (long n = 0;; ++n) {
    partial += term;
    err_acc += zerr;
    double next_err = 0.0;
    const double next = term_at(n + 1, next_err);
    if (ctl.observer) ctl.observer(n + 1, partial, std::abs(next) + err_acc);
    if (std::abs(term) < tol * std::abs(partial) && std::abs(next) < std::abs(term)) {
      return EvalResult{partial, std::abs(next) + err_acc, n + 1, MethodKind::SeriesA3};
    }
    if (n + 1 >= cap) {
      throw ConvergenceError("s_series: no monotone tail within " + std::to_string(cap) + " terms",
                             EvalResult{partial, std::abs(next) + err_acc, n + 1, MethodKind::SeriesA3});
    }
    term = next;
    zerr = next_err;
  }
}

EvalResult s_integral(const MathieuParams& params, const Controls& ctl) {
  check_common(params);
  const double mu = params.mu;
  if (std::abs(mu - 0.5) > kMaxRealOrder) throw DomainError("s_integral: Bessel order mu - 1/2 out of range");
  IntegrandSpec spec;
  spec.sigma = mu + 0.5;
  spec.p = params.p;
  spec.weight = Weight::Bose;
  spec.oscillator = Oscillator::BesselJ;
  spec.nu = mu - 0.5;
  spec.gamma = params.r;
  spec.log_scale = 0.5 * std::log(std::numbers::pi) - (mu - 0.5) * std::log(2.0 * params.r) - std::lgamma(mu + 1.0);
  EvalResult r = integrate_semi_infinite(spec, clamp_tol(ctl.tol));
  r.method = MethodKind::IntegralA4;
  return r;
}

namespace detail {

EvalResult s_classical_at_cutoff(double mu, double r, long n_direct) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("s_classical: requires mu > 0");
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("s_classical: requires r > 0");
  if (n_direct < 2 || double(n_direct) < 4.0 * r) throw DomainError("s_classical: cutoff too small");

  double head = 0.0;
  for (long n = n_direct - 1; n >= 1; --n) {  // small terms first
    const double x = double(n);
    head += 2.0 * x / std::pow(x * x + r * r, mu + 1.0);
  }

  // 2n (n^2+r^2)^{-mu-1} = 2 sum_j binom(-mu-1, j) r^{2j} n^{-(2mu+1+2j)} for n > r.
  const double nd = double(n_direct);
  double tail = 0.0;
  double remainder = 0.0;
  double coef = 1.0;      // binom(-mu-1, j) r^{2j}
  double inv_pow = 1.0;   // n_direct^{-2j}
  for (int j = 0; j < 400; ++j) {
    double rem = 0.0;
    const double h = hurwitz_tail(2.0 * mu + 1.0 + 2.0 * j, nd, rem);
    const double piece = 2.0 * coef * h;
    tail += piece;
    remainder += 2.0 * std::abs(coef) * rem;
    if (std::abs(coef) * inv_pow < 1e-18) break;
    coef *= (-mu - 1.0 - j) / double(j + 1) * r * r;
    inv_pow /= nd * nd;
  }
  const double value = head + tail;
  const double rounding = 4.0 * std::numeric_limits<double>::epsilon() * value * std::log2(double(n_direct));
  return EvalResult{value, remainder + rounding, n_direct, MethodKind::Classical};
}

}  // namespace detail

EvalResult s_classical(double mu, double r, double tol) {
  long n = std::max<long>(32, long(std::ceil(10.0 * r)) + 10);
  for (;;) {
    EvalResult res = detail::s_classical_at_cutoff(mu, r, n);
    if (res.err_estimate <= tol * std::abs(res.value) || n > (1L << 24)) return res;
    n *= 2;
  }
}

}  // namespace pmathieu
