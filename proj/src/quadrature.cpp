#include "pmathieu/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "pmathieu/errors.hpp"
#include "pmathieu/series_sum.hpp"
#include "pmathieu/special_kernels.hpp"

namespace pmathieu {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTailFraction = 1e-18;
constexpr int kMaxPanels = 5000;

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
using Gauss = boost::math::quadrature::gauss<double, 10>;

struct Interval {
  double a, b, value, error, l1;
  bool operator<(const Interval& o) const { return error < o.error; }
};

// One 21-point Kronrod / 10-point Gauss pass with the QUADPACK error heuristic.
Interval gk21(const std::function<double(double)>& f, double a, double b) {
  const auto& xk = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<double, 21> fv{};
  fv[0] = f(mid);
  double resk = fv[0] * wk[0];
  double resg = 0.0;
  double resabs = std::abs(fv[0]) * wk[0];
  for (std::size_t i = 1; i < xk.size(); ++i) {
    const double fp = f(mid + half * xk[i]);
    const double fm = f(mid - half * xk[i]);
    fv[2 * i - 1] = fp;
    fv[2 * i] = fm;
    resk += wk[i] * (fp + fm);
    resabs += wk[i] * (std::abs(fp) + std::abs(fm));
    if (i % 2 == 1) resg += wg[i / 2] * (fp + fm);
  }
  const double mean = 0.5 * resk;
  double resasc = wk[0] * std::abs(fv[0] - mean);
  for (std::size_t i = 1; i < xk.size(); ++i) {
    resasc += wk[i] * (std::abs(fv[2 * i - 1] - mean) + std::abs(fv[2 * i] - mean));
  }
  const double ah = std::abs(half);
  resasc *= ah;
  resabs *= ah;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
  return {a, b, resk * half, err, resabs};
}

double decay_rate(const IntegrandSpec& s) { return s.weight == Weight::Bose ? 1.0 : s.q; }

void validate(const IntegrandSpec& s) {
  if (!std::isfinite(s.sigma) || !std::isfinite(s.log_scale)) throw DomainError("integrand: non-finite sigma");
  if (!(s.p >= 0.0) || !std::isfinite(s.p)) throw DomainError("integrand: requires p >= 0");
  if (s.weight == Weight::Exp && !(s.q > 0.0 && std::isfinite(s.q))) {
    throw DomainError("integrand: exponential weight requires q > 0");
  }
  if (s.oscillator != Oscillator::None && !(s.gamma > 0.0 && std::isfinite(s.gamma))) {
    throw DomainError("integrand: oscillator frequency must be positive");
  }
  if (s.oscillator == Oscillator::BesselJ && std::abs(s.nu) > kMaxRealOrder) {
    throw DomainError("integrand: Bessel order out of range");
  }
  if (s.p == 0.0 && !(small_t_exponent(s) > -1.0)) {
    throw DomainError("integrand: not integrable at t = 0 (p = 0 and small-t exponent <= -1)");
  }
}

bool is_negative_integer(double nu) { return nu < 0.0 && nu == std::floor(nu); }

// Approximate k-th positive zero (k >= 1) of the oscillator, scaled by 1/gamma.
double oscillator_zero(const IntegrandSpec& s, long k) {
  switch (s.oscillator) {
    case Oscillator::Cos:
      return (k - 0.5) * std::numbers::pi / s.gamma;
    case Oscillator::Sin:
      return k * std::numbers::pi / s.gamma;
    case Oscillator::BesselJ: {
      // McMahon; only bracketing matters, not accuracy.
      const double nu = is_negative_integer(s.nu) ? -s.nu : s.nu;
      const double beta = (k + 0.5 * nu - 0.25) * std::numbers::pi;
      const double z = beta - (4.0 * nu * nu - 1.0) / (8.0 * beta);
      return std::max(z, 0.5 * beta) / s.gamma;
    }
    case Oscillator::None:
      break;
  }
  return std::numeric_limits<double>::infinity();
}

// Wynn epsilon extrapolation of a sequence of partial sums.
double wynn_epsilon(const std::vector<double>& s, double& err) {
  const std::size_t n = s.size();
  std::vector<std::vector<double>> e(n + 1, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) e[i][1] = s[i];
  for (std::size_t k = 2; k <= n; ++k) {
    for (std::size_t i = 0; i + k <= n; ++i) {
      const double d = e[i + 1][k - 1] - e[i][k - 1];
      e[i][k] = e[i + 1][k - 2] + (d != 0.0 ? 1.0 / d : std::numeric_limits<double>::max());
    }
  }
  // Odd columns hold the estimates.
  std::size_t kbest = (n % 2 == 1) ? n : n - 1;
  const double best = e[0][kbest];
  const double prev = kbest >= 3 ? e[1][kbest - 2] : s.back();
  err = std::abs(best - prev);
  return best;
}

}  // namespace

double small_t_exponent(const IntegrandSpec& s) {
  double e = s.sigma + (s.weight == Weight::Bose ? -1.0 : 0.0);
  switch (s.oscillator) {
    case Oscillator::BesselJ:
      e += is_negative_integer(s.nu) ? -s.nu : s.nu;
      break;
    case Oscillator::Sin:
      e += 1.0;
      break;
    case Oscillator::Cos:
    case Oscillator::None:
      break;
  }
  return e;
}

double eval_integrand(const IntegrandSpec& s, double t) {
  if (!(t > 0.0)) return 0.0;
  double lw = s.log_scale + s.sigma * std::log(t) - s.p / t;
  if (s.weight == Weight::Bose) {
    lw -= t + std::log(-std::expm1(-t));
  } else {
    lw -= s.q * t;
  }
  if (lw < -745.0) return 0.0;
  double g = 1.0;
  switch (s.oscillator) {
    case Oscillator::None:
      break;
    case Oscillator::Cos:
      g = std::cos(s.gamma * t);
      break;
    case Oscillator::Sin:
      g = std::sin(s.gamma * t);
      break;
    case Oscillator::BesselJ:
      g = bessel_j(s.nu, s.gamma * t);
      break;
  }
  return std::exp(lw) * g;
}

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                              double rel_l1_tol, int max_intervals) {
  std::priority_queue<Interval> heap;
  heap.push(gk21(f, a, b));
  long evals = 21;
  double total_err = heap.top().error;
  double total_l1 = heap.top().l1;
  int count = 1;
  while (total_err > std::max(abs_tol, rel_l1_tol * total_l1) && count < max_intervals) {
    const Interval worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(std::abs(worst.b - worst.a) > 1e-13 * std::max(std::abs(worst.a), std::abs(worst.b))) ||
        mid == worst.a || mid == worst.b) {
      break;
    }
    heap.pop();
    const Interval lo = gk21(f, worst.a, mid);
    const Interval hi = gk21(f, mid, worst.b);
    heap.push(lo);
    heap.push(hi);
    evals += 42;
    ++count;
    total_err += lo.error + hi.error - worst.error;
    total_l1 += lo.l1 + hi.l1 - worst.l1;
  }
  std::vector<Interval> parts;
  parts.reserve(heap.size());
  while (!heap.empty()) {
    parts.push_back(heap.top());
    heap.pop();
  }
  std::sort(parts.begin(), parts.end(), [](const Interval& x, const Interval& y) { return x.a < y.a; });
  QuadResult r;
  for (const auto& p : parts) {
    r.value += p.value;
    r.error += p.error;
    r.l1 += p.l1;
  }
  r.evals = evals;
  return r;
}

EvalResult integrate_semi_infinite(const IntegrandSpec& spec, double tol) {
  if (!(tol >= 1e-14 && tol <= 1e-4)) throw DomainError("integrate_semi_infinite: tol must lie in [1e-14, 1e-4]");
  validate(spec);

  const double c = decay_rate(spec);
  const double e = small_t_exponent(spec);
  // gk21 never reports less than 50 eps of the panel's L1 mass.
  const double panel_rel = std::max(tol * 1e-2, 100.0 * kEps);
  auto f = [&spec](double t) { return eval_integrand(spec, t); };

  const double first_zero = oscillator_zero(spec, 1);
  const double t0 = std::min({1.0, 1.0 / c, 0.5 * first_zero});
  const double u0 = std::log(t0);

  // Lower end in u = log t. The u-space integrand f(e^u) e^u has log-slope
  // (e + 1) + p e^{-u} - c e^u, so once the slope is positive the piece below
  // u is bounded by |f(e^u)| e^u / slope.
  auto fu = [&f](double u) {
    const double t = std::exp(u);
    return f(t) * t;
  };
  double peak = 0.0;
  double u = u0;
  double lower_tail = 0.0;
  for (int step = 0;; ++step) {
    const double val = std::abs(fu(u));
    peak = std::max(peak, val);
    const double slope = (e + 1.0) + spec.p * std::exp(-u) - c * std::exp(u);
    if (slope > 0.0) {
      lower_tail = val / slope;
      if (val == 0.0 || lower_tail <= kTailFraction * std::max(peak, std::numeric_limits<double>::min())) break;
    }
    if (u < -700.0 || step > 20000) break;
    u -= slope > 8.0 ? 4.0 / slope : 0.5;
  }
  const double u_min = u;

  EvalResult out;
  out.method = MethodKind::Quadrature;
  double value = 0.0, err = lower_tail, l1 = 0.0;
  long evals = 0;

  if (u_min < u0) {
    const auto panel = integrate_adaptive(fu, u_min, u0, 0.0, panel_rel, 400);
    value += panel.value;
    err += panel.error;
    l1 += panel.l1;
    evals += panel.evals;
  }

  const double cap_width = 4.0 / c;
  long zero_index = 1;
  double left = t0;
  std::vector<double> partials;
  double tail = std::numeric_limits<double>::infinity();
  int panels = 0;
  bool accelerated = false;
  for (;;) {
    while (oscillator_zero(spec, zero_index) <= left * (1.0 + 1e-12)) ++zero_index;
    const double right = std::min(oscillator_zero(spec, zero_index), left + cap_width);
    const auto panel = integrate_adaptive(f, left, right, 0.0, panel_rel, 200);
    value += panel.value;
    err += panel.error;
    l1 += panel.l1;
    evals += panel.evals;
    partials.push_back(value);
    left = right;
    ++panels;

    const double margin = c - std::max(spec.sigma, 0.0) / left;
    const bool osc_bounded = spec.oscillator == Oscillator::None || spec.gamma * left >= 1.0;
    if (margin > 0.0 && osc_bounded) {
      double log_tail = spec.log_scale + spec.sigma * std::log(left) - c * left - std::log(margin);
      if (spec.weight == Weight::Bose) log_tail -= std::log(-std::expm1(-left));
      tail = std::exp(log_tail);
      if (tail <= kTailFraction * std::max(l1, std::numeric_limits<double>::min())) break;
    }
    if (panels >= kMaxPanels) {
      if (spec.oscillator == Oscillator::None || partials.size() < 8) {
        out.value = value;
        out.err_estimate = err + tail;
        out.terms = evals;
        throw ConvergenceError("integrate_semi_infinite: panel budget exhausted", out);
      }
      const std::size_t m = std::min<std::size_t>(partials.size(), 21);
      std::vector<double> last(partials.end() - m, partials.end());
      double acc_err = 0.0;
      value = wynn_epsilon(last, acc_err);
      err += acc_err;
      tail = 0.0;
      accelerated = true;
      break;
    }
  }
  if (!accelerated) err += tail;

  out.value = value;
  out.err_estimate = err;
  out.terms = std::max<long>(evals, 1);
  if (!std::isfinite(value) || !std::isfinite(err)) {
    throw DomainError("integrate_semi_infinite: integrand overflowed");
  }
  if (err > std::max(tol * std::abs(value), 200.0 * kEps * l1)) {
    throw ConvergenceError("integrate_semi_infinite: tolerance " + std::to_string(tol) + " not reached", out);
  }
  return out;
}

EvalResult laplace_term_sum(const IntegrandSpec& spec, const std::function<double(long)>& closed_form, double tol,
                            long max_terms) {
  if (spec.weight != Weight::Bose) throw DomainError("laplace_term_sum: requires the Bose weight");
  if (!(tol > 0.0)) throw DomainError("laplace_term_sum: tol must be positive");
  GeometricTailSum sum(tol, max_terms);
  for (long k = 1;; ++k) {
    const double term = closed_form(k);
    if (!std::isfinite(term)) throw DomainError("laplace_term_sum: non-finite term at k = " + std::to_string(k));
    if (sum.add(term, term)) break;
  }
  return sum.result(MethodKind::TermSum);
}

}  // namespace pmathieu
