#include "pmathieu/gl_derivative.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "pmathieu/errors.hpp"

namespace pmathieu {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double gl_sum(const RealFunction& f, double x, double alpha, double a, long n) {
  const double h = (x - a) / double(n);
  double w = 1.0;
  double s = f(x);
  for (long m = 1; m <= n; ++m) {
    w *= (alpha + m - 1.0) / double(m);
    s += w * f(x - m * h);
  }
  return std::pow(h, alpha) * s;
}

// In-place Richardson table; column j removes the h^{exponents[j]} term.
// Returns the final extrapolant and the gap to the previous diagonal entry.
Estimate richardson(std::vector<double> level, const std::vector<int>& exponents, std::vector<double>* gaps) {
  const std::size_t n = level.size();
  Estimate best{level.back(), n > 1 ? std::abs(level.back() - level[n - 2]) : std::abs(level.back())};
  std::vector<double> diag{level.back()};
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double factor = std::pow(2.0, exponents[j]);
    for (std::size_t i = 0; i + 1 < level.size(); ++i) {
      level[i] = (factor * level[i + 1] - level[i]) / (factor - 1.0);
    }
    level.pop_back();
    diag.push_back(level.back());
  }
  best.value = diag.back();
  if (diag.size() >= 2) best.err_estimate = std::abs(diag.back() - diag[diag.size() - 2]);
  if (gaps) {
    gaps->clear();
    for (std::size_t i = 1; i < diag.size(); ++i) gaps->push_back(std::abs(diag[i] - diag[i - 1]));
  }
  return best;
}

}  // namespace

Estimate gl_fractional(const RealFunction& f, double x, double alpha, const GLConfig& cfg) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("gl_fractional: requires alpha > 0");
  if (!(cfg.a < x)) throw DomainError("gl_fractional: requires a < x");
  if (cfg.n_base < 16) throw DomainError("gl_fractional: n_base must be >= 16");
  if (cfg.n_levels < 1 || cfg.n_levels > 6) throw DomainError("gl_fractional: n_levels must lie in [1, 6]");

  std::vector<double> levels;
  for (int l = 0; l < cfg.n_levels; ++l) {
    levels.push_back(gl_sum(f, x, alpha, cfg.a, long(cfg.n_base) << l));
  }
  std::vector<int> exps;
  for (int j = 1; j < cfg.n_levels; ++j) exps.push_back(j);
  std::vector<double> gaps;
  Estimate est = richardson(levels, exps, &gaps);

  if (gaps.size() >= 2) {
    const double last = gaps.back();
    const double prev = gaps[gaps.size() - 2];
    const double floor = 1e3 * kEps * std::abs(est.value);
    if (last >= prev && last > floor) {
      throw ConvergenceError("gl_fractional: Richardson gaps are not decreasing",
                             EvalResult{est.value, est.err_estimate, long(cfg.n_base) << (cfg.n_levels - 1)});
    }
  }
  return est;
}

std::vector<double> fd_weights(int order, const std::vector<double>& offsets) {
  // Fornberg (1988), expansion point 0.
  const int n = int(offsets.size());
  std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0.0));
  double c1 = 1.0;
  double c4 = offsets[0];
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = offsets[i];
    for (int j = 0; j < i; ++j) {
      const double c3 = offsets[i] - offsets[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][order];
  return w;
}

Estimate nth_derivative(const RealFunction& f, double x, int n, double h0) {
  if (n < 1 || n > 4) throw DomainError("nth_derivative: order must lie in [1, 4]");
  if (!(h0 > 0.0) || !std::isfinite(h0)) throw DomainError("nth_derivative: step must be positive");

  const int half = n <= 2 ? 2 : 3;
  std::vector<double> offsets;
  for (int j = -half; j <= half; ++j) offsets.push_back(j);
  // Built once per call; the stencils are tiny.
  const std::vector<double> w = fd_weights(n, offsets);
  // All four stencils are fourth-order accurate; central errors are even in h.
  constexpr int lead = 4;

  std::vector<double> levels;
  double fmax = 0.0;
  double h = h0;
  for (int l = 0; l < 3; ++l, h *= 0.5) {
    double s = 0.0;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      const double fi = f(x + offsets[i] * h);
      fmax = std::max(fmax, std::abs(fi));
      s += w[i] * fi;
    }
    levels.push_back(s / std::pow(h, n));
  }
  Estimate est = richardson(levels, {lead, lead + 2}, nullptr);

  const double h_min = h0 / 4.0;
  const double rounding = 64.0 * kEps * fmax / std::pow(h_min, n);
  if (est.err_estimate > 1e-5 * std::abs(est.value) && est.err_estimate > rounding) {
    throw ConvergenceError("nth_derivative: extrapolation gap " + std::to_string(est.err_estimate) +
                               " exceeds 1e-5 of the value",
                           EvalResult{est.value, est.err_estimate, 3});
  }
  return est;
}

}  // namespace pmathieu
