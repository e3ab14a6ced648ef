#pragma once

#include <functional>
#include <vector>

namespace pmathieu {

using RealFunction = std::function<double(double)>;

struct Estimate {
  double value = 0.0;
  double err_estimate = 0.0;
};

/// Grunwald-Letnikov sampling of [a, x].
struct GLConfig {
  double a = 0.0;   // left base point, a < x
  int n_levels = 5; // Richardson levels, 1..6
  int n_base = 256; // GL terms at the coarsest level, >= 16
};

/// Fractional integral of order alpha > 0 (GL derivative of order -alpha):
///   h^alpha * sum_{m=0}^{n} Gamma(alpha+m)/(m! Gamma(alpha)) f(x - m h),  h = (x - a)/n,
/// at n = n_base * 2^l for l < n_levels, Richardson-extrapolated in integer
/// powers of h. err_estimate is the gap between the last two extrapolants.
/// Throws ConvergenceError if the gaps stop shrinking.
Estimate gl_fractional(const RealFunction& f, double x, double alpha, const GLConfig& cfg);

/// Finite-difference weights for the derivative of order `order` at 0 on the
/// given stencil offsets (Fornberg's recursion).
std::vector<double> fd_weights(int order, const std::vector<double>& offsets);

/// n-th derivative (1 <= n <= 4) by central differences (5-point for n <= 2,
/// 7-point for n = 3, 4) at steps h0, h0/2, h0/4 with Richardson extrapolation.
/// Throws ConvergenceError if the error estimate exceeds 1e-5 |value| and sits
/// above the rounding floor.
Estimate nth_derivative(const RealFunction& f, double x, int n, double h0);

}  // namespace pmathieu
