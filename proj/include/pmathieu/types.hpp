#pragma once

#include <functional>
#include <optional>
#include <string_view>

namespace pmathieu {

/// Which representation produced a value.
enum class MethodKind {
  SeriesA3,      // zeta series in powers of r^2
  IntegralA4,    // Bessel integral over the Bose weight
  Thm1Int,       // n-th q-derivative of J_{n-2} K_{n-2}
  B1,            // third q-derivative form of S_{1/2,p}
  B2,            // first q-derivative form of S_{-1/2,p}
  B3,            // K_1 conjugate-pair series for S_{0,p}
  B4,            // K_2 conjugate-pair series for S_{1,p}
  B7,            // S_{2,p} from S_{1,p} and a K_3 pair series
  Classical,     // direct summation at p = 0
  Thm1Fractional,
  RiemannZeta,
  ZetaPIntegral,
  ZetaPKSeries,
  Quadrature,
  TermSum,
};

std::string_view method_tag(MethodKind m) noexcept;
std::optional<MethodKind> method_from_tag(std::string_view tag) noexcept;

struct EvalResult {
  double value = 0.0;
  double err_estimate = 0.0;
  long terms = 0;
  MethodKind method = MethodKind::Quadrature;
  /// Largest |Im| / |term| seen in a conjugate-pair sum; zero elsewhere.
  double max_imag_residue = 0.0;
};

/// Called after every accumulated term: (terms so far, partial value, tail estimate).
using PartialObserver = std::function<void(long, double, double)>;

/// Evaluation controls shared by every representation.
struct Controls {
  double tol = 1e-10;
  /// Per-method term cap; 0 keeps the method default.
  long max_terms = 0;
  /// Below this p the zeta_p dispatcher prefers the integral over the K-series.
  double dispatch_p_threshold = 0.05;
  bool allow_experimental = false;
  PartialObserver observer;
};

}  // namespace pmathieu
