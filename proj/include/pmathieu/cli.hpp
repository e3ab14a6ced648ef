#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pmathieu/mathieu_core.hpp"
#include "pmathieu/types.hpp"

namespace pmathieu {

/// One evaluation as emitted by the CLI.
struct OutputRecord {
  std::string method;
  double mu = 0.0;
  double p = 0.0;
  double r = 0.0;
  double value = 0.0;
  double err_estimate = 0.0;
  long terms = 0;
  long long elapsed_ns = 0;
};

inline constexpr std::string_view kCsvHeader = "method,mu,p,r,value,err_estimate,terms,elapsed_ns";

std::string to_json(const OutputRecord& rec);
std::string to_csv_row(const OutputRecord& rec);

/// S_{mu,p}(r) by the named representation ("series", "integral", "thm1",
/// "b1", "b2", "b3", "b4", "b7"). Throws DomainError if the method does not
/// apply to (mu, p, r).
EvalResult evaluate(MethodKind method, const MathieuParams& params, const Controls& ctl);

/// Method picked by `compute --method auto`.
MethodKind auto_method(const MathieuParams& params);

/// Representations usable at (mu, p, r), in display order.
std::vector<MethodKind> applicable_methods(const MathieuParams& params);

/// Runs the command line; returns the process exit code
/// (0 ok, 1 usage, 2 domain error, 3 convergence failure or disagreement).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pmathieu
