#include "pmathieu/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "pmathieu/errors.hpp"
#include "pmathieu/gl_derivative.hpp"
#include "pmathieu/quadrature.hpp"
#include "pmathieu/schlomilch.hpp"
#include "pmathieu/special_kernels.hpp"
#include "pmathieu/zeta_p.hpp"

namespace pmathieu {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;
constexpr int kExitFailure = 3;

std::string fmt(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::optional<int> thm1_order(double mu) {
  for (int n = 2; n <= 4; ++n) {
    if (mu == n - 1.5) return n;
  }
  return std::nullopt;
}

void require_mu(const MathieuParams& params, double mu, const char* name) {
  if (params.mu != mu) {
    throw DomainError(std::string(name) + " applies only at mu = " + fmt(mu));
  }
  if (!(params.p > 0.0)) throw DomainError(std::string(name) + " requires p > 0");
}

long long elapsed_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start).count();
}

OutputRecord make_record(MethodKind method, const MathieuParams& params, const EvalResult& res, long long ns) {
  return {std::string(method_tag(method)), params.mu, params.p, params.r, res.value, res.err_estimate, res.terms, ns};
}

void emit(std::ostream& out, const OutputRecord& rec, bool csv, bool header = true) {
  if (csv) {
    if (header) out << kCsvHeader << '\n';
    out << to_csv_row(rec) << '\n';
  } else {
    out << to_json(rec) << '\n';
  }
}

// Settings shared by every evaluating subcommand.
struct CommonOptions {
  MathieuParams params;
  std::string method = "auto";
  std::string format = "json";
  std::string config;
  std::string fault;
  double tol = 1e-10;
  long max_terms = 0;
  double dispatch = 0.05;
  bool experimental = false;
  CLI::Option* tol_opt = nullptr;
  CLI::Option* max_terms_opt = nullptr;
  CLI::Option* dispatch_opt = nullptr;
};

void add_params(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--mu", o.params.mu, "Order mu")->required();
  cmd->add_option("--p", o.params.p, "Extension parameter p >= 0")->required();
  cmd->add_option("--r", o.params.r, "Argument r > 0")->required();
}

void add_controls(CLI::App* cmd, CommonOptions& o) {
  o.tol_opt = cmd->add_option("--tol", o.tol, "Requested relative tolerance");
  o.dispatch_opt = cmd->add_option("--dispatch-p-threshold", o.dispatch, "zeta_p integral/K-series switch");
  cmd->add_option("--config", o.config, "key=value file with tol, max_terms, dispatch_p_threshold");
  cmd->add_flag("--experimental", o.experimental, "Allow the fractional thm1 path");
  cmd->add_option("--inject-fault", o.fault)->group("");
}

void add_format(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

// Reads key=value lines; explicit flags take precedence.
void apply_config(CommonOptions& o) {
  if (o.config.empty()) return;
  std::ifstream in(o.config);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + o.config);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line.erase(0, line.find_first_not_of(" \t\r"));
    line.erase(line.find_last_not_of(" \t\r") + 1);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--config", "expected key=value: " + line);
    std::string key = line.substr(0, eq);
    std::string val = line.substr(eq + 1);
    key.erase(key.find_last_not_of(" \t") + 1);
    val.erase(0, val.find_first_not_of(" \t"));
    try {
      if (key == "tol") {
        if (o.tol_opt->count() == 0) o.tol = std::stod(val);
      } else if (key == "max_terms") {
        if (!o.max_terms_opt || o.max_terms_opt->count() == 0) o.max_terms = std::stol(val);
      } else if (key == "dispatch_p_threshold") {
        if (o.dispatch_opt->count() == 0) o.dispatch = std::stod(val);
      } else {
        throw CLI::ValidationError("--config", "unknown key " + key);
      }
    } catch (const std::logic_error&) {
      throw CLI::ValidationError("--config", "bad value for " + key + ": " + val);
    }
  }
}

Controls make_controls(const CommonOptions& o) {
  Controls ctl;
  ctl.tol = o.tol;
  ctl.max_terms = o.max_terms;
  ctl.dispatch_p_threshold = o.dispatch;
  ctl.allow_experimental = o.experimental;
  return ctl;
}

MethodKind parse_method(const CommonOptions& o) {
  if (o.method == "auto") return auto_method(o.params);
  return *method_from_tag(o.method);
}

int run_compute(const CommonOptions& o, std::ostream& out, std::ostream& err) {
  const bool csv = o.format == "csv";
  MethodKind method = MethodKind::IntegralA4;
  const auto start = std::chrono::steady_clock::now();
  try {
    method = parse_method(o);
    const EvalResult res = evaluate(method, o.params, make_controls(o));
    emit(out, make_record(method, o.params, res, elapsed_since(start)), csv);
    return kExitOk;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const ConvergenceError& e) {
    err << "convergence error: " << e.what() << '\n';
    emit(out, make_record(method, o.params, e.best(), elapsed_since(start)), csv);
    return kExitFailure;
  } catch (const ConsistencyError& e) {
    err << "consistency error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int run_compare(const CommonOptions& o, std::ostream& out, std::ostream& err) {
  const bool csv = o.format == "csv";
  std::vector<MethodKind> methods;
  try {
    methods = applicable_methods(o.params);
    if (methods.empty()) throw DomainError("no representation applies to these parameters");
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  }

  const Controls ctl = make_controls(o);
  std::vector<OutputRecord> records;
  std::vector<std::string> failures;
  for (MethodKind m : methods) {
    const auto start = std::chrono::steady_clock::now();
    try {
      const EvalResult res = evaluate(m, o.params, ctl);
      records.push_back(make_record(m, o.params, res, elapsed_since(start)));
    } catch (const ConvergenceError& e) {
      failures.push_back(std::string(method_tag(m)) + ": " + e.what());
      records.push_back(make_record(m, o.params, e.best(), elapsed_since(start)));
    } catch (const std::exception& e) {
      failures.push_back(std::string(method_tag(m)) + ": " + e.what());
    }
  }
  if (o.fault == "offset" && !records.empty()) {
    OutputRecord& last = records.back();
    last.value += 1e-6 * std::max(1.0, std::abs(last.value));
  }

  double max_delta = 0.0;
  double max_abs = 0.0;
  for (const auto& rec : records) max_abs = std::max(max_abs, std::abs(rec.value));
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (std::size_t j = i + 1; j < records.size(); ++j) {
      const double delta = std::abs(records[i].value - records[j].value);
      max_delta = std::max(max_delta, delta);
      const double allowed = 10.0 * (records[i].err_estimate + records[j].err_estimate) + 1e-8 * max_abs;
      if (delta > allowed) {
        failures.push_back(records[i].method + " vs " + records[j].method + ": delta " + fmt_short(delta) +
                           " exceeds " + fmt_short(allowed));
      }
    }
  }

  if (csv) {
    out << kCsvHeader << '\n';
    for (const auto& rec : records) out << to_csv_row(rec) << '\n';
    out << "max_pairwise_delta," << fmt(o.params.mu) << ',' << fmt(o.params.p) << ',' << fmt(o.params.r) << ','
        << fmt(max_delta) << ",,,\n";
  } else {
    out << "{\"records\":[";
    for (std::size_t i = 0; i < records.size(); ++i) out << (i ? "," : "") << to_json(records[i]);
    out << "],\"max_pairwise_delta\":" << fmt(max_delta) << "}\n";
  }
  for (const auto& f : failures) err << "disagreement: " << f << '\n';
  return failures.empty() ? kExitOk : kExitFailure;
}

int run_convergence(const CommonOptions& o, long max_terms, std::ostream& out, std::ostream& err) {
  MethodKind method;
  try {
    method = parse_method(o);
    if (method == MethodKind::IntegralA4) throw DomainError("integral has no term structure");
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  }
  struct Row {
    long terms;
    double partial;
    double err;
  };
  std::vector<Row> rows;
  Controls ctl = make_controls(o);
  long next = 1;
  ctl.observer = [&](long terms, double partial, double tail) {
    if (terms == next && terms <= max_terms) {
      rows.push_back({terms, partial, tail});
      next *= 2;
    }
  };
  int code = kExitOk;
  EvalResult final_res;
  try {
    final_res = evaluate(method, o.params, ctl);
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const ConvergenceError& e) {
    err << "convergence error: " << e.what() << '\n';
    final_res = e.best();
    code = kExitFailure;
  } catch (const ConsistencyError& e) {
    err << "consistency error: " << e.what() << '\n';
    return kExitFailure;
  }
  if (rows.empty() || rows.back().terms < final_res.terms) {
    rows.push_back({final_res.terms, final_res.value, final_res.err_estimate});
  } else {
    rows.back() = {final_res.terms, final_res.value, final_res.err_estimate};
  }
  const std::string tag(method_tag(method));
  out << "method,terms,partial,err_estimate\n";
  for (const auto& row : rows) out << tag << ',' << row.terms << ',' << fmt(row.partial) << ',' << fmt(row.err) << '\n';
  return code;
}

int run_zeta_p(double alpha, double p, const std::string& which, const CommonOptions& o, std::ostream& out,
               std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  try {
    const ZetaPParams zp{alpha, p};
    EvalResult res;
    if (which == "integral") {
      validate(zp);
      res = zeta_p_integral(zp, o.tol);
    } else if (which == "kseries") {
      validate(zp);
      res = zeta_p_kseries(zp, o.tol);
    } else {
      res = zeta_p(zp, o.tol, o.dispatch);
    }
    out << "{\"method\":\"" << method_tag(res.method) << "\",\"alpha\":" << fmt(alpha) << ",\"p\":" << fmt(p)
        << ",\"value\":" << fmt(res.value) << ",\"err_estimate\":" << fmt(res.err_estimate)
        << ",\"terms\":" << res.terms << ",\"elapsed_ns\":" << elapsed_since(start) << "}\n";
    return kExitOk;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const ConvergenceError& e) {
    err << "convergence error: " << e.what() << '\n';
    return kExitFailure;
  }
}

// Fractional integral of e^{-1.5 t} on [x - 40, x], by adaptive quadrature of
// (x - t)^{alpha - 1} e^{-1.5 t} / Gamma(alpha) with the endpoint singularity
// removed by t = x - u^{1/alpha}.
double riemann_liouville_exp(double alpha, double x) {
  constexpr double rate = 1.5;
  const double width = std::pow(40.0, alpha);
  auto f = [&](double v) { return std::exp(-rate * (x - std::pow(v, 1.0 / alpha))); };
  const QuadResult q = integrate_adaptive(f, 0.0, width, 0.0, 1e-14, 2000);
  return q.value / (alpha * gamma_fn(alpha));
}

int run_gl_check(double alpha, double x, std::ostream& out, std::ostream& err) {
  if (!(alpha > 0.0) || !std::isfinite(x)) {
    err << "domain error: gl-check requires alpha > 0\n";
    return kExitDomain;
  }
  try {
    double value = 0.0;
    double reference = 0.0;
    double err_est = 0.0;
    double limit = 0.0;
    std::string kind;
    const double n = std::round(alpha);
    if (alpha == n && n <= 4) {
      kind = "derivative";
      constexpr double q = 1.0;
      const Estimate e = nth_derivative([x](double s) { return std::exp(-s * x); }, q, int(n), 0.05);
      value = e.value;
      err_est = e.err_estimate;
      reference = std::pow(-x, n) * std::exp(-q * x);
      limit = 1e-7;
    } else {
      kind = "fractional_integral";
      GLConfig cfg;
      cfg.a = x - 40.0;
      const Estimate e = gl_fractional([](double t) { return std::exp(-1.5 * t); }, x, alpha, cfg);
      value = e.value;
      err_est = e.err_estimate;
      reference = riemann_liouville_exp(alpha, x);
      limit = 1e-4;
    }
    const double rel = std::abs(value - reference) / std::abs(reference);
    out << "{\"check\":\"" << kind << "\",\"alpha\":" << fmt(alpha) << ",\"x\":" << fmt(x)
        << ",\"value\":" << fmt(value) << ",\"reference\":" << fmt(reference) << ",\"err_estimate\":" << fmt(err_est)
        << ",\"rel_delta\":" << fmt(rel) << ",\"pass\":" << (rel <= limit ? "true" : "false") << "}\n";
    return rel <= limit ? kExitOk : kExitFailure;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const ConvergenceError& e) {
    err << "convergence error: " << e.what() << '\n';
    return kExitFailure;
  }
}

struct Check {
  std::string group;
  std::string name;
  std::function<double()> measure;  // returns the measured relative delta
  double tolerance;
};

std::vector<Check> selfcheck_suite(bool k_parity_fault) {
  std::vector<Check> checks;
  const double k_sign = k_parity_fault ? -1.0 : 1.0;

  for (double nu : {0.5, 1.0, 2.5, 7.0}) {
    checks.push_back({"bessel_parity", "K_-nu = K_nu at nu=" + fmt_short(nu), [=] {
                        const double a = bessel_k_real(nu, 1.3);
                        const double b = k_sign * bessel_k_real(-nu, 1.3);
                        return std::abs(a - b) / std::abs(a);
                      },
                      1e-15});
  }
  checks.push_back({"bessel_parity", "J_-1 = -J_1", [] {
                      const double a = bessel_j(1, 2.2);
                      return std::abs(a + bessel_j(-1, 2.2)) / std::abs(a);
                    },
                    1e-15});
  checks.push_back({"bessel_parity", "K_n(conj z) = conj K_n(z)", [=] {
                      const ComplexScalar z(2.5, 1.7);
                      const ComplexScalar a = bessel_k_complex(2, z);
                      const ComplexScalar b = k_sign * std::conj(bessel_k_complex(2, std::conj(z)));
                      return std::abs(a - b) / std::abs(a);
                    },
                    1e-14});
  checks.push_back({"bessel_parity", "complex K agrees with real K on the axis", [] {
                      const double a = bessel_k_real(3, 2.7);
                      return std::abs(bessel_k_complex(3, ComplexScalar(2.7, 0.0)) - a) / a;
                    },
                    1e-12});

  for (double x : {0.3, 2.0, 9.0}) {
    checks.push_back({"product_derivative", "2(J1 K1)' at x=" + fmt_short(x), [=] {
                        auto jk = [](double t) { return bessel_j(1, t) * bessel_k_real(1, t); };
                        const double lhs = 2.0 * nth_derivative(jk, x, 1, 0.05 * std::min(1.0, x)).value;
                        const double rhs = (bessel_j(0, x) - bessel_j(2, x)) * bessel_k_real(1, x) -
                                           bessel_j(1, x) * (bessel_k_real(0, x) + bessel_k_real(2, x));
                        return std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300);
                      },
                      1e-7});
  }

  for (int n = 1; n <= 3; ++n) {
    checks.push_back({"gl_eigen", "d^n/dq^n e^{-qx} at n=" + std::to_string(n), [=] {
                        constexpr double x = 1.7;
                        constexpr double q = 0.8;
                        const double v = nth_derivative([](double s) { return std::exp(-s * x); }, q, n, 0.05).value;
                        const double ref = std::pow(-x, n) * std::exp(-q * x);
                        return std::abs(v - ref) / std::abs(ref);
                      },
                      1e-7});
  }
  checks.push_back({"gl_eigen", "order-1 integral of t on [0,2]", [] {
                      GLConfig cfg;
                      cfg.a = 0.0;
                      return std::abs(gl_fractional([](double t) { return t; }, 2.0, 1.0, cfg).value - 2.0) / 2.0;
                    },
                    1e-10});
  checks.push_back({"gl_eigen", "order-0.5 integral of e^{-1.5t}", [] {
                      GLConfig cfg;
                      cfg.a = 2.0 - 40.0;
                      const double v = gl_fractional([](double t) { return std::exp(-1.5 * t); }, 2.0, 0.5, cfg).value;
                      const double ref = riemann_liouville_exp(0.5, 2.0);
                      return std::abs(v - ref) / ref;
                    },
                    1e-4});

  for (auto [alpha, p] : {std::pair{0.5, 0.5}, {2.0, 1.0}, {5.0, 10.0}}) {
    checks.push_back({"zeta_p_cross", "integral vs K-series at alpha=" + fmt_short(alpha) + " p=" + fmt_short(p), [=] {
                        const ZetaPParams zp{alpha, p};
                        const double a = zeta_p_integral(zp, 1e-12).value;
                        const double b = zeta_p_kseries(zp, 1e-12).value;
                        return std::abs(a - b) / std::abs(b);
                      },
                      1e-10});
  }

  checks.push_back({"laplace_kernels", "A kernel vs quadrature", [] {
                      IntegrandSpec spec;
                      spec.sigma = -1.0;
                      spec.p = 1.0;
                      spec.weight = Weight::Exp;
                      spec.q = 2.0;
                      spec.oscillator = Oscillator::BesselJ;
                      spec.nu = 1.0;
                      spec.gamma = 0.7;
                      const double quad = integrate_semi_infinite(spec, 1e-12).value;
                      const double closed = kernel_A(1.0, 2.0, 0.7, 1.0);
                      return std::abs(quad - closed) / std::abs(closed);
                    },
                    1e-9});
  checks.push_back({"laplace_kernels", "E kernel (sin) vs quadrature", [] {
                      IntegrandSpec spec;
                      spec.sigma = 1.0;
                      spec.p = 0.5;
                      spec.weight = Weight::Exp;
                      spec.q = 1.5;
                      spec.oscillator = Oscillator::Sin;
                      spec.gamma = 0.9;
                      const double quad = integrate_semi_infinite(spec, 1e-12).value;
                      const double closed = kernel_E(0.5, 1.5, 0.9, 1, TrigKind::Sin);
                      return std::abs(quad - closed) / std::abs(closed);
                    },
                    1e-9});

  for (double mu : {0.5, 2.0}) {
    checks.push_back({"p0_reduction", "series vs classical at mu=" + fmt_short(mu), [=] {
                        const double a = s_series({mu, 0.0, 0.5}).value;
                        const double b = s_classical(mu, 0.5).value;
                        return std::abs(a - b) / b;
                      },
                      1e-9});
  }

  checks.push_back({"schlomilch_cross", "b3 vs integral", [] {
                      const double a = repr_b3(1.0, 0.7).value;
                      const double b = s_integral({0.0, 1.0, 0.7}).value;
                      return std::abs(a - b) / std::abs(b);
                    },
                    1e-8});
  checks.push_back({"schlomilch_cross", "b4 vs series", [] {
                      const double a = repr_b4(1.0, 0.5).value;
                      const double b = s_series({1.0, 1.0, 0.5}).value;
                      return std::abs(a - b) / std::abs(b);
                    },
                    1e-8});
  return checks;
}

int run_selfcheck(const std::string& fault, std::ostream& out) {
  const auto checks = selfcheck_suite(fault == "k-parity");
  int failed = 0;
  std::string group;
  for (const auto& c : checks) {
    if (c.group != group) {
      group = c.group;
      out << "[" << group << "]\n";
    }
    double measured;
    std::string note;
    try {
      measured = c.measure();
    } catch (const std::exception& e) {
      measured = INFINITY;
      note = std::string(" (") + e.what() + ")";
    }
    const bool ok = measured <= c.tolerance;
    failed += ok ? 0 : 1;
    out << "  " << (ok ? "PASS" : "FAIL") << "  " << c.name << "  measured=" << fmt_short(measured)
        << " tolerated=" << fmt_short(c.tolerance) << note << '\n';
  }
  out << (failed ? std::to_string(failed) + " check(s) failed" : std::string("all checks passed")) << '\n';
  return failed ? kExitFailure : kExitOk;
}

}  // namespace

std::string to_json(const OutputRecord& rec) {
  std::ostringstream os;
  os << "{\"method\":\"" << rec.method << "\",\"mu\":" << fmt(rec.mu) << ",\"p\":" << fmt(rec.p)
     << ",\"r\":" << fmt(rec.r) << ",\"value\":" << fmt(rec.value) << ",\"err_estimate\":" << fmt(rec.err_estimate)
     << ",\"terms\":" << rec.terms << ",\"elapsed_ns\":" << rec.elapsed_ns << "}";
  return os.str();
}

std::string to_csv_row(const OutputRecord& rec) {
  std::ostringstream os;
  os << rec.method << ',' << fmt(rec.mu) << ',' << fmt(rec.p) << ',' << fmt(rec.r) << ',' << fmt(rec.value) << ','
     << fmt(rec.err_estimate) << ',' << rec.terms << ',' << rec.elapsed_ns;
  return os.str();
}

MethodKind auto_method(const MathieuParams& params) {
  if (params.p > 0.0) {
    const double mu = params.mu;
    if (mu == -0.5) return MethodKind::B2;
    if (mu == 0.0) return MethodKind::B3;
    if (mu == 0.5) return MethodKind::B1;
    if (mu == 1.0) return MethodKind::B4;
    if (mu == 1.5) return MethodKind::Thm1Int;
    if (mu == 2.0) return MethodKind::B7;
  }
  return MethodKind::IntegralA4;
}

std::vector<MethodKind> applicable_methods(const MathieuParams& params) {
  std::vector<MethodKind> out;
  const double mu = params.mu;
  const bool valid = params.p > 0.0 ? mu >= -0.5 : (params.p == 0.0 && mu > 0.0);
  if (!valid || !(params.r > 0.0)) return out;
  if (params.r < 1.0) out.push_back(MethodKind::SeriesA3);
  out.push_back(MethodKind::IntegralA4);
  if (params.p > 0.0) {
    if (thm1_order(mu)) out.push_back(MethodKind::Thm1Int);
    if (mu == 0.5) out.push_back(MethodKind::B1);
    if (mu == -0.5) out.push_back(MethodKind::B2);
    if (mu == 0.0) out.push_back(MethodKind::B3);
    if (mu == 1.0) out.push_back(MethodKind::B4);
    if (mu == 2.0) out.push_back(MethodKind::B7);
  }
  return out;
}

EvalResult evaluate(MethodKind method, const MathieuParams& params, const Controls& ctl) {
  if (!std::isfinite(params.mu) || !std::isfinite(params.p) || !std::isfinite(params.r)) {
    throw DomainError("parameters must be finite");
  }
  if (!(params.p >= 0.0)) throw DomainError("requires p >= 0");
  if (!(params.r > 0.0)) throw DomainError("requires r > 0");
  switch (method) {
    case MethodKind::SeriesA3:
      return s_series(params, ctl);
    case MethodKind::IntegralA4:
      return s_integral(params, ctl);
    case MethodKind::Thm1Int: {
      if (!(params.p > 0.0)) throw DomainError("thm1 requires p > 0");
      if (const auto n = thm1_order(params.mu)) return repr_thm1_integer(*n, params.p, params.r, ctl);
      if (ctl.allow_experimental) return repr_thm1_fractional(params.mu + 1.5, params.p, params.r, ctl);
      throw DomainError("thm1 applies only at mu in {1/2, 3/2, 5/2}");
    }
    case MethodKind::B1:
      require_mu(params, 0.5, "b1");
      return repr_b1(params.p, params.r, ctl);
    case MethodKind::B2:
      require_mu(params, -0.5, "b2");
      return repr_b2(params.p, params.r, ctl);
    case MethodKind::B3:
      require_mu(params, 0.0, "b3");
      return repr_b3(params.p, params.r, ctl);
    case MethodKind::B4:
      require_mu(params, 1.0, "b4");
      return repr_b4(params.p, params.r, ctl);
    case MethodKind::B7:
      require_mu(params, 2.0, "b7");
      return repr_b7(params.p, params.r, ctl);
    default:
      throw DomainError("method " + std::string(method_tag(method)) + " does not evaluate S_{mu,p}(r)");
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evaluate the p-extended Mathieu series S_{mu,p}(r)", "pmathieu"};
  app.require_subcommand(1);

  const std::vector<std::string> method_names{"auto", "series", "integral", "thm1", "b1", "b2", "b3", "b4", "b7"};

  CommonOptions compute_opts;
  auto* compute = app.add_subcommand("compute", "Evaluate with one method");
  add_params(compute, compute_opts);
  compute->add_option("--method", compute_opts.method, "Representation")->check(CLI::IsMember(method_names));
  add_controls(compute, compute_opts);
  compute_opts.max_terms_opt = compute->add_option("--max-terms", compute_opts.max_terms, "Term cap")
                                   ->check(CLI::PositiveNumber);
  add_format(compute, compute_opts);

  CommonOptions compare_opts;
  auto* compare = app.add_subcommand("compare", "Evaluate with every applicable method");
  add_params(compare, compare_opts);
  add_controls(compare, compare_opts);
  add_format(compare, compare_opts);

  CommonOptions conv_opts;
  long conv_max_terms = 0;
  auto* convergence = app.add_subcommand("convergence", "Partial sums at 1, 2, 4, ... terms as CSV");
  add_params(convergence, conv_opts);
  convergence->add_option("--method", conv_opts.method, "Representation")->check(CLI::IsMember(method_names));
  add_controls(convergence, conv_opts);
  convergence->add_option("--max-terms", conv_max_terms, "Largest reported term count")
      ->required()
      ->check(CLI::PositiveNumber);

  CommonOptions zeta_opts;
  double zeta_alpha = 2.0;
  double zeta_p_value = 0.0;
  std::string zeta_method = "auto";
  auto* zeta = app.add_subcommand("zeta-p", "Evaluate the p-extended zeta function");
  zeta->add_option("--alpha", zeta_alpha, "Order alpha")->required();
  zeta->add_option("--p", zeta_p_value, "Extension parameter p >= 0")->required();
  zeta->add_option("--method", zeta_method, "Representation")
      ->check(CLI::IsMember({"auto", "integral", "kseries"}));
  add_controls(zeta, zeta_opts);

  double gl_alpha = 0.5;
  double gl_x = 2.0;
  auto* gl = app.add_subcommand("gl-check", "Check the derivative and Grunwald-Letnikov operators on e^{-qx}");
  gl->add_option("--alpha", gl_alpha, "Order")->required();
  gl->add_option("--x", gl_x, "Evaluation point")->required();

  std::string selfcheck_fault;
  auto* selfcheck = app.add_subcommand("selfcheck", "Run the invariant suite");
  selfcheck->add_option("--inject-fault", selfcheck_fault)->group("");

  try {
    app.parse(argc, argv);
    for (CommonOptions* o : {&compute_opts, &compare_opts, &conv_opts, &zeta_opts}) {
      if (!o->config.empty()) apply_config(*o);
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kExitUsage;
  }

  if (*compute) return run_compute(compute_opts, out, err);
  if (*compare) return run_compare(compare_opts, out, err);
  if (*convergence) return run_convergence(conv_opts, conv_max_terms, out, err);
  if (*zeta) return run_zeta_p(zeta_alpha, zeta_p_value, zeta_method, zeta_opts, out, err);
  if (*gl) return run_gl_check(gl_alpha, gl_x, out, err);
  if (*selfcheck) return run_selfcheck(selfcheck_fault, out);
  return kExitUsage;
}

}  // namespace pmathieu
