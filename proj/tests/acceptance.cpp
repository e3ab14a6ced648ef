// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oracles.hpp"
#include "pmathieu/cli.hpp"
#include "pmathieu/gl_derivative.hpp"
#include "pmathieu/mathieu_core.hpp"
#include "pmathieu/schlomilch.hpp"
#include "pmathieu/special_kernels.hpp"
#include "pmathieu/zeta_p.hpp"

using namespace pmathieu;

namespace {

struct Outcome {
  double measured = 0.0;  // worst observed deviation
  double limit = 0.0;     // tolerated deviation
  std::string note;
  bool extra_ok = true;
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

int failures = 0;

void criterion(int id, const char* title, double seconds_limit, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  std::string error;
  try {
    o = body();
  } catch (const std::exception& e) {
    error = e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool ok = error.empty() && o.extra_ok && o.measured <= o.limit && secs < seconds_limit;
  failures += ok ? 0 : 1;
  std::printf("criterion %d %-44s %s  worst=%.3e limit=%.1e  time=%.2fs (<%.0fs)%s%s\n", id, title,
              ok ? "PASS" : "FAIL", o.measured, o.limit, secs, seconds_limit,
              o.note.empty() ? "" : ("  " + o.note).c_str(), error.empty() ? "" : ("  error: " + error).c_str());
  std::fflush(stdout);
}

int cli(std::vector<std::string> args, std::string* out = nullptr) {
  args.insert(args.begin(), "pmathieu");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o;
  std::ostringstream e;
  const int code = run_cli(int(argv.size()), argv.data(), o, e);
  if (out) *out = o.str();
  return code;
}

}  // namespace

int main() {
  criterion(1, "p=0 reduction to the classical series", 10, [] {
    Outcome o{0.0, 1e-9};
    for (double mu : {0.5, 1.0, 2.0}) {
      for (double r : {0.1, 0.5, 0.9}) {
        const double cl = s_classical(mu, r, 1e-12).value;
        o.measured = std::max(o.measured, rel(s_series({mu, 0.0, r}).value, cl));
        o.measured = std::max(o.measured, rel(s_integral({mu, 0.0, r}).value, cl));
      }
    }
    return o;
  });

  criterion(2, "zeta_p integral vs K-series", 10, [] {
    Outcome o{0.0, 1e-10};
    for (double alpha : {0.5, 1.0, 2.0, 3.0, 5.0}) {
      for (double p : {0.1, 0.5, 1.0, 2.0, 10.0}) {
        const double a = zeta_p_integral({alpha, p}, 1e-12).value;
        const double b = zeta_p_kseries({alpha, p}, 1e-12).value;
        o.measured = std::max(o.measured, rel(a, b));
      }
    }
    return o;
  });

  double worst_residue = 0.0;
  criterion(3, "b3/b4/b7 vs the Bessel integral", 60, [&] {
    Outcome o{0.0, 1e-8};
    for (double p : {0.25, 1.0, 4.0}) {
      for (double r : {0.3, 0.7, 1.5, 3.0}) {
        const EvalResult b3 = repr_b3(p, r);
        const EvalResult b4 = repr_b4(p, r);
        const EvalResult b7 = repr_b7(p, r);
        o.measured = std::max(o.measured, rel(b3.value, s_integral({0.0, p, r}).value));
        o.measured = std::max(o.measured, rel(b4.value, s_integral({1.0, p, r}).value));
        o.measured = std::max(o.measured, rel(b7.value, s_integral({2.0, p, r}).value));
        worst_residue = std::max({worst_residue, b3.max_imag_residue, b4.max_imag_residue, b7.max_imag_residue});
      }
    }
    return o;
  });

  criterion(4, "derivative forms b2, b1, thm1 (n=2,3)", 120, [] {
    double w_b2 = 0.0;
    double w_rest = 0.0;
    for (double p : {0.5, 1.0}) {
      for (double g : {0.3, 0.7, 1.5}) {
        w_b2 = std::max(w_b2, rel(repr_b2(p, g).value, s_integral({-0.5, p, g}).value));
        const double half = s_integral({0.5, p, g}).value;
        w_rest = std::max(w_rest, rel(repr_b1(p, g).value, half));
        w_rest = std::max(w_rest, rel(repr_thm1_integer(2, p, g).value, half));
        w_rest = std::max(w_rest, rel(repr_thm1_integer(3, p, g).value, s_integral({1.5, p, g}).value));
      }
    }
    Outcome o;
    // report the worst ratio to the per-method limit
    o.measured = std::max(w_b2 / 1e-7, w_rest / 1e-5);
    o.limit = 1.0;
    char buf[96];
    std::snprintf(buf, sizeof buf, "b2=%.2e (1e-7) b1/thm1=%.2e (1e-5)", w_b2, w_rest);
    o.note = buf;
    return o;
  });

  criterion(5, "GL eigen-relation and fractional integral", 10, [] {
    double w_int = 0.0;
    for (int n = 1; n <= 3; ++n) {
      for (double q : {0.5, 1.0, 2.0}) {
        for (double x : {0.3, 1.0, 2.5}) {
          const double v = nth_derivative([x](double s) { return std::exp(-s * x); }, q, n, 0.05).value;
          w_int = std::max(w_int, rel(v, std::pow(-x, n) * std::exp(-q * x)));
        }
      }
    }
    double w_frac = 0.0;
    auto f = [](double t) { return std::exp(-1.5 * t); };
    for (double alpha : {0.5, 1.5}) {
      GLConfig cfg;
      const double x = 2.0;
      cfg.a = x - 40.0;
      const double ref = oracle::riemann_liouville(f, cfg.a, x, alpha);
      w_frac = std::max(w_frac, rel(gl_fractional(f, x, alpha, cfg).value, ref));
    }
    Outcome o;
    o.measured = std::max(w_int / 1e-7, w_frac / 1e-4);
    o.limit = 1.0;
    char buf[96];
    std::snprintf(buf, sizeof buf, "integer=%.2e (1e-7) fractional=%.2e (1e-4)", w_int, w_frac);
    o.note = buf;
    return o;
  });

  criterion(6, "product identity 2(J1K1)' on [0.1, 20]", 1, [] {
    Outcome o{0.0, 1e-7};
    auto jk = [](double x) { return bessel_j(1, x) * bessel_k_real(1, x); };
    for (int i = 0; i < 50; ++i) {
      const double x = 0.1 + (20.0 - 0.1) * i / 49.0;
      const double lhs = 2.0 * nth_derivative(jk, x, 1, 0.05 * std::min(1.0, x)).value;
      const double rhs = (bessel_j(0, x) - bessel_j(2, x)) * bessel_k_real(1, x) -
                         bessel_j(1, x) * (bessel_k_real(0, x) + bessel_k_real(2, x));
      o.measured = std::max(o.measured, std::abs(lhs - rhs));
    }
    return o;
  });

  criterion(7, "Laplace kernels A, B, E vs direct quadrature", 30, [] {
    Outcome o{0.0, 1e-9};
    auto quad = [](const std::function<double(double)>& f) {
      return oracle::integrate_0_inf([&](double x) { return x <= 0.0 ? 0.0 : f(x); }, 0.5);
    };
    for (double p : {0.5, 1.0, 2.0}) {
      for (double q : {1.0, 2.0, 4.0}) {
        for (double g : {0.3, 1.0, 2.5}) {
          const double a = quad([=](double x) { return std::exp(-q * x - p / x) * oracle::bessel_j(1, g * x) / x; });
          const double b = quad([=](double x) { return std::exp(-q * x - p / x) * oracle::bessel_j(0, g * x) / (x * x); });
          const double es = quad([=](double x) { return x * std::exp(-q * x - p / x) * std::sin(g * x); });
          const double ec = quad([=](double x) { return std::exp(-q * x - p / x) * std::cos(g * x); });
          o.measured = std::max(o.measured, std::abs(kernel_A(p, q, g, 1.0) - a));
          o.measured = std::max(o.measured, std::abs(kernel_B(p, q, g) - b));
          o.measured = std::max(o.measured, std::abs(kernel_E(p, q, g, 1, TrigKind::Sin) - es));
          o.measured = std::max(o.measured, std::abs(kernel_E(p, q, g, 0, TrigKind::Cos) - ec));
        }
      }
    }
    return o;
  });

  criterion(8, "conjugate-pair realness on the criterion-3 grid", 60, [&] {
    return Outcome{worst_residue, 1e-10};
  });

  criterion(9, "CLI contract", 5, [] {
    Outcome o{0.0, 0.0};
    std::vector<std::string> failed;
    auto expect = [&](bool cond, const char* what) {
      if (!cond) failed.push_back(what);
    };
    const std::vector<std::string> args{"compute", "--mu", "1", "--p", "1", "--r", "0.5", "--method", "b4"};
    std::string a;
    std::string b;
    expect(cli(args, &a) == 0 && cli(args, &b) == 0, "compute exit 0");
    const auto ja = nlohmann::json::parse(a);
    const auto jb = nlohmann::json::parse(b);
    expect(ja["value"].get<double>() == jb["value"].get<double>() && ja["terms"] == jb["terms"] &&
               ja["err_estimate"].get<double>() == jb["err_estimate"].get<double>(),
           "determinism");
    OutputRecord rec{ja["method"], ja["mu"], ja["p"], ja["r"], ja["value"], ja["err_estimate"], ja["terms"], ja["elapsed_ns"]};
    expect(to_json(rec) + "\n" == a, "JSON round trip");
    expect(cli({"compute", "--mu", "1", "--p", "-1", "--r", "0.5"}) == 2, "domain exit 2");
    expect(cli({"compute", "--mu", "1", "--p", "1", "--r", "0.5", "--nope"}) == 1, "usage exit 1");
    expect(cli({"compute", "--mu", "1", "--p", "0.5", "--r", "0.99", "--method", "series", "--max-terms", "5"}) == 3,
           "convergence exit 3");
    std::string cmp;
    expect(cli({"compare", "--mu", "1", "--p", "1", "--r", "0.5"}, &cmp) == 0, "compare exit 0");
    expect(nlohmann::json::parse(cmp)["max_pairwise_delta"].get<double>() < 1e-8, "compare delta");
    expect(cli({"compare", "--mu", "1", "--p", "1", "--r", "0.5", "--inject-fault", "offset"}) == 3,
           "injected disagreement exit 3");
    for (const auto& f : failed) o.note += f + "; ";
    o.measured = double(failed.size());
    return o;
  });

  std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
