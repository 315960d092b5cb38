// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "nonlocal.hpp"
#include "support/counting_operator.hpp"

using namespace nonlocal;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

char buf[512];

template <class... A>
std::string fmt(const char* f, A... a) {
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool within_factor(double value, double target, double factor) {
  return value <= target * factor && value >= target / factor;
}

// Example 1 errors at x = 0.5, t = 1; n counts Gauss points.
Outcome example1_error_band() {
  struct Entry {
    int n, N;
    double expected, factor;
  };
  const Entry entries[] = {{4, 8, 4.530997940e-6, 5}, {8, 16, 7.3086845013760e-10, 5}, {16, 32, 2.609087146562e-13, 10}};
  bool pass = true;
  std::string detail;
  for (const auto& e : entries) {
    const auto t0 = std::chrono::steady_clock::now();
    const double err = *run_reproduction(1, e.n, e.N).abs_error;
    const double secs = seconds_since(t0);
    const bool ok = within_factor(err, e.expected, e.factor) && secs < 1.0;
    pass = pass && ok;
    detail += fmt("(%d,%d) err=%.4e expected=%.4e ratio=%.3g %.3fs %s; ", e.n, e.N, err, e.expected, err / e.expected, secs,
                  ok ? "ok" : "out of band");
  }
  return {pass, detail};
}

Outcome sqrt_law_fit() {
  const std::vector<int> Ns{4, 8, 16, 32};
  std::vector<double> errors;
  for (const auto& r : run_convergence(1, 16, Ns)) errors.push_back(*r.abs_error);
  const SqrtLawFit f = fit_sqrt_law(Ns, errors);
  const bool pass = f.slope <= -1.0 && f.relative_residual() <= 0.15;
  return {pass, fmt("slope=%.4f (need <= -1), max residual %.1f%% of range (need <= 15%%); errors %.3e %.3e %.3e %.3e",
                    f.slope, 100 * f.relative_residual(), errors[0], errors[1], errors[2], errors[3])};
}

Outcome example2_value() {
  const double expected = 5.95184553823189e-5;
  const auto t0 = std::chrono::steady_clock::now();
  const double v32 = example_value(2, 32, 256);
  const double secs = seconds_since(t0);
  const double v64 = example_value(2, 64, 512);
  const double rel_expected = std::abs(v32 - expected) / expected;
  const double rel_self = std::abs(v32 - v64) / std::abs(v64);
  const bool ok_expected = rel_expected <= 5e-12;
  const bool ok_self = rel_self <= 1e-12;
  return {ok_expected && ok_self && secs < 30.0,
          fmt("u(0.4,1)=%.15e vs expected %.15e: rel diff %.3e (need <= 5e-12) %s; vs (64,512) rel diff %.3e (need <= "
              "1e-12) %s; %.3fs",
              v32, expected, rel_expected, ok_expected ? "ok" : "FAIL", rel_self, ok_self ? "ok" : "FAIL", secs)};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(0x5eed0004);
  std::uniform_real_distribution<double> lam(1.0, 100.0), unit(0.0, 1.0);
  std::uniform_int_distribution<int> dim(1, 6), kind(0, 2), horizon(0, 1);
  std::normal_distribution<double> coef;
  const double t = 0.1;
  int passed = 0, total = 0, redraws = 0;
  double worst = 0.0;
  std::string worst_case;
  while (total < 20) {
    NonlocalProblem p;
    std::vector<double> ev(dim(rng));
    for (double& l : ev) l = lam(rng);
    std::sort(ev.begin(), ev.end());
    p.op = std::make_shared<DiagonalOperator>(ev);
    p.T = horizon(rng) == 0 ? 0.5 : pi / 2;
    const double a_I = ev.front() / std::numbers::sqrt2;
    const int k = kind(rng);
    if (k == 0) p.w = WeightFunction::zero();
    else if (k == 1) p.w = WeightFunction::constant(a_I * unit(rng));
    else p.w = WeightFunction::cosine();
    if (k == 2 && !(1.0 < a_I)) {  // cos violates ||w|| < a_I: outside the solver's domain
      ++redraws;
      continue;
    }
    for (std::size_t i = 0; i < ev.size(); ++i) p.u0.push_back(coef(rng));
    SolverConfig cfg;
    cfg.n = 16;
    cfg.N = 64;
    cfg.step = ScaledStep{1.0};
    const auto s = solve_at(p, cfg, t);
    const auto ref = oracle::reference_solution(*p.op, p.w, p.T, p.u0, t);
    std::vector<double> diff(ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) diff[i] = s.value[i] - ref[i];
    const double rel = inf_norm(diff) / inf_norm(ref);
    ++total;
    if (rel <= 1e-10) ++passed;
    if (rel > worst) {
      worst = rel;
      worst_case = fmt("lambda1=%.2f T=%.3f w=%s", ev.front(), p.T, p.w.describe().c_str());
    }
  }
  return {passed == total, fmt("%d/%d within 1e-10 relative at t=%.1f (%d redraws for cos with a_I <= 1); worst %.3e (%s)",
                               passed, total, t, redraws, worst, worst_case.c_str())};
}

Outcome contour_identities() {
  double worst_d1 = 0.0;
  for (int i = 0; i <= 15; ++i) {
    const double phi = 0.1 * i;
    for (double rho0 : {1.0, pi * pi, 37.5}) {
      const Contour c = make_contour({rho0, phi, {}}, 0.0);
      worst_d1 = std::max(worst_d1, std::abs(c.d1 - (pi / 2 - phi)));
    }
  }
  double worst_sa = 0.0;
  bool equal_axes = true;
  for (double rho0 : {1e-3, 1.0, std::numbers::sqrt2, pi * pi, 1e4}) {
    const Contour c = make_self_adjoint_contour(rho0);
    equal_axes = equal_axes && c.a == c.b && c.d1 == pi / 2;
    const double exact = rho0 / std::numbers::sqrt2;
    worst_sa = std::max(worst_sa, std::abs(c.a - exact) / exact);
  }
  const bool pass = worst_d1 <= 1e-15 && equal_axes && worst_sa <= 2 * std::numeric_limits<double>::epsilon();
  return {pass, fmt("max |d1 - (pi/2 - phi)| = %.2e (need <= 1e-15); self-adjoint a_I == b_I: %s, max rel |a_I - "
                    "rho0/sqrt2| = %.2e",
                    worst_d1, equal_axes ? "yes" : "no", worst_sa)};
}

Outcome existence_report() {
  const NonlocalProblem p = example_problem(1);
  const ConditionReport r = check_existence(p, solver_contour(*p.op, 0.0));
  const bool pass = r.sharp_ok && !r.rough_ok && r.w_sup.value == 1.0;
  return {pass, fmt("||w||=%.6g a_I=%.6f sharp_ok=%s 1/T=%.6f rough_ok=%s", r.w_sup.value, r.a_I,
                    r.sharp_ok ? "true" : "false", 1.0 / r.T, r.rough_ok ? "true" : "false")};
}

Outcome gauss_exactness() {
  double worst = 0.0;
  int worst_n = 0, worst_d = 0;
  for (int n = 1; n <= 16; ++n) {
    const GaussRule r = gauss_legendre(n);
    for (int d = 0; d <= 2 * n + 1; ++d) {
      double acc = 0.0;
      for (std::size_t j = 0; j < r.size(); ++j) acc += r.weights[j] * std::pow(r.nodes[j], d);
      const double err = std::abs(acc - (d % 2 == 0 ? 2.0 / (d + 1) : 0.0));
      if (err > worst) {
        worst = err;
        worst_n = n;
        worst_d = d;
      }
    }
  }
  return {worst <= 1e-13, fmt("max error %.2e at n=%d degree %d (need <= 1e-13)", worst, worst_n, worst_d)};
}

Outcome symmetry_reduction() {
  std::mt19937_64 rng(0x5eed0008);
  std::uniform_int_distribution<int> size(2, 40), Nd(4, 80), nd(2, 24), which(0, 2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> g;
  double worst = 0.0;
  bool counts_ok = true;
  for (int trial = 0; trial < 10; ++trial) {
    std::shared_ptr<const SectorialOperator> inner;
    const int m = size(rng);
    switch (which(rng)) {
      case 0: inner = std::make_shared<Laplacian1D>(m); break;
      case 1: inner = std::make_shared<SineSpectralOperator>(m); break;
      default: {
        std::vector<double> ev(m);
        for (double& l : ev) l = 0.5 + 200 * unit(rng);
        std::sort(ev.begin(), ev.end());
        inner = std::make_shared<DiagonalOperator>(ev);
      }
    }
    auto op = std::make_shared<CountingOperator>(inner);
    NonlocalProblem p;
    p.op = op;
    p.T = 0.2 + 2 * unit(rng);
    const double bound = std::min(op->spectral().rho0 / std::numbers::sqrt2, 1.0 / p.T);
    p.w = WeightFunction::constant(bound * (2 * unit(rng) - 1));
    for (int i = 0; i < m; ++i) p.u0.push_back(g(rng));
    SolverConfig cfg;
    cfg.n = nd(rng);
    cfg.N = Nd(rng);
    const double t = unit(rng);
    const auto folded = solve_at(p, cfg, t);
    counts_ok = counts_ok && op->calls() == cfg.N + 1;
    op->reset();
    cfg.use_symmetry = false;
    const auto full = solve_at(p, cfg, t);
    counts_ok = counts_ok && op->calls() == 2 * cfg.N + 1;
    std::vector<double> diff(m);
    for (int i = 0; i < m; ++i) diff[i] = folded.value[i] - full.value[i];
    worst = std::max(worst, inf_norm(diff) / inf_norm(full.value));
  }
  return {worst <= 1e-15 && counts_ok,
          fmt("max rel difference %.2e (need <= 1e-15); resolvent calls N+1 vs 2N+1: %s", worst,
              counts_ok ? "yes" : "no")};
}

Outcome resolvent_residual() {
  std::mt19937_64 rng(0x5eed0009);
  std::uniform_real_distribution<double> zeta(-8.0, 8.0);
  std::normal_distribution<double> g;
  std::vector<std::pair<std::string, std::shared_ptr<const SectorialOperator>>> ops{
      {"diagonal", std::make_shared<DiagonalOperator>(std::vector<double>{0.3, 1.0, 7.0, 50.0, 900.0})},
      {"sine", std::make_shared<SineSpectralOperator>(64)},
      {"laplacian1d", std::make_shared<Laplacian1D>(200)}};
  bool pass = true;
  std::string detail;
  for (const auto& [name, op] : ops) {
    const Contour c = solver_contour(*op, 0.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const cplx z = contour_point(c, zeta(rng)).z;
      cvec v(op->dim());
      for (auto& x : v) x = {g(rng), g(rng)};
      const cvec u = resolvent_apply(*op, z, v);
      const cvec Au = operator_apply(*op, u);
      double rn = 0.0, vn = 0.0;
      for (std::size_t k = 0; k < v.size(); ++k) {
        rn += std::norm(z * u[k] - Au[k] - v[k]);
        vn += std::norm(v[k]);
      }
      worst = std::max(worst, std::sqrt(rn / vn));
    }
    pass = pass && worst <= 1e-12;
    detail += fmt("%s %.2e; ", name.c_str(), worst);
  }
  return {pass, "max relative residual " + detail + "(need <= 1e-12)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"Example 1 error band", example1_error_band},
      {"exponential sqrt(N+1) decay fit", sqrt_law_fit},
      {"Example 2 value", example2_value},
      {"oracle equivalence (20 random diagonal problems)", oracle_equivalence},
      {"contour identities", contour_identities},
      {"existence report on Example 1", existence_report},
      {"Gauss rule exactness", gauss_exactness},
      {"symmetry-reduction equivalence", symmetry_reduction},
      {"resolvent residual", resolvent_residual}};

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s criterion %zu: %s [%.2fs] %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                seconds_since(t0), o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
