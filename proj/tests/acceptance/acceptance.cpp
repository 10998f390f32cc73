// Acceptance checks. `acceptance --criterion N` runs one; without it every
// criterion runs and prints one PASS/FAIL line each. Exit status is nonzero
// if any selected criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nct/field.hpp"
#include "nct/nct.h"
#include "nct/oracle.hpp"

namespace {

using namespace nct;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string cli_path;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const SplittingModel& shallit_model() {
  static const SplittingModel m(make_frequency(OmegaSpec::shallit(8), 60), ModelParams{});
  return m;
}

std::string fmt(double v, int digits = 6) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

// 1. Certified Shallit prefix through the command-line front end.
Outcome continued_fraction_prefix() {
  const std::string expected = "1 1 1 2 1 1 1 1 1 1 1 2 1 1 1";
  const auto t0 = Clock::now();
  FILE* pipe = popen((cli_path + " cf --omega shallit 2>&1").c_str(), "r");
  if (!pipe) return {false, "cannot launch " + cli_path};
  std::string output;
  std::array<char, 4096> buf{};
  while (fgets(buf.data(), buf.size(), pipe)) output += buf.data();
  const int status = pclose(pipe);
  const double secs = seconds_since(t0);

  std::istringstream lines(output);
  std::string line, quotients;
  while (std::getline(lines, line)) {
    if (!line.empty() && line[0] != '#' && line.find(',') == std::string::npos) {
      quotients = line;
      break;
    }
  }
  const bool ok = status == 0 && quotients.rfind(expected, 0) == 0 && secs < 1.0;
  return {ok, "quotients \"" + quotients + "\", exit " + std::to_string(status) + ", " +
                  fmt(secs, 3) + " s"};
}

// 2. M, E and B through the C interface, depth 60, upper-half window.
Outcome constants_reproduction() {
  const auto t0 = Clock::now();
  nct_omega_spec spec{};
  spec.kind = NCT_OMEGA_SHALLIT;
  nct_model_params params;
  nct_model_params_default(&params);
  params.depth = 60;
  nct_model* model = nullptr;
  if (nct_model_create(&spec, &params, &model) != NCT_OK) return {false, nct_last_error()};
  nct_limits l;
  nct_constants c;
  nct_model_limits(model, &l);
  nct_model_constants(model, &c);
  nct_model_destroy(model);
  const double secs = seconds_since(t0);
  const bool ok = c.M == 3 && std::abs(c.E - 1.3761) <= 0.005 &&
                  std::abs(c.B - 1.7366) <= 0.005 && l.window_first == 30 &&
                  l.window_last == 60 && secs < 10;
  return {ok, "M=" + std::to_string(c.M) + " E=" + fmt(c.E, 7) + " B=" + fmt(c.B, 7) +
                  " window n=" + std::to_string(l.window_first) + ".." +
                  std::to_string(l.window_last) + ", " + fmt(secs, 3) + " s"};
}

// 3. max h1 over a window holding >= 10 convergent minima.
Outcome bnum_reproduction() {
  const auto t0 = Clock::now();
  const auto& m = shallit_model();
  const int deep = 20, shallow = 5;
  const double lo = m.eps_of_convergent(deep), hi = m.eps_of_convergent(shallow);
  int minima = 0;
  for (int n = 1; n <= m.depth(); ++n) {
    const double e = m.eps_of_convergent(n);
    if (e >= lo && e <= hi) ++minima;
  }
  const auto b = numerical_h1_bound(m, lo, hi, 400);
  const double secs = seconds_since(t0);
  const bool ok = minima >= 10 && std::abs(b.value - 1.2925) <= 0.01 && secs < 120;
  return {ok, "B_num=" + fmt(b.value, 7) + " over [" + fmt(lo, 4) + ", " + fmt(hi, 4) + "] (" +
                  std::to_string(minima) + " minima, " + std::to_string(b.crossovers) +
                  " crossovers), " + fmt(secs, 3) + " s"};
}

// 4. Markoff/Hurwitz sandwich for Shallit and golden, golden sweep to 1e5.
Outcome markoff_sandwich() {
  const double lo = 1.0 / 3 - 0.01, hi = 1 / std::sqrt(5.0) + 0.01;
  std::string detail;
  bool ok = true;
  for (const auto& spec : {OmegaSpec::shallit(8), OmegaSpec::golden()}) {
    const auto f = make_frequency(spec, 60);
    const auto l = estimate_diophantine_limits(f.quotients, f.omega, upper_half_window(60));
    const bool in = l.nu_star_est >= lo && l.nu_star_est <= hi && l.nu_limsup_est <= 1.01;
    ok = ok && in;
    detail += spec.describe() + ": nu*=" + fmt(l.nu_star_est, 7) + " limsup=" +
              fmt(l.nu_limsup_est, 7) + (in ? " ok" : " OUTSIDE [" + fmt(lo, 5) + ", " + fmt(hi, 5) + "]") + "; ";
  }
  const auto sweep = oracle::brute_force_nu_scan(make_frequency(OmegaSpec::golden(), 60), 100000);
  const double gap = std::abs(sweep.window_min - 1 / std::sqrt(5.0));
  ok = ok && gap <= 1e-3 && sweep.all_convergents;
  detail += "golden sweep q<=1e5: min nu=" + fmt(sweep.window_min, 8) + " |gap|=" + fmt(gap, 3);
  return {ok, detail};
}

// 5. Quadrature oracle vs residue formula.
Outcome residue_oracle() {
  const auto& m = shallit_model();
  oracle::QuadratureSpec spec;
  spec.T = 40;
  spec.panels = 256;
  double worst = 0, worst_est = 0;
  std::string where;
  int cases = 0;
  for (double eps : {0.1, 1.0}) {
    for (std::int64_t k2 = 0; k2 <= 10; ++k2) {
      for (std::int64_t k1 = -(10 - k2); k1 <= 10 - k2; ++k1) {
        const IntVec2 k{k1, k2};
        if (!k.is_canonical()) continue;
        ++cases;
        const auto q = oracle::quadrature_melnikov_coefficient(k, eps, 1.0, m.divisor(), spec);
        const double exact = melnikov_coefficient(k, eps, 1.0, m.divisor()).value();
        const double rel = std::abs(q.value - exact) / exact;
        worst_est = std::max(worst_est, q.error_bound() / std::abs(q.integral));
        if (rel > worst) {
          worst = rel;
          where = to_string(k) + " eps=" + fmt(eps, 2);
        }
      }
    }
  }
  return {worst <= 1e-8 && worst_est <= 1e-8,
          std::to_string(cases) + " cases, worst relative gap " + fmt(worst, 3) + " at " + where +
              ", worst reported error " + fmt(worst_est, 3)};
}

// 6. Certified dominant harmonic vs exhaustive |k|_1 <= 500.
Outcome lattice_oracle() {
  const auto& m = shallit_model();
  const oracle::LatticeTable table(m, 500);
  const auto grid = log_grid(m.eps_of_convergent(10), m.eps_of_convergent(5), 100);
  int mismatches = 0;
  double worst = 0, max_cutoff = 0;
  for (double eps : grid) {
    const auto d = dominant_harmonics(m, eps, SearchPolicy::LatticeReduction);
    const auto c = dominant_harmonics(m, eps, SearchPolicy::CutoffScan);
    const auto b = table.min_g(eps);
    max_cutoff = std::max(max_cutoff, std::max(d.cutoff, c.cutoff));
    const double gap = std::max(std::abs(d.h1 - b.min), std::abs(c.h1 - b.min));
    worst = std::max(worst, gap);
    if (!(d.S == b.argmin) || !(c.S == b.argmin) || gap > 1e-12) ++mismatches;
  }
  return {mismatches == 0 && max_cutoff <= 500,
          "100 eps in [eps_v(10), eps_v(5)]: " + std::to_string(mismatches) +
              " mismatches, worst |h1 gap| " + fmt(worst, 3) + ", largest cutoff " +
              fmt(max_cutoff, 4)};
}

// 7. h1 <= h1_hat <= h1_hat_plus and 0.99 <= h1 <= B + 0.01 on the asymptotic window.
Outcome sandwich_bounds() {
  const auto& m = shallit_model();
  const auto [lo, hi] = m.default_window();
  const auto grid = log_grid(lo, hi, 2000);
  const auto scan = h1_scan(m, grid, {lo, hi});
  const double B = m.constants().B;
  // h1 and h1_hat coincide when S is a convergent; they are evaluated by two
  // different formulas, so equality holds to rounding only.
  const double rounding = 1e-13;
  int order = 0, range = 0;
  double hmin = 1e300, hmax = 0, worst = 0;
  for (const auto& r : scan.rows) {
    const double h = r.dominance.h1;
    hmin = std::min(hmin, h);
    hmax = std::max(hmax, h);
    const double v = std::max(h - r.h1_hat, r.h1_hat - r.h1_hat_plus) / r.h1_hat_plus;
    worst = std::max(worst, v);
    if (v > rounding) ++order;
    if (h < 0.99 || h > B + 0.01) ++range;
  }
  return {order == 0 && range == 0,
          "2000 eps in [" + fmt(lo, 4) + ", " + fmt(hi, 4) + "]: " + std::to_string(order) +
              " order violations (largest excess " + fmt(worst, 3) + "), h1 in [" + fmt(hmin, 6) + ", " + fmt(hmax, 6) + "], B=" +
              fmt(B, 6)};
}

// 8. M(theta) vs central differences, 200 dominant harmonics, 100 random theta.
Outcome gradient_check() {
  ModelParams params;
  params.phases = PhasePolicy::Random;
  params.seed = 20240611;
  const SplittingModel m(make_frequency(OmegaSpec::shallit(8), 60), params);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi);
  double worst = 0;
  std::string detail;
  for (int n : {6, 9, 12}) {
    const double eps = m.eps_of_convergent(n);
    const auto set = top_harmonics(m, eps, 200);
    std::int64_t kmax = 1;
    for (const auto& h : set.terms) kmax = std::max(kmax, h.k.l1());
    const double step = 1e-3 / static_cast<double>(kmax);
    for (int i = 0; i < 100 / 3 + (n == 6); ++i) {
      const std::array<double, 2> th{angle(rng), angle(rng)};
      const auto f = melnikov_field(th, set);
      const auto g = oracle::finite_difference_gradient(th, set, step);
      const double err = std::hypot(f.M[0] - g[0], f.M[1] - g[1]) / std::hypot(f.M[0], f.M[1]);
      worst = std::max(worst, err);
    }
    detail += "eps_v(" + std::to_string(n) + "): " + std::to_string(set.terms.size()) +
              " terms, |k|max " + std::to_string(kmax) + "; ";
  }
  return {worst <= 1e-6, detail + "100 theta, worst relative error " + fmt(worst, 3)};
}

// 9. max|M| on a 512x512 grid vs |S| L_S, within the second sum.
Outcome dominance_of_maximum() {
  const auto& m = shallit_model();
  const auto [lo, hi] = m.default_window();
  const auto grid = log_grid(lo, hi, 10);
  int failures = 0;
  double worst_ratio_dev = 0, max_r = 0;
  for (double eps : grid) {
    const auto set = dominant_truncation(m, eps);
    const auto g = field_grid_maximum(set, 512);
    const auto ss = second_sum_estimate(set);
    const double s = static_cast<double>(set.S.l1());
    const double rounding = 16 * std::numeric_limits<double>::epsilon();
    const double r = ss.ratio();
    const double dev = std::abs(g.max_abs_M / s - 1);
    worst_ratio_dev = std::max(worst_ratio_dev, dev);
    max_r = std::max(max_r, r);
    if (std::abs(g.max_abs_M - s) > s * r + s * rounding) ++failures;
    if (dev > r + rounding) ++failures;
  }
  return {failures == 0, "10 eps, grid 512^2: worst |max|M|/(|S|L_S) - 1| = " +
                             fmt(worst_ratio_dev, 3) + ", largest spillover r = " + fmt(max_r, 3) +
                             ", " + std::to_string(failures) + " failures"};
}

// 10. h1(eps; rho' = 2) = h1(4 eps; rho = 1).
Outcome rho_covariance() {
  const auto& m1 = shallit_model();
  const auto m2 = m1.with_rho(2.0);
  const auto [lo, hi] = m2.default_window();
  const auto grid = log_grid(lo, hi, 300);
  double worst = 0;
  for (double eps : grid) {
    const double a = dominant_harmonics(m2, eps).h1;
    const double b = dominant_harmonics(m1, 4 * eps).h1;
    worst = std::max(worst, std::abs(a - b));
  }
  return {worst <= 1e-6, "300 eps, worst |h1(eps;2) - h1(4 eps;1)| = " + fmt(worst, 3)};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {"continued_fraction_prefix", continued_fraction_prefix},
      {"constants_reproduction", constants_reproduction},
      {"bnum_reproduction", bnum_reproduction},
      {"markoff_sandwich", markoff_sandwich},
      {"residue_oracle", residue_oracle},
      {"lattice_oracle", lattice_oracle},
      {"sandwich_bounds", sandwich_bounds},
      {"gradient_check", gradient_check},
      {"dominance_of_maximum", dominance_of_maximum},
      {"rho_covariance", rho_covariance},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-10)")->check(CLI::Range(1, 10));
  app.add_option("--cli", cli_path, "path of the nctsplit executable")->required();
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  for (std::size_t i = 0; i < criteria().size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    const auto& c = criteria()[i];
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "criterion " << i + 1 << " " << c.name << ": " << (o.pass ? "PASS" : "FAIL")
              << " -- " << o.detail << std::endl;
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
