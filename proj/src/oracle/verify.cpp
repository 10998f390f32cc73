#include "nct/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nct/dominance.hpp"
#include "nct/oracle.hpp"
#include "nct/parallel.hpp"

namespace nct {

namespace {

std::string describe_k(IntVec2 k, double eps) {
  std::ostringstream s;
  s << "k=" << to_string(k) << " eps=" << eps;
  return s.str();
}

class Recorder {
 public:
  explicit Recorder(const std::function<void(const CheckResult&)>& report) : report_(report) {}

  void add(CheckResult r) {
    if (report_) report_(r);
    results_.push_back(std::move(r));
  }
  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  const std::function<void(const CheckResult&)>& report_;
  std::vector<CheckResult> results_;
};

// Worst relative gap between the quadrature oracle and the residue formula.
CheckResult quadrature_check(const SplittingModel& model, int max_l1) {
  std::vector<std::pair<IntVec2, double>> cases;
  for (double eps : {0.1, 1.0}) {
    for (std::int64_t k2 = 0; k2 <= max_l1; ++k2) {
      for (std::int64_t k1 = -(max_l1 - k2); k1 <= max_l1 - k2; ++k1) {
        IntVec2 k{k1, k2};
        if (k.is_canonical()) cases.emplace_back(k, eps);
      }
    }
  }
  std::vector<double> rel(cases.size());
  oracle::QuadratureSpec spec;
  spec.T = 40;
  spec.panels = 256;
  const double rho = model.params().rho;
  parallel_for(cases.size(), [&](std::size_t i) {
    const auto [k, eps] = cases[i];
    const auto q = oracle::quadrature_melnikov_coefficient(k, eps, rho, model.divisor(), spec);
    const double exact = melnikov_coefficient(k, eps, rho, model.divisor()).value();
    rel[i] = std::abs(q.value - exact) / exact;
  });
  const auto worst = std::max_element(rel.begin(), rel.end()) - rel.begin();
  const auto [k, eps] = cases[static_cast<std::size_t>(worst)];
  return {"quadrature_vs_residue", rel[static_cast<std::size_t>(worst)] <= 1e-8,
          rel[static_cast<std::size_t>(worst)], 0, 1e-8,
          "worst " + describe_k(k, eps) + ", " + std::to_string(cases.size()) + " cases"};
}

CheckResult beta_g_check(const SplittingModel& model, std::pair<double, double> window) {
  const auto grid = log_grid(window.first, window.second, 25);
  std::vector<IntVec2> ks{{1, 0}, {0, 1}, {-1, 1}, {3, 5}};
  for (const auto& p : model.convergent_profiles()) ks.push_back(p.profile.k);
  const auto& c = model.constants();
  double worst = 0;
  std::string where;
  for (double eps : grid) {
    for (auto k : ks) {
      const auto ab = exponent_decomposition(k, eps, model.params().rho, model.divisor());
      const auto prof = harmonic_profile(k, c, model.divisor());
      const double g = g_of(prof, eps);
      const double rel = std::abs(ab.beta - c.C0 * g / std::sqrt(std::sqrt(eps))) / ab.beta;
      if (rel > worst) {
        worst = rel;
        where = describe_k(k, eps);
      }
    }
  }
  return {"beta_g_identity", worst <= 1e-10, worst, 0, 1e-10, "worst " + where};
}

CheckResult lattice_check(const SplittingModel& model, std::int64_t K_max, int points) {
  const int n_hi = std::min(10, model.depth());
  const double lo = model.eps_of_convergent(n_hi);
  const double hi = model.eps_of_convergent(std::min(5, model.depth()));
  const auto grid = log_grid(lo, hi, points);
  const oracle::LatticeTable table(model, K_max);
  int compared = 0;
  int mismatches = 0;
  int skipped = 0;
  double worst = 0;
  std::string detail;
  for (double eps : grid) {
    const auto d = dominant_harmonics(model, eps);
    if (d.cutoff > static_cast<double>(K_max)) {
      ++skipped;
      continue;
    }
    const auto b = table.min_g(eps);
    ++compared;
    const double gap = std::abs(d.h1 - b.min);
    worst = std::max(worst, gap);
    if (!(d.S == b.argmin) || gap > 1e-12 || b.min < d.h1 - 1e-12) {
      if (mismatches++ == 0) {
        std::ostringstream m;
        m << "first mismatch at eps=" << eps << ": certified " << to_string(d.S) << " h1=" << d.h1
          << " vs exhaustive " << to_string(b.argmin) << " min=" << b.min;
        detail = m.str();
      }
    }
  }
  if (detail.empty()) {
    detail = std::to_string(compared) + " eps compared, " + std::to_string(skipped) +
             " skipped (cutoff > K_max)";
  }
  return {"lattice_oracle_equivalence", mismatches == 0 && compared > 0, worst, 0, 1e-12, detail};
}

CheckResult nu_sweep_check(const SplittingModel& model, std::int64_t Q) {
  const auto& f = model.frequency();
  const auto conv = convergents(f.quotients, f.quotients.certified_depth());
  if (conv.back().q <= Q) Q = std::max<std::int64_t>(2, conv.back().q.get_si() - 1);
  const auto sweep = oracle::brute_force_nu_scan(f, Q);
  std::int64_t bad = 0;
  for (const auto& h : sweep.hits) {
    if (!h.is_convergent) bad = h.q;
  }
  return {"nu_sweep_convergents", sweep.all_convergents, static_cast<double>(sweep.hits.size()),
          0, 0,
          sweep.all_convergents
              ? std::to_string(sweep.hits.size()) + " q <= " + std::to_string(Q) +
                    " with nu_q < 1/2, all convergent denominators"
              : "q = " + std::to_string(bad) + " has nu_q < 1/2 but is not a convergent"};
}

CheckResult resonance_check(const SplittingModel& model) {
  const auto period = model.frequency().period();
  const int N = std::max(20, static_cast<int>(period.size()) * 4);
  const auto r = oracle::periodic_cf_resonance_check(period, N);
  return {"periodic_resonance", r.passed, static_cast<double>(r.checked), 0, 0,
          r.passed ? "U v(n) = (-1)^m v(n+m) for " + std::to_string(r.checked) + " n"
                   : "fails first at n = " + std::to_string(*r.first_failure)};
}

// gamma_{v(n)} = nu_{q_n} (1 + p_n / q_n) differs from nu_{q_n} (1 + Omega) by a
// factor 1 +- O(1 / q_n^2), so gamma~_{v(n)} <= E^2 only holds up to that
// factor at finite n. The check runs over eps governed by the Diophantine
// window, with that factor as tolerance.
CheckResult sandwich_check(const SplittingModel& model, int points) {
  const auto& w = model.limits().window;
  const std::pair<double, double> range{model.eps_floor(), model.eps_of_convergent(w.first)};
  const auto conv = convergents(model.frequency().quotients, w.first);
  const double q = conv.back().q.get_d();
  const double tol = 1e-12 + 1 / (q * q);
  const auto grid = log_grid(range.first, range.second, points);
  const auto scan = h1_scan(model, grid, range);
  int violations = 0;
  double worst = 0;
  for (const auto& row : scan.rows) {
    const double v = std::max(row.dominance.h1 - row.h1_hat, row.h1_hat - row.h1_hat_plus) /
                     row.h1_hat_plus;
    worst = std::max(worst, v);
    if (v > tol || row.dominance.h1 > row.dominance.h2 * (1 + 1e-12)) ++violations;
  }
  std::ostringstream d;
  d << violations << " violations over " << grid.size() << " eps in [" << range.first << ", "
    << range.second << "]";
  return {"h1_sandwich", violations == 0, worst, 0, tol, d.str()};
}

}  // namespace

std::vector<CheckResult> run_verification(const SplittingModel& model,
                                          const VerifyOptions& options,
                                          const std::function<void(const CheckResult&)>& report) {
  Recorder rec(report);
  const auto window = model.default_window();
  rec.add(quadrature_check(model, options.quadrature_max_l1));
  rec.add(beta_g_check(model, window));
  rec.add(lattice_check(model, options.lattice_K_max, options.lattice_points));
  rec.add(nu_sweep_check(model, options.nu_sweep_Q));
  if (model.frequency().purely_periodic()) rec.add(resonance_check(model));
  rec.add(sandwich_check(model, options.sandwich_points));
  return rec.take();
}

}  // namespace nct
