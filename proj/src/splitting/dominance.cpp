#include "nct/dominance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nct/errors.hpp"
#include "nct/parallel.hpp"

namespace nct {

using std::numbers::pi;

BetaNorm::BetaNorm(const SmallDivisor& divisor, double rho, double eps)
    : divisor_(&divisor), rho_(rho), eps_(eps), weight_(0.5 * pi / std::sqrt(eps)) {
  if (!(rho > 0)) throw DomainError("rho must be > 0");
  if (!(eps > 0)) throw DomainError("eps must be > 0");
}

double BetaNorm::operator()(IntVec2 k) const {
  return rho_ * static_cast<double>(k.l1()) + weight_ * divisor_->abs_value(k);
}

namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kInt64Safe = 9.0e18;

// Integers around a real breakpoint, clamped to the 64-bit range.
void push_around(std::vector<std::int64_t>& out, double t) {
  if (!std::isfinite(t)) return;
  t = std::clamp(t, -kInt64Safe / 4, kInt64Safe / 4);
  const auto f = static_cast<std::int64_t>(std::floor(t));
  for (std::int64_t d = -1; d <= 2; ++d) out.push_back(f + d);
}

// Breakpoints of x -> N(x u + w): zeros of each absolute-value term.
std::vector<double> breakpoints(const BetaNorm& norm, IntVec2 u, IntVec2 w) {
  std::vector<double> t;
  if (u.k1 != 0) t.push_back(-static_cast<double>(w.k1) / static_cast<double>(u.k1));
  if (u.k2 != 0) t.push_back(-static_cast<double>(w.k2) / static_cast<double>(u.k2));
  const double du = norm.divisor().signed_value(u);
  const double dw = w.is_zero() ? 0.0 : norm.divisor().signed_value(w);
  t.push_back(-dw / du);
  return t;
}

// Integer x minimising N(x u + w); ties go to the smaller |x|.
std::int64_t best_shift(const BetaNorm& norm, IntVec2 u, IntVec2 w) {
  std::vector<std::int64_t> cand{0};
  for (double t : breakpoints(norm, u, w)) push_around(cand, t);
  std::int64_t best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  for (auto x : cand) {
    IntVec2 v = x * u + w;
    if (v.is_zero()) continue;
    double val = norm(v);
    if (val < best_val || (val == best_val && std::abs(x) < std::abs(best))) {
      best = x;
      best_val = val;
    }
  }
  return best;
}

bool better(double a, IntVec2 ka, double b, IntVec2 kb) {
  if (!std::isfinite(b)) return true;
  if (std::abs(a - b) <= kTieTolerance * std::max(a, b)) return ka.l1() < kb.l1();
  return a < b;
}

}  // namespace

ReducedBasis reduce_basis(const BetaNorm& norm) {
  ReducedBasis r{{1, 0}, {0, 1}, 0, 0};
  r.n1 = norm(r.b1);
  r.n2 = norm(r.b2);
  if (r.n2 < r.n1) {
    std::swap(r.b1, r.b2);
    std::swap(r.n1, r.n2);
  }
  for (int iter = 0; iter < 512; ++iter) {
    const std::int64_t mu = best_shift(norm, r.b1, r.b2);
    r.b2 = mu * r.b1 + r.b2;
    r.n2 = norm(r.b2);
    if (r.n2 < r.n1) {
      std::swap(r.b1, r.b2);
      std::swap(r.n1, r.n2);
    } else {
      return r;
    }
  }
  throw PrecisionError("lattice reduction did not terminate");
}

double line_distance(const BetaNorm& norm, const ReducedBasis& basis) {
  const IntVec2 u = basis.b1;
  const IntVec2 w = basis.b2;
  const double du = norm.divisor().signed_value(u);
  const double dw = norm.divisor().signed_value(w);
  auto at = [&](double x) {
    return norm.rho() * (std::abs(x * u.k1 + w.k1) + std::abs(x * u.k2 + w.k2)) +
           norm.divisor_weight() * std::abs(x * du + dw);
  };
  double best = std::numeric_limits<double>::infinity();
  for (double t : breakpoints(norm, u, w)) best = std::min(best, at(t));
  return best * (1 - 1e-12);
}

std::vector<IntVec2> enumerate_below(const BetaNorm& norm, const ReducedBasis& basis,
                                     double bound) {
  std::vector<IntVec2> out;
  if (!(bound >= basis.n1)) return out;
  const double m = line_distance(norm, basis);
  const auto ymax = static_cast<std::int64_t>(std::floor(bound / m));
  for (std::int64_t y = -ymax; y <= ymax; ++y) {
    const IntVec2 w = y * basis.b2;
    std::int64_t x0 = y == 0 ? 1 : best_shift(norm, basis.b1, w);
    auto visit = [&](std::int64_t x) {
      IntVec2 v = x * basis.b1 + w;
      if (v.is_zero()) return true;
      if (norm(v) > bound) return false;
      if (v.is_canonical()) out.push_back(v);
      return true;
    };
    if (y == 0) {
      // Multiples of b1: N(x b1) = |x| n1.
      for (std::int64_t x = 1; static_cast<double>(x) * basis.n1 <= bound; ++x) {
        IntVec2 v = x * basis.b1;
        out.push_back(v.canonical());
      }
      continue;
    }
    if (!visit(x0)) continue;
    for (std::int64_t x = x0 - 1; visit(x); --x) {
    }
    for (std::int64_t x = x0 + 1; visit(x); ++x) {
    }
  }
  return out;
}

double lattice_count_bound(const ReducedBasis& basis, double line_dist, double t) {
  return (2 * t / line_dist + 1) * (2 * t / basis.n1 + 1);
}

namespace {

struct Candidate {
  double value = std::numeric_limits<double>::infinity();
  IntVec2 k;
};

// Keeps the two smallest norms over distinct canonical harmonics.
struct TopTwo {
  Candidate first;
  Candidate second;

  void consider(double value, IntVec2 k) {
    k = k.canonical();
    if (k == first.k) return;
    if (k == second.k) return;
    if (better(value, k, first.value, first.k)) {
      second = first;
      first = {value, k};
    } else if (better(value, k, second.value, second.k)) {
      second = {value, k};
    }
  }
};

TopTwo search_reduction(const BetaNorm& norm, std::optional<IntVec2>& tie) {
  ReducedBasis r = reduce_basis(norm);
  TopTwo top;
  top.consider(r.n1, r.b1);
  // Vectors attaining the first minimum lie among b1, b2, b2 +- b1; any
  // vector independent of b1 has norm >= n2, multiples of b1 have >= 2 n1.
  top.consider(r.n2, r.b2);
  top.consider(norm(r.b2 - r.b1), r.b2 - r.b1);
  top.consider(norm(r.b2 + r.b1), r.b2 + r.b1);
  top.consider(2 * r.n1, 2 * r.b1);
  if (std::abs(top.second.value - top.first.value) <= kTieTolerance * top.first.value) {
    tie = top.second.k;
  }
  return top;
}

TopTwo search_cutoff(const SplittingModel& model, const BetaNorm& norm,
                     std::optional<IntVec2>& tie) {
  TopTwo top;
  top.consider(norm({1, 0}), {1, 0});
  top.consider(norm({2, 0}), {2, 0});
  for (const auto& p : model.convergent_profiles()) top.consider(norm(p.profile.k), p.profile.k);

  const double rho = norm.rho();
  const bool rounding_only = norm.divisor_weight() >= rho;
  auto cutoff = [&] { return top.second.value / rho; };
  if (cutoff() > 5e8) {
    throw DomainError("cutoff scan infeasible at eps = " + std::to_string(norm.eps()) +
                      " (cutoff " + std::to_string(cutoff()) + "); use lattice reduction");
  }
  const SmallDivisor& div = norm.divisor();
  for (std::int64_t q = 1; static_cast<double>(q) <= cutoff(); ++q) {
    const std::int64_t p0 = div.floor_multiple(q);
    std::int64_t p_lo = p0 - 1;
    std::int64_t p_hi = p0 + 2;
    if (!rounding_only) {
      const auto span = static_cast<std::int64_t>(std::floor(cutoff())) - q;
      p_lo = -span;
      p_hi = span;
    }
    for (std::int64_t p = p_lo; p <= p_hi; ++p) {
      IntVec2 k{-p, q};
      if (static_cast<double>(k.l1()) > cutoff()) continue;
      top.consider(norm(k), k);
    }
  }
  if (std::abs(top.second.value - top.first.value) <= kTieTolerance * top.first.value) {
    tie = top.second.k;
  }
  return top;
}

}  // namespace

DominanceReport dominant_harmonics(const SplittingModel& model, double eps, SearchPolicy policy) {
  model.require_covered(eps);
  const BetaNorm norm(model.divisor(), model.params().rho, eps);
  DominanceReport rep;
  rep.eps = eps;
  TopTwo top = policy == SearchPolicy::LatticeReduction ? search_reduction(norm, rep.tie)
                                                        : search_cutoff(model, norm, rep.tie);
  const double scale = std::sqrt(std::sqrt(eps)) / model.constants().C0;
  rep.S = top.first.k;
  rep.h1 = top.first.value * scale;
  rep.runner_up = top.second.k;
  rep.h2 = top.second.value * scale;
  rep.cutoff = top.first.value / norm.rho();
  if (auto n = model.convergent_index(rep.S)) {
    rep.S_is_convergent = true;
    rep.convergent_index = *n;
  }
  const double rho = model.params().rho;
  const auto& div = model.divisor();
  const double log_s = melnikov_coefficient(rep.S, eps, rho, div).log +
                       std::log(static_cast<double>(rep.S.l1()));
  const double log_r = melnikov_coefficient(rep.runner_up, eps, rho, div).log +
                       std::log(static_cast<double>(rep.runner_up.l1()));
  rep.spillover = std::exp(log_r - log_s);
  return rep;
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0 && hi > lo)) throw DomainError("grid requires 0 < min < max");
  if (count < 2) throw DomainError("grid needs at least 2 points");
  std::vector<double> g(static_cast<std::size_t>(count));
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < count; ++i) {
    g[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (count - 1));
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

ScanRow scan_row(const SplittingModel& model, double eps, SearchPolicy policy) {
  ScanRow row;
  row.eps = eps;
  row.dominance = dominant_harmonics(model, eps, policy);
  const double e2 = model.constants().E * model.constants().E;
  row.h1_hat = std::numeric_limits<double>::infinity();
  row.h1_hat_plus = std::numeric_limits<double>::infinity();
  for (const auto& p : model.convergent_profiles()) {
    const double g = g_of(p.profile, eps);
    const double gp = g_function(eps, p.profile.eps_k, e2);
    row.g_hat.push_back(g);
    row.g_hat_plus.push_back(gp);
    row.h1_hat = std::min(row.h1_hat, g);
    row.h1_hat_plus = std::min(row.h1_hat_plus, gp);
  }
  return row;
}

namespace {

double h_of(const SplittingModel& model, IntVec2 k, double eps) {
  const BetaNorm norm(model.divisor(), model.params().rho, eps);
  return norm(k) * std::sqrt(std::sqrt(eps)) / model.constants().C0;
}

// Refines max h1 over the rows in the window at every change of S.
BNumResult refine_bound(const SplittingModel& model, std::span<const ScanRow> rows,
                        std::pair<double, double> window) {
  BNumResult out;
  out.value = -std::numeric_limits<double>::infinity();
  const ScanRow* prev = nullptr;
  for (const auto& row : rows) {
    if (row.eps < window.first || row.eps > window.second) continue;
    if (row.dominance.h1 > out.value) {
      out.value = row.dominance.h1;
      out.eps_at = row.eps;
    }
    if (prev && !(prev->dominance.S == row.dominance.S)) {
      ++out.crossovers;
      const IntVec2 a = prev->dominance.S;
      const IntVec2 b = row.dominance.S;
      double lo = std::log(prev->eps);
      double hi = std::log(row.eps);
      const double sign_lo = h_of(model, a, prev->eps) - h_of(model, b, prev->eps);
      for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double e = std::exp(mid);
        const double d = h_of(model, a, e) - h_of(model, b, e);
        if ((d <= 0) == (sign_lo <= 0)) lo = mid;
        else hi = mid;
      }
      const double e = std::exp(0.5 * (lo + hi));
      const double h = dominant_harmonics(model, e).h1;
      if (h > out.value) {
        out.value = h;
        out.eps_at = e;
      }
    }
    prev = &row;
  }
  return out;
}

}  // namespace

ScanResult h1_scan(const SplittingModel& model, std::span<const double> grid,
                   std::pair<double, double> window, SearchPolicy policy) {
  if (grid.size() < 2) throw DomainError("grid needs at least 2 points");
  for (double e : grid) model.require_covered(e);
  ScanResult res;
  res.window = window;
  res.rows.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { res.rows[i] = scan_row(model, grid[i], policy); });
  std::vector<ScanRow> sorted = res.rows;
  std::sort(sorted.begin(), sorted.end(),
            [](const ScanRow& x, const ScanRow& y) { return x.eps < y.eps; });
  res.b_num = refine_bound(model, sorted, window);
  return res;
}

BNumResult numerical_h1_bound(const SplittingModel& model, double lo, double hi, int points) {
  auto grid = log_grid(lo, hi, points);
  return h1_scan(model, grid, {lo, hi}).b_num;
}

}  // namespace nct
