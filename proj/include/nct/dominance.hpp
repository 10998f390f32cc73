#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nct/splitting_model.hpp"

namespace nct {

/// beta_k(eps) = rho |k|_1 + (pi / (2 sqrt eps)) |<k, omega>|, a norm on R^2.
/// Since beta_k = C0 g_k(eps) / eps^{1/4}, minimising g_k over the lattice is
/// a shortest-vector problem for this norm.
class BetaNorm {
 public:
  BetaNorm(const SmallDivisor& divisor, double rho, double eps);

  double operator()(IntVec2 k) const;
  double rho() const { return rho_; }
  double divisor_weight() const { return weight_; }
  double eps() const { return eps_; }
  const SmallDivisor& divisor() const { return *divisor_; }

 private:
  const SmallDivisor* divisor_;
  double rho_;
  double eps_;
  double weight_;
};

/// Basis with N(b1) <= N(b2) <= N(b2 +- b1); N(b1), N(b2) are the successive
/// minima of the lattice Z^2 in the norm N.
struct ReducedBasis {
  IntVec2 b1;
  IntVec2 b2;
  double n1 = 0;
  double n2 = 0;
};

/// Generalised Gauss reduction of the standard basis.
ReducedBasis reduce_basis(const BetaNorm& norm);

/// min over real x of N(x b1 + b2).
double line_distance(const BetaNorm& norm, const ReducedBasis& basis);

/// Every canonical nonzero k with N(k) <= bound.
std::vector<IntVec2> enumerate_below(const BetaNorm& norm, const ReducedBasis& basis,
                                     double bound);

/// Upper bound on #{k in Z^2 : N(k) <= t}.
double lattice_count_bound(const ReducedBasis& basis, double line_dist, double t);

enum class SearchPolicy {
  LatticeReduction,  ///< exact successive minima by basis reduction
  CutoffScan,        ///< scan q up to the certified truncation beta_best / rho
};

struct DominanceReport {
  double eps = 0;
  IntVec2 S;                 ///< dominant harmonic (argmin g_k)
  double h1 = 0;             ///< g_S(eps)
  IntVec2 runner_up;         ///< argmin over k != +-S
  double h2 = 0;             ///< second minimum
  std::optional<IntVec2> tie;  ///< second harmonic within 1e-12 of h1
  bool S_is_convergent = false;
  int convergent_index = 0;  ///< n with S = v(n) when S_is_convergent
  double spillover = 0;      ///< |R| L_R / (|S| L_S) for the runner-up R
  double cutoff = 0;         ///< certified bound on |k|_1 of any competitor
};

DominanceReport dominant_harmonics(const SplittingModel& model, double eps,
                                   SearchPolicy policy = SearchPolicy::LatticeReduction);

/// count points log-spaced over [lo, hi] (inclusive).
std::vector<double> log_grid(double lo, double hi, int count);

struct ScanRow {
  double eps = 0;
  DominanceReport dominance;
  double h1_hat = 0;        ///< min_n g_{v(n)}(eps)
  double h1_hat_plus = 0;   ///< min_n G(eps; eps_{v(n)}, E^2)
  std::vector<double> g_hat;       ///< per n = 1..N
  std::vector<double> g_hat_plus;  ///< per n = 1..N
};

struct BNumResult {
  double value = 0;      ///< max h1 over the window (grid and crossovers)
  double eps_at = 0;
  int crossovers = 0;    ///< dominant-harmonic changes located in the window
};

struct ScanResult {
  std::vector<ScanRow> rows;
  std::pair<double, double> window;
  BNumResult b_num;
};

ScanRow scan_row(const SplittingModel& model, double eps,
                 SearchPolicy policy = SearchPolicy::LatticeReduction);

/// Evaluates every curve on the grid (in parallel) and B_num = max h1 over
/// the rows inside `window`, refined at each crossover between grid points.
ScanResult h1_scan(const SplittingModel& model, std::span<const double> grid,
                   std::pair<double, double> window,
                   SearchPolicy policy = SearchPolicy::LatticeReduction);

/// B_num over [lo, hi] on a log grid of `points` plus crossover refinement.
BNumResult numerical_h1_bound(const SplittingModel& model, double lo, double hi, int points);

}  // namespace nct
