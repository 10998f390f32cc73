#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nct/field.hpp"

// Independent, slow-by-design verifiers. Nothing in the core library calls
// into this header.

namespace nct::oracle {

struct QuadratureSpec {
  double T = 30;     ///< integrate over [-T, T]
  int panels = 64;   ///< minimum composite panels on [0, T]
  int nodes = 16;    ///< Gauss-Legendre nodes per panel
  /// Relative accuracy to demand; a miss throws PrecisionError.
  std::optional<double> target;
};

struct QuadratureResult {
  double value = 0;           ///< e^{-rho |k|} * integral
  double integral = 0;        ///< int_{-T}^{T} 2 sech^2 t cos(a t) dt
  double tail_bound = 0;      ///< 8 e^{-2T}, absolute, on the integral
  double discretization = 0;  ///< |Q(n) - Q(2n)|, absolute, on the integral
  int panels = 0;             ///< panels of the returned (finer) rule

  /// Absolute error bound on the integral.
  double error_bound() const { return tail_bound + discretization; }
};

/// Quadrature of the Melnikov integral for a = <k, omega> / sqrt(eps).
QuadratureResult quadrature_integral(double a, double rho_norm, const QuadratureSpec& spec);

QuadratureResult quadrature_melnikov_coefficient(IntVec2 k, double eps, double rho,
                                                 const SmallDivisor& divisor,
                                                 const QuadratureSpec& spec = {});

/// 2 pi a / sinh(pi a / 2), with the value 4 at a = 0.
double closed_form_integral(double a);

struct BruteForceMin {
  IntVec2 argmin;
  double min = 0;
  IntVec2 runner_up;
  double second = 0;
  std::size_t scanned = 0;
};

/// Table of every canonical k with |k|_1 <= K_max and its gamma_k, built
/// once and reused across eps.
class LatticeTable {
 public:
  LatticeTable(const SplittingModel& model, std::int64_t K_max);

  /// Exhaustive minimum of g_k(eps) = G(eps; eps_k, gamma_tilde_k).
  BruteForceMin min_g(double eps) const;
  std::int64_t K_max() const { return K_max_; }
  std::size_t size() const { return ks_.size(); }

 private:
  std::int64_t K_max_;
  std::vector<IntVec2> ks_;
  std::vector<double> eps_k_;
  std::vector<double> sqrt_gt_;
};

BruteForceMin brute_force_min_g(const SplittingModel& model, double eps, std::int64_t K_max);

struct NuHit {
  std::int64_t q = 0;
  std::int64_t p = 0;
  double nu = 0;
  bool is_convergent = false;
};

struct NuSweep {
  std::int64_t Q = 0;
  std::int64_t q_min = 0;     ///< lower end of the window used for min/max
  std::vector<NuHit> hits;    ///< every q <= Q with nu_q < 1/2
  bool all_convergents = true;
  double window_min = 0;      ///< over hits with q >= q_min
  double window_max = 0;
};

/// Sweeps q = 1..Q. q_min defaults to floor(sqrt(Q)).
NuSweep brute_force_nu_scan(const Frequency& frequency, std::int64_t Q,
                            std::optional<std::int64_t> q_min = std::nullopt);

struct ResonanceReport {
  bool passed = true;
  int m = 0;
  int checked = 0;
  std::optional<int> first_failure;
  Mat2 U;
};

/// Checks U v(n) = (-1)^m v(n + m), n = 0..N-m, for the purely periodic
/// continued fraction with repeating block `period`, U = A_1^{-1}..A_m^{-1}.
ResonanceReport periodic_cf_resonance_check(const std::vector<std::int64_t>& period, int N);

/// Partial quotients of (P + sqrt D) / Q by exact surd arithmetic. Requires
/// Q | D - P^2 and D not a square. The integer part a_0 is dropped.
std::vector<std::int64_t> surd_continued_fraction(std::int64_t P, std::int64_t D, std::int64_t Q,
                                                  int terms);

/// Central differences of L(theta) from melnikov_field.
std::array<double, 2> finite_difference_gradient(std::array<double, 2> theta,
                                                 const HarmonicSet& set, double step);

}  // namespace nct::oracle
