#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "nct/dominance.hpp"

namespace nct {

struct Harmonic {
  IntVec2 k;
  double beta = 0;   ///< exponent beta_k(eps)
  double log_L = 0;  ///< log L_k(eps)
  double phase = 0;  ///< sigma_k
};

/// Finite harmonic set of the Melnikov potential at one eps. Coefficients are
/// stored relative to the dominant one: L_k = exp(log_scale) * exp(log_L - log_scale).
struct HarmonicSet {
  double eps = 0;
  IntVec2 S;
  double log_scale = 0;  ///< log L_S
  std::vector<Harmonic> terms;  ///< sorted by decreasing L_k; S is terms[0]
  /// Bound on sum_{k excluded} |k| L_k, relative to |S| L_S.
  double tail_bound_rel = 0;

  double relative_L(std::size_t i) const;
};

/// All harmonics with beta_k <= beta_S + margin, plus a rigorous bound on the
/// excluded ones. margin = 40 keeps every L_k above ~1e-17 L_S.
HarmonicSet dominant_truncation(const SplittingModel& model, double eps, double margin = 40.0);

/// The `count` harmonics with the largest L_k.
HarmonicSet top_harmonics(const SplittingModel& model, double eps, std::size_t count);

/// Truncation to the listed harmonics only (no tail accounting).
HarmonicSet explicit_truncation(const SplittingModel& model, double eps,
                                const std::vector<IntVec2>& ks);

struct FieldValue {
  double L = 0;               ///< L(theta) / L_S
  std::array<double, 2> M{};  ///< M(theta) / L_S
  double log_scale = 0;       ///< log L_S
};

/// L(theta) = sum L_k cos(<k,theta> - sigma_k), M = grad L.
FieldValue melnikov_field(std::array<double, 2> theta, const HarmonicSet& set);

struct GridMaximum {
  double max_abs_M = 0;  ///< max |M|_1 / L_S over the grid
  int i = 0;
  int j = 0;
};

/// max |M(theta)| over theta = 2 pi (i, j) / n, with exact integer phases.
GridMaximum field_grid_maximum(const HarmonicSet& set, int n);

struct SecondSum {
  IntVec2 S;
  double truncated_rel = 0;  ///< sum_{k != S in set} |k| L_k / (|S| L_S)
  double tail_rel = 0;       ///< bound on the excluded part, same units
  double log_sum = 0;        ///< log of the absolute sum (truncated + tail)

  double ratio() const { return truncated_rel + tail_rel; }
};

SecondSum second_sum_estimate(const HarmonicSet& set);

struct LowerBound {
  double eps = 0;
  double mu = 0;
  double h1 = 0;
  IntVec2 S;
  double log10_estimate = 0;  ///< (mu / sqrt eps) exp(-C0 h1 / eps^{1/4})
  double log10_floor = 0;     ///< (mu / sqrt eps) exp(-C / eps^{1/4})
  double log10_dominant = 0;  ///< mu |S| L_S
  Scientific estimate;
  Scientific floor;
};

LowerBound lower_bound_estimate(const SplittingModel& model, double eps);

}  // namespace nct
