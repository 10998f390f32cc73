#pragma once

#include <cstdint>
#include <string>

#include "nct/lattice.hpp"

namespace nct {

enum class PhasePolicy { Zero, Random };

/// Perturbation parameters. mu is never independent: mu = eps^p.
struct ModelParams {
  double rho = 1.0;         ///< analyticity width of f
  double p_exponent = 3.5;  ///< mu = eps^p, p > 3
  PhasePolicy phases = PhasePolicy::Zero;
  std::uint64_t seed = 0;

  void validate() const;
  /// sigma_k in [0, 2 pi); a pure function of (seed, k) when random.
  double phase(IntVec2 k) const;
  double mu(double eps) const;
};

/// A positive number carried by its natural logarithm.
struct LogValue {
  double log = 0;

  double value() const;
  double log10() const;
};

/// Decimal (mantissa, exponent) pair, 1 <= |mantissa| < 10.
struct Scientific {
  double mantissa = 0;
  long exponent = 0;

  static Scientific from_log10(double log10_value);
  std::string str(int digits = 6) const;
};

/// L_k = 2 pi |a| e^{-rho |k|} / sinh(pi |a| / 2), a = <k, omega> / sqrt(eps).
LogValue melnikov_coefficient(IntVec2 k, double eps, double rho,
                              const SmallDivisor& divisor);

/// Same formula for a given divisor a = <k, omega_eps> and decay rho |k|.
LogValue melnikov_coefficient_from_divisor(double a, double rho_norm);

struct ExponentPair {
  double alpha = 0;  ///< 4 pi gamma_k / (|k| sqrt eps)
  double beta = 0;   ///< rho |k| + pi gamma_k / (2 |k| sqrt eps)
};

ExponentPair exponent_decomposition(IntVec2 k, double eps, double rho,
                                    const SmallDivisor& divisor);

/// G(eps; X, Y) = (sqrt(Y) / 2) ((eps/X)^{1/4} + (X/eps)^{1/4}).
double g_function(double eps, double X, double Y);

}  // namespace nct
