#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <cstdlib>
#include <string>

#include "nct/certified_real.hpp"

namespace nct {

/// Integer harmonic k = (k1, k2). Arithmetic is overflow-checked.
struct IntVec2 {
  std::int64_t k1 = 0;
  std::int64_t k2 = 0;

  std::int64_t l1() const;
  bool is_zero() const { return k1 == 0 && k2 == 0; }
  /// Representative of {k, -k} with k2 > 0, or k2 == 0 and k1 > 0.
  IntVec2 canonical() const;
  bool is_canonical() const { return k2 > 0 || (k2 == 0 && k1 > 0); }

  friend bool operator==(const IntVec2&, const IntVec2&) = default;
  friend IntVec2 operator+(IntVec2 a, IntVec2 b);
  friend IntVec2 operator-(IntVec2 a, IntVec2 b);
  friend IntVec2 operator*(std::int64_t s, IntVec2 a);
  IntVec2 operator-() const { return {-k1, -k2}; }
};

std::string to_string(IntVec2 k);

/// Evaluates the small divisor <k, (1, Omega)> = k1 + k2 * Omega for 64-bit
/// harmonics from a fixed-point copy of the enclosure of Omega. The sign is
/// certified; the magnitude is returned to double precision.
class SmallDivisor {
 public:
  explicit SmallDivisor(const CertifiedReal& omega);

  /// k1 + k2 Omega. Throws PrecisionError when the enclosure cannot separate
  /// the value from zero.
  double signed_value(IntVec2 k) const;
  double abs_value(IntVec2 k) const { return std::abs(signed_value(k)); }

  /// floor(q Omega) for q >= 0, certified.
  std::int64_t floor_multiple(std::int64_t q) const;

  double omega() const { return omega_; }
  int fraction_bits() const { return bits_; }

 private:
  mpz_class lo_fix_;
  mpz_class hi_fix_;
  int bits_ = 0;
  double omega_ = 0;
};

}  // namespace nct
