#pragma once

#include <gmpxx.h>

#include <string>

namespace nct {

/// Closed rational interval [lo, hi], lo <= hi. Used for values that may be
/// exact (zero width), e.g. gamma_k for k = (1, 0).
struct Enclosure {
  mpq_class lo;
  mpq_class hi;

  double mid() const;
  double width() const;
  bool contains(const mpq_class& x) const { return lo <= x && x <= hi; }
};

/// Enclosure of an irrational number with exact rational endpoints and
/// strictly positive width. This is the only representation of Omega.
class CertifiedReal {
 public:
  CertifiedReal(mpq_class lo, mpq_class hi);

  const mpq_class& lo() const { return lo_; }
  const mpq_class& hi() const { return hi_; }
  mpq_class width() const { return hi_ - lo_; }
  double midpoint() const;
  bool contains(const mpq_class& x) const { return lo_ <= x && x <= hi_; }

  /// floor(-log2(width)), i.e. the number of correct binary digits.
  long precision_bits() const;

 private:
  mpq_class lo_;
  mpq_class hi_;
};

/// Parses "p/q", an integer, or a plain decimal such as "0.6328" exactly.
mpq_class parse_rational(const std::string& text);

std::string to_string(const mpz_class& z);

}  // namespace nct
