#pragma once

#include <gmpxx.h>

#include <utility>

#include "nct/certified_real.hpp"
#include "nct/continued_fraction.hpp"

namespace nct {

/// Inclusive index range [first, last] of convergents.
struct IndexWindow {
  int first = 0;
  int last = 0;

  int size() const { return last - first + 1; }
  bool contains(int n) const { return first <= n && n <= last; }
};

/// Upper half [floor(N/2), N] of a certified range 1..N.
IndexWindow upper_half_window(int certified_depth);

/// gamma_k = |<k, omega>| * |k|_1 with omega = (1, Omega).
Enclosure gamma_numerator(const mpz_class& k1, const mpz_class& k2,
                          const CertifiedReal& omega);

struct NuValue {
  Enclosure nu;  ///< q * ||q Omega||
  mpz_class p;   ///< rint(q Omega)
};

NuValue nu_numerator(const mpz_class& q, const CertifiedReal& omega);

/// Windowed estimates of the asymptotic Diophantine constants.
struct DiophantineLimits {
  double nu_star_est = 0;    ///< min of nu_{q_n} over the window
  double nu_limsup_est = 0;  ///< max of nu_{q_n} over the window
  double gamma_star_est = 0; ///< nu_star_est * (1 + Omega)
  double E = 0;              ///< sqrt(limsup / liminf)
  std::int64_t M = 0;        ///< 1 + max certified partial quotient
  IndexWindow window;
  int argmin_n = 0;
  int argmax_n = 0;
};

DiophantineLimits estimate_diophantine_limits(const PartialQuotients& pq,
                                              const CertifiedReal& omega,
                                              IndexWindow window);

}  // namespace nct
