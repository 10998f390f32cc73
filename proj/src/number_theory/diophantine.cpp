#include "nct/diophantine.hpp"

#include <cmath>
#include <string>

#include "nct/errors.hpp"

namespace nct {

IndexWindow upper_half_window(int certified_depth) {
  if (certified_depth < 1) throw DomainError("empty certified range");
  return {std::max(1, certified_depth / 2), certified_depth};
}

Enclosure gamma_numerator(const mpz_class& k1, const mpz_class& k2,
                          const CertifiedReal& omega) {
  if (k1 == 0 && k2 == 0) throw DomainError("gamma_k undefined for k = 0");
  mpq_class a = k1 + k2 * omega.lo();
  mpq_class b = k1 + k2 * omega.hi();
  if (sgn(a) != sgn(b) || sgn(a) == 0) {
    throw PrecisionError(
        "insufficient precision: <k, omega> straddles 0 for k = (" +
        k1.get_str() + ", " + k2.get_str() + ")");
  }
  mpq_class lo = abs(a);
  mpq_class hi = abs(b);
  if (hi < lo) std::swap(lo, hi);
  mpz_class norm = abs(k1) + abs(k2);
  return {lo * norm, hi * norm};
}

NuValue nu_numerator(const mpz_class& q, const CertifiedReal& omega) {
  if (q < 1) throw DomainError("nu_q requires q >= 1");
  mpq_class x_lo = q * omega.lo();
  mpq_class x_hi = q * omega.hi();
  // rint(x) = floor(x + 1/2); irrational x never sits on a half-integer.
  auto rint = [](const mpq_class& x) {
    mpq_class shifted = x + mpq_class(1, 2);
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
    return r;
  };
  mpz_class p = rint(x_lo);
  if (p != rint(x_hi)) {
    throw PrecisionError("insufficient precision: rint(q Omega) ambiguous for q = " +
                         q.get_str());
  }
  mpq_class d_lo = x_lo - p;
  mpq_class d_hi = x_hi - p;
  if (sgn(d_lo) != sgn(d_hi) || sgn(d_lo) == 0) {
    throw PrecisionError("insufficient precision: ||q Omega|| not separated from 0 for q = " +
                         q.get_str());
  }
  mpq_class lo = abs(d_lo) * q;
  mpq_class hi = abs(d_hi) * q;
  if (hi < lo) std::swap(lo, hi);
  return {{lo, hi}, p};
}

DiophantineLimits estimate_diophantine_limits(const PartialQuotients& pq,
                                              const CertifiedReal& omega,
                                              IndexWindow window) {
  if (window.first < 1 || window.last > pq.certified_depth() ||
      window.first > window.last) {
    throw DomainError("window [" + std::to_string(window.first) + ", " +
                      std::to_string(window.last) +
                      "] must be a nonempty subrange of [1, " +
                      std::to_string(pq.certified_depth()) + "]");
  }
  auto conv = convergents(pq, window.last);
  DiophantineLimits out;
  out.window = window;
  out.nu_star_est = INFINITY;
  out.nu_limsup_est = -INFINITY;
  for (int n = window.first; n <= window.last; ++n) {
    double nu = nu_numerator(conv[static_cast<std::size_t>(n + 1)].q, omega).nu.mid();
    if (nu < out.nu_star_est) {
      out.nu_star_est = nu;
      out.argmin_n = n;
    }
    if (nu > out.nu_limsup_est) {
      out.nu_limsup_est = nu;
      out.argmax_n = n;
    }
  }
  out.E = std::sqrt(out.nu_limsup_est / out.nu_star_est);
  out.gamma_star_est = out.nu_star_est * (1.0 + omega.midpoint());
  out.M = 1 + pq.max_certified();
  return out;
}

}  // namespace nct
