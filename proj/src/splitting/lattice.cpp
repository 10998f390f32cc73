#include "nct/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "nct/errors.hpp"

namespace nct {

namespace {

[[noreturn]] void overflow() {
  throw PrecisionError("harmonic vector exceeds the 63-bit lattice range");
}

std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) overflow();
  return r;
}

std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) overflow();
  return r;
}

}  // namespace

std::int64_t IntVec2::l1() const {
  if (k1 == INT64_MIN || k2 == INT64_MIN) overflow();
  return add(std::abs(k1), std::abs(k2));
}

IntVec2 IntVec2::canonical() const {
  if (is_canonical() || is_zero()) return *this;
  return -*this;
}

IntVec2 operator+(IntVec2 a, IntVec2 b) { return {add(a.k1, b.k1), add(a.k2, b.k2)}; }
IntVec2 operator-(IntVec2 a, IntVec2 b) { return {add(a.k1, -b.k1), add(a.k2, -b.k2)}; }
IntVec2 operator*(std::int64_t s, IntVec2 a) { return {mul(s, a.k1), mul(s, a.k2)}; }

std::string to_string(IntVec2 k) {
  return "(" + std::to_string(k.k1) + ", " + std::to_string(k.k2) + ")";
}

SmallDivisor::SmallDivisor(const CertifiedReal& omega) : omega_(omega.midpoint()) {
  // Enough fraction bits to carry the enclosure, capped to keep products small.
  bits_ = static_cast<int>(std::clamp<long>(omega.precision_bits() + 8, 64, 2048));
  mpz_class scale = 1;
  scale <<= bits_;
  mpq_class lo = omega.lo() * scale;
  mpq_class hi = omega.hi() * scale;
  mpz_fdiv_q(lo_fix_.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  mpz_cdiv_q(hi_fix_.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
}

double SmallDivisor::signed_value(IntVec2 k) const {
  if (k.k2 == 0) return static_cast<double>(k.k1);
  thread_local mpz_class a;
  thread_local mpz_class b;
  thread_local mpz_class base;
  base = static_cast<long>(k.k1);
  base <<= bits_;
  const mpz_class& lo_mul = k.k2 > 0 ? lo_fix_ : hi_fix_;
  const mpz_class& hi_mul = k.k2 > 0 ? hi_fix_ : lo_fix_;
  mpz_mul_si(a.get_mpz_t(), lo_mul.get_mpz_t(), static_cast<long>(k.k2));
  mpz_mul_si(b.get_mpz_t(), hi_mul.get_mpz_t(), static_cast<long>(k.k2));
  a += base;
  b += base;
  const int sa = sgn(a);
  if (sa == 0 || sa != sgn(b)) {
    throw PrecisionError("insufficient precision: <k, omega> not separated from 0 for k = " +
                         to_string(k));
  }
  a += b;
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, a.get_mpz_t());
  return std::ldexp(mant, static_cast<int>(exp) - bits_ - 1);
}

std::int64_t SmallDivisor::floor_multiple(std::int64_t q) const {
  if (q < 0) throw DomainError("floor_multiple requires q >= 0");
  thread_local mpz_class a;
  thread_local mpz_class b;
  mpz_mul_si(a.get_mpz_t(), lo_fix_.get_mpz_t(), static_cast<long>(q));
  mpz_mul_si(b.get_mpz_t(), hi_fix_.get_mpz_t(), static_cast<long>(q));
  mpz_fdiv_q_2exp(a.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(bits_));
  mpz_fdiv_q_2exp(b.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(bits_));
  if (a != b) {
    throw PrecisionError("insufficient precision: floor(q Omega) ambiguous for q = " +
                         std::to_string(q));
  }
  return a.get_si();
}

}  // namespace nct
