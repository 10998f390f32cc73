#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "nct/certified_real.hpp"

namespace nct {

/// Partial quotients a_1..a_n of Omega = [a_1, a_2, ...] (a_0 = 0 implicit)
/// and the depth up to which they are proven correct.
class PartialQuotients {
 public:
  PartialQuotients() = default;
  PartialQuotients(std::vector<std::int64_t> quotients, int certified_depth);

  /// Quotient a_n, 1-based.
  std::int64_t at(int n) const;
  int certified_depth() const { return certified_depth_; }
  std::span<const std::int64_t> quotients() const { return quotients_; }
  std::int64_t max_certified() const;

 private:
  std::vector<std::int64_t> quotients_;
  int certified_depth_ = 0;
};

/// Principal convergent p_n / q_n, n >= -1.
struct Convergent {
  int n;
  mpz_class p;
  mpz_class q;
};

/// Resonant convergent v(n) = (-p_n, q_n).
struct ResonantVector {
  int n;
  mpz_class k1;
  mpz_class k2;
};

/// Exact 2x2 integer matrix, row-major.
struct Mat2 {
  std::array<mpz_class, 4> m{0, 0, 0, 0};

  const mpz_class& operator()(int r, int c) const { return m[2 * r + c]; }
  mpz_class& operator()(int r, int c) { return m[2 * r + c]; }
  mpz_class det() const { return m[0] * m[3] - m[1] * m[2]; }
  std::array<mpz_class, 2> apply(const mpz_class& x, const mpz_class& y) const;

  static Mat2 identity();
  friend Mat2 operator*(const Mat2& a, const Mat2& b);
  friend bool operator==(const Mat2& a, const Mat2& b) { return a.m == b.m; }
};

struct UnimodularProducts {
  Mat2 forward;  ///< A_1 ... A_n
  Mat2 inverse;  ///< A_1^{-1} ... A_n^{-1}
};

/// Full (terminating) continued fraction of a rational x in (0, 1), at most
/// max_terms entries. Quotients that do not fit in int64 end the expansion.
std::vector<std::int64_t> rational_continued_fraction(const mpq_class& x,
                                                      int max_terms);

/// Longest prefix shared by the expansions of both endpoints, excluding the
/// terminating quotient of either endpoint. Throws PrecisionError naming the
/// first disagreeing index if nothing can be certified.
PartialQuotients expand_continued_fraction(const CertifiedReal& x,
                                           int depth_limit);

/// Enclosure of 2 * sum_{k>=1} 2^{-2^k} from the first K terms plus the
/// geometric tail bound 4 * 2^{-2^{K+1}}.
CertifiedReal shallit_number(int K);

/// Convergents for n = -1..N (N+2 entries, index n at position n+1).
std::vector<Convergent> convergents(const PartialQuotients& pq, int N);
std::vector<ResonantVector> resonant_convergents(const PartialQuotients& pq,
                                                 int N);

UnimodularProducts unimodular_products(const PartialQuotients& pq, int n);

/// A_m = [[a, 1], [1, 0]] and its inverse [[0, 1], [1, -a]].
Mat2 quotient_matrix(std::int64_t a);
Mat2 quotient_matrix_inverse(std::int64_t a);

/// Cylinder set of a finite quotient list: the closed interval between
/// [a_1..a_n] and [a_1..a_n + 1].
CertifiedReal cylinder_enclosure(std::span<const std::int64_t> quotients);

}  // namespace nct
