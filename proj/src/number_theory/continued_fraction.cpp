#include "nct/continued_fraction.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "nct/errors.hpp"

namespace nct {

PartialQuotients::PartialQuotients(std::vector<std::int64_t> quotients,
                                   int certified_depth)
    : quotients_(std::move(quotients)), certified_depth_(certified_depth) {
  if (certified_depth_ < 0 ||
      static_cast<std::size_t>(certified_depth_) > quotients_.size()) {
    throw DomainError("certified depth exceeds number of quotients");
  }
  for (auto a : quotients_) {
    if (a < 1) throw DomainError("partial quotients must be positive");
  }
}

std::int64_t PartialQuotients::at(int n) const {
  if (n < 1 || n > static_cast<int>(quotients_.size())) {
    throw DomainError("partial quotient index " + std::to_string(n) +
                      " out of range");
  }
  return quotients_[static_cast<std::size_t>(n - 1)];
}

std::int64_t PartialQuotients::max_certified() const {
  if (certified_depth_ == 0) return 0;
  return *std::max_element(quotients_.begin(),
                           quotients_.begin() + certified_depth_);
}

std::array<mpz_class, 2> Mat2::apply(const mpz_class& x,
                                     const mpz_class& y) const {
  return {m[0] * x + m[1] * y, m[2] * x + m[3] * y};
}

Mat2 Mat2::identity() {
  Mat2 r;
  r.m = {1, 0, 0, 1};
  return r;
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
  Mat2 r;
  r.m[0] = a.m[0] * b.m[0] + a.m[1] * b.m[2];
  r.m[1] = a.m[0] * b.m[1] + a.m[1] * b.m[3];
  r.m[2] = a.m[2] * b.m[0] + a.m[3] * b.m[2];
  r.m[3] = a.m[2] * b.m[1] + a.m[3] * b.m[3];
  return r;
}

Mat2 quotient_matrix(std::int64_t a) {
  Mat2 r;
  r.m = {mpz_class(static_cast<long>(a)), 1, 1, 0};
  return r;
}

Mat2 quotient_matrix_inverse(std::int64_t a) {
  Mat2 r;
  r.m = {0, 1, 1, mpz_class(-static_cast<long>(a))};
  return r;
}

std::vector<std::int64_t> rational_continued_fraction(const mpq_class& x,
                                                      int max_terms) {
  if (!(x > 0 && x < 1)) {
    throw DomainError("continued fraction input must lie in (0, 1)");
  }
  std::vector<std::int64_t> out;
  // Euclid on num/den: x = num/den, 1/x = den/num = a + r/num.
  mpz_class num = x.get_num();
  mpz_class den = x.get_den();
  mpz_class a;
  mpz_class r;
  while (num != 0 && static_cast<int>(out.size()) < max_terms) {
    mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), den.get_mpz_t(), num.get_mpz_t());
    if (!a.fits_slong_p()) break;
    out.push_back(a.get_si());
    den = num;
    num = r;
  }
  return out;
}

namespace {

// Number of terms in the full expansion, saturated at `cap`.
int expansion_length(const mpq_class& x, int cap) {
  mpz_class num = x.get_num();
  mpz_class den = x.get_den();
  mpz_class r;
  int len = 0;
  while (num != 0 && len < cap) {
    mpz_fdiv_r(r.get_mpz_t(), den.get_mpz_t(), num.get_mpz_t());
    den = num;
    num = r;
    ++len;
  }
  return len;
}

}  // namespace

PartialQuotients expand_continued_fraction(const CertifiedReal& x,
                                           int depth_limit) {
  if (depth_limit < 1) throw DomainError("depth limit must be >= 1");
  if (!(x.lo() > 0 && x.hi() < 1)) {
    throw DomainError("enclosure must satisfy 0 < lo < hi < 1");
  }
  const int want = depth_limit + 1;
  auto lo_cf = rational_continued_fraction(x.lo(), want);
  auto hi_cf = rational_continued_fraction(x.hi(), want);
  const int lo_len = expansion_length(x.lo(), want);
  const int hi_len = expansion_length(x.hi(), want);

  int prefix = 0;
  const int limit = std::min({static_cast<int>(lo_cf.size()),
                              static_cast<int>(hi_cf.size()), depth_limit});
  while (prefix < limit && lo_cf[prefix] == hi_cf[prefix]) ++prefix;
  // An index that is the last term of a terminating endpoint sits on the
  // boundary of its cylinder and is not certified for the irrational inside.
  prefix = std::min({prefix, lo_len - 1, hi_len - 1});
  if (prefix < 0) prefix = 0;
  if (prefix == 0) {
    throw PrecisionError(
        "insufficient precision: partial quotient 1 is not certified "
        "(enclosure endpoints disagree at index 1)");
  }
  std::vector<std::int64_t> q(lo_cf.begin(), lo_cf.begin() + prefix);
  return PartialQuotients(std::move(q), prefix);
}

CertifiedReal shallit_number(int K) {
  if (K < 1) throw DomainError("Shallit truncation order must be >= 1");
  if (K > 20) throw DomainError("Shallit truncation order above 20 is not supported");
  // lo = 2 * sum_{k=1..K} 2^{-2^k} = sum 2^{1 - 2^k}; common denominator 2^{2^K}.
  const unsigned long top = 1UL << K;
  mpz_class num = 0;
  for (int k = 1; k <= K; ++k) {
    mpz_class term;
    mpz_ui_pow_ui(term.get_mpz_t(), 2, top - (1UL << k) + 1);
    num += term;
  }
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, top);
  mpq_class lo(num, den);
  lo.canonicalize();
  mpz_class tail_den;
  mpz_ui_pow_ui(tail_den.get_mpz_t(), 2, 2 * top);
  mpq_class tail(4, tail_den);
  tail.canonicalize();
  return CertifiedReal(lo, lo + tail);
}

std::vector<Convergent> convergents(const PartialQuotients& pq, int N) {
  if (N < -1) throw DomainError("convergent index must be >= -1");
  if (N > pq.certified_depth()) {
    throw DepthError("convergent index " + std::to_string(N) +
                         " exceeds certified depth " +
                         std::to_string(pq.certified_depth()),
                     N);
  }
  std::vector<Convergent> out;
  out.reserve(static_cast<std::size_t>(N + 2));
  out.push_back({-1, 1, 0});
  if (N >= 0) out.push_back({0, 0, 1});
  for (int n = 1; n <= N; ++n) {
    const auto& c1 = out[static_cast<std::size_t>(n)];      // n-1
    const auto& c2 = out[static_cast<std::size_t>(n - 1)];  // n-2
    mpz_class a(static_cast<long>(pq.at(n)));
    Convergent next{n, a * c1.p + c2.p, a * c1.q + c2.q};
    out.push_back(std::move(next));
  }
  return out;
}

std::vector<ResonantVector> resonant_convergents(const PartialQuotients& pq,
                                                 int N) {
  auto conv = convergents(pq, N);
  std::vector<ResonantVector> out;
  out.reserve(conv.size());
  for (const auto& c : conv) out.push_back({c.n, -c.p, c.q});
  return out;
}

UnimodularProducts unimodular_products(const PartialQuotients& pq, int n) {
  if (n < 1 || n > pq.certified_depth()) {
    throw DepthError("product index " + std::to_string(n) +
                         " outside certified range 1.." +
                         std::to_string(pq.certified_depth()),
                     n);
  }
  UnimodularProducts r{Mat2::identity(), Mat2::identity()};
  for (int m = 1; m <= n; ++m) {
    r.forward = r.forward * quotient_matrix(pq.at(m));
    r.inverse = r.inverse * quotient_matrix_inverse(pq.at(m));
  }
  return r;
}

CertifiedReal cylinder_enclosure(std::span<const std::int64_t> quotients) {
  if (quotients.empty()) throw DomainError("empty quotient list");
  auto value = [&](std::int64_t last_bump) {
    // Evaluate [a_1, ..., a_n + bump] from the bottom up.
    mpq_class x = 0;
    for (std::size_t i = quotients.size(); i-- > 0;) {
      mpq_class a(static_cast<long>(quotients[i]));
      if (i + 1 == quotients.size()) a += static_cast<long>(last_bump);
      x = 1 / (a + x);
    }
    x.canonicalize();
    return x;
  };
  mpq_class x0 = value(0);
  mpq_class x1 = value(1);
  if (x0 < x1) return CertifiedReal(x0, x1);
  return CertifiedReal(x1, x0);
}

}  // namespace nct
