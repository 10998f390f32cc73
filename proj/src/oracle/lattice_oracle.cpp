#include <algorithm>
#include <cmath>

#include "nct/diophantine.hpp"
#include "nct/errors.hpp"
#include "nct/oracle.hpp"
#include "nct/parallel.hpp"

namespace nct::oracle {

namespace {

bool before(double va, IntVec2 a, double vb, IntVec2 b) {
  if (va != vb) return va < vb;
  if (a.l1() != b.l1()) return a.l1() < b.l1();
  return a.k2 != b.k2 ? a.k2 < b.k2 : a.k1 < b.k1;
}

void offer(BruteForceMin& r, IntVec2 k, double v) {
  if (r.scanned == 0 || before(v, k, r.min, r.argmin)) {
    r.runner_up = r.argmin;
    r.second = r.min;
    r.argmin = k;
    r.min = v;
  } else if (r.scanned == 1 || before(v, k, r.second, r.runner_up)) {
    r.runner_up = k;
    r.second = v;
  }
  ++r.scanned;
}

}  // namespace

LatticeTable::LatticeTable(const SplittingModel& model, std::int64_t K_max) : K_max_(K_max) {
  if (K_max < 1) throw DomainError("K_max must be >= 1");
  for (std::int64_t k2 = 0; k2 <= K_max; ++k2) {
    const std::int64_t r = K_max - k2;
    for (std::int64_t k1 = -r; k1 <= r; ++k1) {
      IntVec2 k{k1, k2};
      if (k.is_canonical()) ks_.push_back(k);
    }
  }
  eps_k_.resize(ks_.size());
  sqrt_gt_.resize(ks_.size());
  const auto& c = model.constants();
  const auto& omega = model.frequency().omega;
  parallel_for(ks_.size(), [&](std::size_t i) {
    const IntVec2 k = ks_[i];
    const double gamma = gamma_numerator(mpz_class(static_cast<long>(k.k1)),
                                         mpz_class(static_cast<long>(k.k2)), omega)
                             .mid();
    const double n = static_cast<double>(k.l1());
    const double gt = gamma / c.gamma_star;
    eps_k_[i] = c.D0 * gt * gt / (n * n * n * n);
    sqrt_gt_[i] = std::sqrt(gt);
  });
}

BruteForceMin LatticeTable::min_g(double eps) const {
  if (!(eps > 0)) throw DomainError("eps must be positive");
  const std::size_t chunks = 64;
  std::vector<BruteForceMin> parts(chunks);
  const std::size_t n = ks_.size();
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t begin = n * c / chunks;
    const std::size_t end = n * (c + 1) / chunks;
    for (std::size_t i = begin; i < end; ++i) {
      const double ratio = std::sqrt(std::sqrt(eps / eps_k_[i]));
      offer(parts[c], ks_[i], 0.5 * sqrt_gt_[i] * (ratio + 1 / ratio));
    }
  });
  BruteForceMin out;
  for (const auto& p : parts) {
    if (p.scanned >= 1) offer(out, p.argmin, p.min);
    if (p.scanned >= 2) offer(out, p.runner_up, p.second);
  }
  out.scanned = n;
  return out;
}

BruteForceMin brute_force_min_g(const SplittingModel& model, double eps, std::int64_t K_max) {
  return LatticeTable(model, K_max).min_g(eps);
}

NuSweep brute_force_nu_scan(const Frequency& frequency, std::int64_t Q,
                            std::optional<std::int64_t> q_min) {
  if (Q < 2) throw DomainError("nu sweep needs Q >= 2");
  NuSweep s;
  s.Q = Q;
  s.q_min = q_min.value_or(static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(Q)))));

  std::vector<std::int64_t> denominators;
  const int depth = frequency.quotients.certified_depth();
  for (const auto& c : convergents(frequency.quotients, depth)) {
    if (c.q > Q) break;
    denominators.push_back(c.q.get_si());
  }
  if (convergents(frequency.quotients, depth).back().q <= Q) {
    throw DepthError("certified convergents do not reach q = " + std::to_string(Q), depth + 1);
  }

  const mpq_class half(1, 2);
  std::vector<std::optional<NuHit>> slots(static_cast<std::size_t>(Q));
  parallel_for(static_cast<std::size_t>(Q), [&](std::size_t i) {
    const std::int64_t q = static_cast<std::int64_t>(i) + 1;
    const auto nu = nu_numerator(mpz_class(static_cast<long>(q)), frequency.omega);
    if (nu.nu.hi < half) {
      slots[i] = NuHit{q, nu.p.get_si(), nu.nu.mid(), false};
    } else if (nu.nu.lo < half) {
      throw PrecisionError("nu_q straddles 1/2 at q = " + std::to_string(q));
    }
  });
  bool first = true;
  for (auto& slot : slots) {
    if (!slot) continue;
    NuHit h = *slot;
    h.is_convergent =
        std::find(denominators.begin(), denominators.end(), h.q) != denominators.end();
    s.all_convergents = s.all_convergents && h.is_convergent;
    if (h.q >= s.q_min) {
      s.window_min = first ? h.nu : std::min(s.window_min, h.nu);
      s.window_max = first ? h.nu : std::max(s.window_max, h.nu);
      first = false;
    }
    s.hits.push_back(h);
  }
  return s;
}

ResonanceReport periodic_cf_resonance_check(const std::vector<std::int64_t>& period, int N) {
  const int m = static_cast<int>(period.size());
  if (m == 0) throw DomainError("empty period");
  if (N < m) throw DomainError("resonance check needs N >= m");
  for (auto a : period) {
    if (a < 1) throw DomainError("partial quotients must be positive");
  }
  std::vector<std::int64_t> a;
  while (static_cast<int>(a.size()) < N) a.insert(a.end(), period.begin(), period.end());
  a.resize(static_cast<std::size_t>(N));
  PartialQuotients pq(a, N);
  const auto v = resonant_convergents(pq, N);  // n = -1..N

  ResonanceReport r;
  r.m = m;
  r.U = Mat2::identity();
  for (int i = 0; i < m; ++i) r.U = r.U * quotient_matrix_inverse(period[static_cast<std::size_t>(i)]);
  const int sign = (m % 2 == 0) ? 1 : -1;
  for (int n = 0; n + m <= N; ++n) {
    const auto& vn = v[static_cast<std::size_t>(n + 1)];
    const auto& vm = v[static_cast<std::size_t>(n + m + 1)];
    const auto lhs = r.U.apply(vn.k1, vn.k2);
    ++r.checked;
    if (lhs[0] != sign * vm.k1 || lhs[1] != sign * vm.k2) {
      r.passed = false;
      if (!r.first_failure) r.first_failure = n;
    }
  }
  return r;
}

std::vector<std::int64_t> surd_continued_fraction(std::int64_t P, std::int64_t D, std::int64_t Q,
                                                  int terms) {
  if (D <= 0 || Q == 0) throw DomainError("surd needs D > 0 and Q != 0");
  mpz_class root;
  mpz_class d(static_cast<long>(D));
  mpz_sqrt(root.get_mpz_t(), d.get_mpz_t());
  if (root * root == d) throw DomainError("D must not be a perfect square");
  mpz_class p(static_cast<long>(P)), q(static_cast<long>(Q));
  if ((d - p * p) % q != 0) throw DomainError("surd needs Q | D - P^2");

  // floor((p + sqrt d) / q) for q of either sign.
  auto floor_surd = [&](const mpz_class& pp, const mpz_class& qq) {
    mpz_class num = pp + (qq > 0 ? root : root + 1);
    mpz_class out;
    mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), qq.get_mpz_t());
    return out;
  };

  std::vector<std::int64_t> out;
  for (int i = 0; i <= terms; ++i) {
    const mpz_class a = floor_surd(p, q);
    if (i > 0) {
      if (!a.fits_slong_p() || a < 1) throw PrecisionError("surd quotient out of range");
      out.push_back(a.get_si());
    }
    p = a * q - p;
    q = (d - p * p) / q;
  }
  return out;
}

std::array<double, 2> finite_difference_gradient(std::array<double, 2> theta,
                                                 const HarmonicSet& set, double step) {
  if (!(step > 0)) throw DomainError("finite-difference step must be positive");
  std::array<double, 2> g{};
  for (int i = 0; i < 2; ++i) {
    auto plus = theta;
    auto minus = theta;
    plus[static_cast<std::size_t>(i)] += step;
    minus[static_cast<std::size_t>(i)] -= step;
    g[static_cast<std::size_t>(i)] =
        (melnikov_field(plus, set).L - melnikov_field(minus, set).L) / (2 * step);
  }
  return g;
}

}  // namespace nct::oracle
