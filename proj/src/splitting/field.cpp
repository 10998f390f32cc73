#include "nct/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nct/errors.hpp"
#include "nct/parallel.hpp"

namespace nct {

using std::numbers::pi;

double HarmonicSet::relative_L(std::size_t i) const {
  return std::exp(terms[i].log_L - log_scale);
}

namespace {

double log_add(double a, double b) {
  if (a == -INFINITY) return b;
  if (b == -INFINITY) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

Harmonic make_harmonic(const SplittingModel& model, const BetaNorm& norm, IntVec2 k, double eps) {
  return {k, norm(k),
          melnikov_coefficient(k, eps, model.params().rho, model.divisor()).log,
          model.params().phase(k)};
}

// log of sum_{beta_k > T} |k| L_k. Uses |k| <= beta / rho and
// L_k <= (4 + 8 beta) e^{-beta}, with lattice counts on unit shells.
double log_tail_above(const ReducedBasis& basis, double line_dist, double rho, double T) {
  double acc = -INFINITY;
  for (int j = 0; j < 400; ++j) {
    const double top = T + j + 1;
    const double term = std::log(lattice_count_bound(basis, line_dist, top)) +
                        std::log(top / rho) + std::log(4 + 8 * top) - (T + j);
    acc = log_add(acc, term);
    if (j > 8 && term < acc - 40) break;
  }
  return acc;
}

// S first, then decreasing L_k.
void order_terms(std::vector<Harmonic>& terms, IntVec2 S) {
  std::sort(terms.begin(), terms.end(), [&](const Harmonic& a, const Harmonic& b) {
    const bool as = a.k == S;
    const bool bs = b.k == S;
    if (as != bs) return as;
    if (a.log_L != b.log_L) return a.log_L > b.log_L;
    return a.k.l1() < b.k.l1();
  });
}

struct Enumerated {
  IntVec2 S;
  BetaNorm norm;
  ReducedBasis basis;
  double line_dist;
  double beta_S;
};

Enumerated prepare(const SplittingModel& model, double eps) {
  const auto dom = dominant_harmonics(model, eps);
  BetaNorm norm(model.divisor(), model.params().rho, eps);
  ReducedBasis basis = reduce_basis(norm);
  const double m = line_distance(norm, basis);
  return {dom.S, norm, basis, m, norm(dom.S)};
}

HarmonicSet build(const SplittingModel& model, const Enumerated& en, double eps, double T,
                  std::size_t keep) {
  auto ks = enumerate_below(en.norm, en.basis, T);
  HarmonicSet set;
  set.eps = eps;
  set.S = en.S;
  for (auto k : ks) set.terms.push_back(make_harmonic(model, en.norm, k, eps));
  order_terms(set.terms, en.S);
  if (set.terms.empty() || !(set.terms.front().k == en.S)) {
    throw PrecisionError("dominant harmonic missing from enumeration");
  }
  set.log_scale = set.terms.front().log_L;
  const double log_s = set.log_scale + std::log(static_cast<double>(en.S.l1()));
  double log_tail = log_tail_above(en.basis, en.line_dist, model.params().rho, T);
  for (std::size_t i = keep; i < set.terms.size(); ++i) {
    const auto& h = set.terms[i];
    log_tail = log_add(log_tail, h.log_L + std::log(static_cast<double>(h.k.l1())));
  }
  if (keep < set.terms.size()) set.terms.resize(keep);
  set.tail_bound_rel = std::exp(log_tail - log_s);
  return set;
}

}  // namespace

HarmonicSet dominant_truncation(const SplittingModel& model, double eps, double margin) {
  if (!(margin > 0)) throw DomainError("truncation margin must be positive");
  auto en = prepare(model, eps);
  return build(model, en, eps, en.beta_S + margin, std::numeric_limits<std::size_t>::max());
}

HarmonicSet top_harmonics(const SplittingModel& model, double eps, std::size_t count) {
  if (count == 0) throw DomainError("harmonic count must be positive");
  auto en = prepare(model, eps);
  double margin = 8;
  for (int iter = 0; iter < 40; ++iter, margin *= 1.5) {
    const double T = en.beta_S + margin;
    auto ks = enumerate_below(en.norm, en.basis, T);
    if (ks.size() >= count + count / 4 + 8) return build(model, en, eps, T, count);
  }
  throw PrecisionError("could not enumerate the requested number of harmonics");
}

HarmonicSet explicit_truncation(const SplittingModel& model, double eps,
                                const std::vector<IntVec2>& ks) {
  if (ks.empty()) throw DomainError("empty harmonic list");
  const auto dom = dominant_harmonics(model, eps);
  BetaNorm norm(model.divisor(), model.params().rho, eps);
  HarmonicSet set;
  set.eps = eps;
  set.S = dom.S;
  bool has_s = false;
  for (auto k : ks) {
    k = k.canonical();
    if (k.is_zero()) throw DomainError("k = 0 is not a harmonic");
    has_s = has_s || k == dom.S;
    set.terms.push_back(make_harmonic(model, norm, k, eps));
  }
  if (!has_s) set.S = set.terms.front().k;
  order_terms(set.terms, set.S);
  set.log_scale = set.terms.front().log_L;
  return set;
}

FieldValue melnikov_field(std::array<double, 2> theta, const HarmonicSet& set) {
  FieldValue f;
  f.log_scale = set.log_scale;
  for (std::size_t i = 0; i < set.terms.size(); ++i) {
    const auto& h = set.terms[i];
    const double w = set.relative_L(i);
    const double arg = static_cast<double>(h.k.k1) * theta[0] +
                       static_cast<double>(h.k.k2) * theta[1] - h.phase;
    f.L += w * std::cos(arg);
    const double s = w * std::sin(arg);
    f.M[0] -= s * static_cast<double>(h.k.k1);
    f.M[1] -= s * static_cast<double>(h.k.k2);
  }
  return f;
}

GridMaximum field_grid_maximum(const HarmonicSet& set, int n) {
  if (n < 2) throw DomainError("grid needs n >= 2");
  const auto N = static_cast<std::size_t>(n);
  std::vector<double> cos_t(N), sin_t(N);
  for (std::size_t m = 0; m < N; ++m) {
    cos_t[m] = std::cos(2 * pi * static_cast<double>(m) / n);
    sin_t[m] = std::sin(2 * pi * static_cast<double>(m) / n);
  }
  // sin(2 pi m / n) is not exact for m = n/4 etc. in floating point; the
  // quarter points are pinned so a lone harmonic reaches its extremum.
  if (n % 4 == 0) {
    cos_t[N / 4] = 0;
    sin_t[N / 4] = 1;
    cos_t[N / 2] = -1;
    sin_t[N / 2] = 0;
    cos_t[3 * N / 4] = 0;
    sin_t[3 * N / 4] = -1;
  }
  struct Term {
    std::int64_t r1, r2;
    double w1, w2, cs, sn;
  };
  std::vector<Term> terms;
  for (std::size_t i = 0; i < set.terms.size(); ++i) {
    const auto& h = set.terms[i];
    const double w = set.relative_L(i);
    terms.push_back({((h.k.k1 % n) + n) % n, ((h.k.k2 % n) + n) % n,
                     w * static_cast<double>(h.k.k1), w * static_cast<double>(h.k.k2),
                     std::cos(h.phase), std::sin(h.phase)});
  }
  std::vector<GridMaximum> per_row(N);
  parallel_for(N, [&](std::size_t i) {
    std::vector<double> mx(N, 0.0), my(N, 0.0);
    for (const auto& t : terms) {
      std::int64_t m = (t.r1 * static_cast<std::int64_t>(i)) % n;
      for (std::size_t j = 0; j < N; ++j) {
        // sin(2 pi m / n - sigma)
        const double s = sin_t[static_cast<std::size_t>(m)] * t.cs - cos_t[static_cast<std::size_t>(m)] * t.sn;
        mx[j] -= t.w1 * s;
        my[j] -= t.w2 * s;
        m += t.r2;
        if (m >= n) m -= n;
      }
    }
    GridMaximum best{-1, static_cast<int>(i), 0};
    for (std::size_t j = 0; j < N; ++j) {
      const double v = std::abs(mx[j]) + std::abs(my[j]);
      if (v > best.max_abs_M) best = {v, static_cast<int>(i), static_cast<int>(j)};
    }
    per_row[i] = best;
  });
  GridMaximum out = per_row.front();
  for (const auto& g : per_row) {
    if (g.max_abs_M > out.max_abs_M) out = g;
  }
  return out;
}

SecondSum second_sum_estimate(const HarmonicSet& set) {
  SecondSum s;
  s.S = set.S;
  const double s_norm = static_cast<double>(set.S.l1());
  // The relative sum underflows when the runner-up is far below S, so the
  // absolute log is accumulated separately.
  std::vector<double> logs;
  for (std::size_t i = 0; i < set.terms.size(); ++i) {
    if (set.terms[i].k == set.S) continue;
    s.truncated_rel += static_cast<double>(set.terms[i].k.l1()) * set.relative_L(i) / s_norm;
    logs.push_back(std::log(static_cast<double>(set.terms[i].k.l1())) + set.terms[i].log_L);
  }
  s.tail_rel = set.tail_bound_rel;
  if (s.tail_rel > 0) logs.push_back(std::log(s.tail_rel * s_norm) + set.log_scale);
  if (logs.empty()) {
    s.log_sum = -std::numeric_limits<double>::infinity();
    return s;
  }
  const double top = *std::max_element(logs.begin(), logs.end());
  double acc = 0;
  for (double l : logs) acc += std::exp(l - top);
  s.log_sum = top + std::log(acc);
  return s;
}

LowerBound lower_bound_estimate(const SplittingModel& model, double eps) {
  const auto dom = dominant_harmonics(model, eps);
  const auto& c = model.constants();
  LowerBound b;
  b.eps = eps;
  b.mu = model.params().mu(eps);
  b.h1 = dom.h1;
  b.S = dom.S;
  const double prefix = model.params().p_exponent * std::log10(eps) - 0.5 * std::log10(eps);
  const double q = std::sqrt(std::sqrt(eps));
  b.log10_estimate = prefix - c.C0 * dom.h1 / q / std::numbers::ln10;
  b.log10_floor = prefix - c.C / q / std::numbers::ln10;
  const auto L = melnikov_coefficient(dom.S, eps, model.params().rho, model.divisor());
  b.log10_dominant = model.params().p_exponent * std::log10(eps) +
                     std::log10(static_cast<double>(dom.S.l1())) + L.log10();
  b.estimate = Scientific::from_log10(b.log10_estimate);
  b.floor = Scientific::from_log10(b.log10_floor);
  return b;
}

}  // namespace nct
