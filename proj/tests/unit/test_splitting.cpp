#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "nct/errors.hpp"
#include "nct/field.hpp"

using namespace nct;
using std::numbers::pi;

namespace {

const SplittingModel& shallit() {
  static const SplittingModel m(make_frequency(OmegaSpec::shallit(8), 60), ModelParams{});
  return m;
}

}  // namespace

TEST_CASE("model parameters are validated") {
  ModelParams p;
  p.rho = 0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p.rho = 1;
  p.p_exponent = 3;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p.p_exponent = 3.5;
  CHECK(p.mu(0.01) == doctest::Approx(std::pow(0.01, 3.5)));
}

TEST_CASE("phases are zero by default and reproducible when random") {
  ModelParams p;
  CHECK(p.phase({3, 5}) == 0);
  p.phases = PhasePolicy::Random;
  p.seed = 42;
  const double a = p.phase({3, 5});
  CHECK(a >= 0);
  CHECK(a < 2 * pi);
  CHECK(p.phase({3, 5}) == a);
  CHECK(p.phase({-3, -5}) == a);
  CHECK(p.phase({3, 4}) != a);
  p.seed = 43;
  CHECK(p.phase({3, 5}) != a);
}

TEST_CASE("melnikov coefficient") {
  const auto& m = shallit();
  const auto& d = m.divisor();
  SUBCASE("small divisor limit") {
    CHECK(melnikov_coefficient_from_divisor(0.0, 2.0).value() == doctest::Approx(4 * std::exp(-2.0)));
    CHECK(melnikov_coefficient_from_divisor(1e-9, 0.0).value() == doctest::Approx(4.0).epsilon(1e-15));
  }
  SUBCASE("closed form at a = 2") {
    CHECK(melnikov_coefficient_from_divisor(2.0, 0.0).value() ==
          doctest::Approx(4 * pi / std::sinh(pi)).epsilon(1e-14));
  }
  SUBCASE("no overflow deep in the asymptotic regime") {
    const auto L = melnikov_coefficient({-5, 8}, 1e-40, 1.0, d);
    CHECK(std::isfinite(L.log));
    CHECK(L.log < -1e8);
  }
  SUBCASE("log L = log alpha - beta up to a factor 1 / (1 - e^{-pi a})") {
    for (double eps : {1.0, 0.1, 1e-3, 1e-6}) {
      for (IntVec2 k : {IntVec2{0, 1}, IntVec2{-1, 2}, IntVec2{-5, 8}, IntVec2{3, 0}}) {
        const auto L = melnikov_coefficient(k, eps, 1.0, d);
        const auto ab = exponent_decomposition(k, eps, 1.0, d);
        const double a = d.abs_value(k) / std::sqrt(eps);
        // L / (alpha e^{-beta}) = 1 / (1 - e^{-pi a}).
        const double gap = L.log - (std::log(ab.alpha) - ab.beta);
        CHECK(std::abs(gap + std::log1p(-std::exp(-pi * a))) <= 1e-15 * std::abs(L.log) + 1e-12);
      }
    }
  }
}

TEST_CASE("exponent decomposition") {
  const auto& m = shallit();
  const auto& c = m.constants();
  const auto& d = m.divisor();
  const double omega = d.omega();
  const double eps = 0.37;
  const auto ab = exponent_decomposition({0, 1}, eps, 1.0, d);
  CHECK(ab.beta == doctest::Approx(1 + pi * omega / (2 * std::sqrt(eps))).epsilon(1e-14));
  CHECK(ab.alpha == doctest::Approx(4 * pi * omega / std::sqrt(eps)).epsilon(1e-14));

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-40, 0);
  for (const auto& p : m.convergent_profiles()) {
    const double e = std::exp(u(rng));
    const auto b = exponent_decomposition(p.profile.k, e, 1.0, d);
    CHECK(std::abs(b.beta - c.C0 * g_of(p.profile, e) / std::sqrt(std::sqrt(e))) <= 1e-12 * b.beta);
    const auto at_min = exponent_decomposition(p.profile.k, p.profile.eps_k, 1.0, d);
    CHECK(at_min.beta == doctest::Approx(c.C0 * std::sqrt(p.profile.gamma_tilde) /
                                         std::sqrt(std::sqrt(p.profile.eps_k)))
                             .epsilon(1e-12));
  }
}

TEST_CASE("G function") {
  CHECK(g_function(3.0, 3.0, 2.0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(g_function(16.0, 1.0, 1.0) == doctest::Approx(1.25));
  CHECK(g_function(0.2, 0.5, 1.7) == doctest::Approx(g_function(0.25 / 0.2, 0.5, 1.7)));
  CHECK_THROWS_AS(g_function(0, 1, 1), DomainError);
}

TEST_CASE("constants bundle") {
  DiophantineLimits l;
  l.E = 1.3761;
  l.M = 3;
  l.nu_star_est = 0.3;
  l.gamma_star_est = 0.49;
  const auto c = constants_bundle(l, 1.0);
  CHECK(c.B == doctest::Approx(1.7366).epsilon(5e-5));
  CHECK(c.C0 == doctest::Approx(std::sqrt(2 * pi * 0.49)));
  CHECK(c.D0 == doctest::Approx(std::pow(pi * 0.49 / 2, 2)));
  CHECK(c.C == doctest::Approx(c.C0 * c.B));
  CHECK(c.B >= c.E);
  l.E = 1;
  l.M = 1;
  CHECK(constants_bundle(l, 1.0).B == doctest::Approx(1.0));
  l.M = 2;
  CHECK(constants_bundle(l, 1.0).B == doctest::Approx(0.5 * (std::sqrt(2.0) + 1 / std::sqrt(2.0))));
}

TEST_CASE("convergent profiles") {
  const auto& m = shallit();
  const auto& c = m.constants();
  const auto& w = m.limits().window;
  const double EM = c.E * static_cast<double>(c.M);
  for (const auto& p : m.convergent_profiles()) {
    CHECK(p.profile.eps_k > 0);
    if (w.contains(p.n)) {
      CHECK(p.profile.gamma_tilde >= 1 - 1e-9);
      CHECK(p.profile.gamma_tilde <= c.E * c.E + 1e-9);
      if (p.n > w.first) {
        CHECK(m.eps_of_convergent(p.n - 1) / m.eps_of_convergent(p.n) <= std::pow(EM, 4) + 1e-9);
      }
    }
  }
  const auto half = m.with_rho(0.5);
  for (int n = 1; n <= m.depth(); ++n) {
    CHECK(half.eps_of_convergent(n) == doctest::Approx(4 * m.eps_of_convergent(n)).epsilon(1e-14));
  }
}

TEST_CASE("depth is enforced") {
  const auto& m = shallit();
  CHECK_THROWS_AS(m.require_covered(m.eps_floor() / 10), DepthError);
  try {
    (void)dominant_harmonics(m, m.eps_floor() * 1e-6);
    FAIL("expected DepthError");
  } catch (const DepthError& e) {
    CHECK(e.required_depth() > 60);
  }
  CHECK_THROWS_AS(SplittingModel(make_frequency(OmegaSpec::shallit(3), 60), ModelParams{}),
                  DepthError);
  ModelOptions o;
  o.depth = 4;
  CHECK_THROWS_AS(SplittingModel(make_frequency(OmegaSpec::shallit(8), 60), ModelParams{}, o),
                  DomainError);
}

TEST_CASE("basis reduction gives the successive minima") {
  const auto& m = shallit();
  for (double eps : {1.0, 1e-3, 1e-8}) {
    const BetaNorm norm(m.divisor(), 1.0, eps);
    const auto b = reduce_basis(norm);
    CHECK(b.n1 <= b.n2);
    CHECK(b.n2 <= norm(b.b2 + b.b1) + 1e-12);
    CHECK(b.n2 <= norm(b.b2 - b.b1) + 1e-12);
    CHECK(std::abs(b.b1.k1 * b.b2.k2 - b.b1.k2 * b.b2.k1) == 1);
    // Brute-force comparison on a box.
    double best = 1e300;
    for (std::int64_t k2 = 0; k2 <= 300; ++k2) {
      for (std::int64_t k1 = -300; k1 <= 300; ++k1) {
        IntVec2 k{k1, k2};
        if (k.is_canonical()) best = std::min(best, norm(k));
      }
    }
    CHECK(b.n1 == doctest::Approx(best).epsilon(1e-14));
    const auto below = enumerate_below(norm, b, b.n1 * 3);
    std::size_t count = 0;
    for (std::int64_t k2 = 0; k2 <= 600; ++k2) {
      for (std::int64_t k1 = -600; k1 <= 600; ++k1) {
        IntVec2 k{k1, k2};
        if (k.is_canonical() && norm(k) <= b.n1 * 3) ++count;
      }
    }
    CHECK(below.size() == count);
    CHECK(2.0 * static_cast<double>(count) <= lattice_count_bound(b, line_distance(norm, b), b.n1 * 3));
  }
}

TEST_CASE("dominant harmonic is a resonant convergent on the figure range") {
  const auto& m = shallit();
  const auto grid = log_grid(m.eps_of_convergent(20), m.eps_of_convergent(5), 200);
  IntVec2 prev{};
  int changes = 0;
  for (double eps : grid) {
    const auto d = dominant_harmonics(m, eps);
    CHECK(d.S_is_convergent);
    CHECK(d.h1 <= d.h2);
    CHECK(d.spillover < 1);
    if (!prev.is_zero() && !(prev == d.S)) {
      ++changes;
      // S changes only where h1 and h2 come close.
      CHECK((d.h2 - d.h1) / d.h1 < 0.2);
    }
    prev = d.S;
  }
  CHECK(changes >= 10);
}

TEST_CASE("both search policies agree") {
  const auto& m = shallit();
  for (double eps : log_grid(m.eps_of_convergent(9), 0.5, 60)) {
    const auto a = dominant_harmonics(m, eps, SearchPolicy::LatticeReduction);
    const auto b = dominant_harmonics(m, eps, SearchPolicy::CutoffScan);
    CHECK(a.S == b.S);
    CHECK(a.h1 == doctest::Approx(b.h1).epsilon(1e-13));
    CHECK(a.h2 == doctest::Approx(b.h2).epsilon(1e-13));
  }
}

TEST_CASE("h1 at a convergent minimum") {
  const auto& m = shallit();
  const int n = m.limits().argmin_n;
  const auto& prof = m.convergent_profiles()[static_cast<std::size_t>(n - 1)].profile;
  const double eps = prof.eps_k;
  const auto d = dominant_harmonics(m, eps);
  REQUIRE(d.S == prof.k.canonical());
  CHECK(d.h1 == doctest::Approx(std::sqrt(prof.gamma_tilde)).epsilon(1e-12));
  const auto lb = lower_bound_estimate(m, eps);
  const double expected = m.params().p_exponent * std::log10(eps) - 0.5 * std::log10(eps) -
                          m.constants().C0 * d.h1 / std::sqrt(std::sqrt(eps)) / std::log(10.0);
  CHECK(lb.log10_estimate == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("scan: sandwich, bounds and B_num") {
  const auto& m = shallit();
  const auto [lo, hi] = m.default_window();
  const auto grid = log_grid(lo, hi, 300);
  const auto s = h1_scan(m, grid, {lo, hi});
  REQUIRE(s.rows.size() == 300);
  for (const auto& r : s.rows) {
    CHECK(r.dominance.h1 <= r.h1_hat * (1 + 1e-13));
    CHECK(r.h1_hat <= r.h1_hat_plus * (1 + 1e-13));
    CHECK(r.dominance.h1 >= 0.99);
    CHECK(r.dominance.h1 <= m.constants().B + 0.01);
    CHECK(r.g_hat.size() == 60);
  }
  CHECK(s.b_num.value == doctest::Approx(1.2925).epsilon(0.01 / 1.2925));
  const auto two = h1_scan(m, log_grid(lo, hi, 2), {lo, hi});
  CHECK(two.rows.size() == 2);
  const std::vector<double> one{hi};
  CHECK_THROWS_AS(h1_scan(m, one, {lo, hi}), DomainError);
}

TEST_CASE("rho covariance") {
  const auto& m = shallit();
  const auto m2 = m.with_rho(2.0);
  for (double eps : log_grid(m2.eps_floor(), 1e-3, 40)) {
    CHECK(dominant_harmonics(m2, eps).h1 ==
          doctest::Approx(dominant_harmonics(m, 4 * eps).h1).epsilon(1e-12));
  }
}

TEST_CASE("melnikov field") {
  const auto& m = shallit();
  const double eps = m.eps_of_convergent(8);
  SUBCASE("lone harmonic at its extremum") {
    const auto d = dominant_harmonics(m, eps);
    const auto set = explicit_truncation(m, eps, {d.S});
    // <S, theta> = pi / 2 with theta = (0, t): t = pi / (2 S2).
    const std::array<double, 2> th{0.0, pi / (2.0 * static_cast<double>(d.S.k2))};
    const auto f = melnikov_field(th, set);
    CHECK(std::abs(f.M[0]) + std::abs(f.M[1]) ==
          doctest::Approx(static_cast<double>(d.S.l1())).epsilon(1e-12));
    CHECK(second_sum_estimate(set).ratio() == 0);
    CHECK(field_grid_maximum(set, 512).max_abs_M == static_cast<double>(d.S.l1()));
  }
  SUBCASE("truncation tail is tiny with the default margin") {
    const auto set = dominant_truncation(m, eps);
    CHECK(set.terms.front().k == set.S);
    CHECK(set.tail_bound_rel < 1e-12);
    const auto few = dominant_truncation(m, eps, 2.0);
    CHECK(few.tail_bound_rel > set.tail_bound_rel);
  }
  SUBCASE("top harmonics") {
    const auto set = top_harmonics(m, eps, 50);
    CHECK(set.terms.size() == 50);
    for (std::size_t i = 2; i < set.terms.size(); ++i) CHECK(set.terms[i].log_L <= set.terms[i - 1].log_L);
  }
}

TEST_CASE("second sum tracks the second minimum") {
  const auto& m = shallit();
  for (double eps : log_grid(m.eps_of_convergent(40), m.eps_of_convergent(6), 40)) {
    const auto d = dominant_harmonics(m, eps);
    const auto pair = second_sum_estimate(explicit_truncation(m, eps, {d.S, d.runner_up}));
    const double target = -m.constants().C0 * d.h2 / std::sqrt(std::sqrt(eps));
    // Only the polynomial prefactor |R| alpha_R separates the two.
    CHECK(std::abs(pair.log_sum - target) <= 6 + std::log(1 / eps));
    // The truncation tail bound must cover the runner-up when it is excluded.
    const auto full = second_sum_estimate(dominant_truncation(m, eps));
    CHECK(full.log_sum >= pair.log_sum - 1e-9 * std::abs(pair.log_sum));
  }
}

TEST_CASE("lower bound estimate dominates its floor") {
  const auto& m = shallit();
  const auto [lo, hi] = m.default_window();
  for (double eps : log_grid(lo, hi, 50)) {
    const auto b = lower_bound_estimate(m, eps);
    CHECK(b.log10_estimate >= b.log10_floor);
    CHECK(b.mu == doctest::Approx(std::pow(eps, 3.5)));
    CHECK(b.estimate.mantissa >= 1);
    CHECK(b.estimate.mantissa < 10);
  }
}

TEST_CASE("scientific pairs") {
  const auto s = Scientific::from_log10(-12345.5);
  CHECK(s.exponent == -12346);
  CHECK(s.mantissa == doctest::Approx(std::sqrt(10.0)));
  CHECK(Scientific::from_log10(2.0).str(3) == "1.000e+2");
}
