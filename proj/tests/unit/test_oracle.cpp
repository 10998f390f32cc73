#include <cmath>
#include <numbers>

#include "doctest.h"
#include "nct/errors.hpp"
#include "nct/oracle.hpp"

using namespace nct;
using std::numbers::pi;

namespace {

const SplittingModel& shallit() {
  static const SplittingModel m(make_frequency(OmegaSpec::shallit(8), 60), ModelParams{});
  return m;
}

}  // namespace

TEST_CASE("quadrature reproduces the closed form") {
  oracle::QuadratureSpec spec;
  const auto zero = oracle::quadrature_integral(0.0, 0.0, spec);
  CHECK(zero.integral == doctest::Approx(4.0).epsilon(1e-15));
  const auto two = oracle::quadrature_integral(2.0, 0.0, spec);
  CHECK(two.integral == doctest::Approx(4 * pi / std::sinh(pi)).epsilon(1e-15));
  CHECK(two.integral == doctest::Approx(1.0881).epsilon(1e-4));
  CHECK(two.tail_bound == doctest::Approx(8 * std::exp(-60.0)));
  CHECK(std::abs(two.integral - oracle::closed_form_integral(2.0)) <= two.error_bound() + 1e-15);
}

TEST_CASE("quadrature matches the residue formula") {
  const auto& m = shallit();
  for (double eps : {0.1, 1.0}) {
    for (IntVec2 k : {IntVec2{1, 0}, IntVec2{0, 1}, IntVec2{-1, 2}, IntVec2{-3, 5}, IntVec2{4, 1}}) {
      const auto q = oracle::quadrature_melnikov_coefficient(k, eps, 1.0, m.divisor());
      const double exact = melnikov_coefficient(k, eps, 1.0, m.divisor()).value();
      CHECK(q.value == doctest::Approx(exact).epsilon(1e-8));
    }
  }
}

TEST_CASE("quadrature reports unattainable accuracy") {
  oracle::QuadratureSpec spec;
  spec.T = 5;
  spec.target = 1e-10;
  try {
    (void)oracle::quadrature_integral(1.0, 0.0, spec);
    FAIL("expected PrecisionError");
  } catch (const PrecisionError& e) {
    CHECK(std::string(e.what()).find("raise T") != std::string::npos);
  }
  oracle::QuadratureSpec coarse;
  coarse.T = 40;
  coarse.panels = 16;
  coarse.nodes = 2;
  coarse.target = 1e-12;
  try {
    (void)oracle::quadrature_integral(1.0, 0.0, coarse);
    FAIL("expected PrecisionError");
  } catch (const PrecisionError& e) {
    CHECK(std::string(e.what()).find("panels") != std::string::npos);
  }
  oracle::QuadratureSpec bad;
  bad.panels = 4;
  CHECK_THROWS_AS(oracle::quadrature_integral(1.0, 0.0, bad), DomainError);
}

TEST_CASE("the discretization estimate bounds the true error") {
  for (int nodes : {2, 3, 8}) {
    for (double a : {0.5, 1.5, 6.0}) {
      const double exact = oracle::closed_form_integral(a);
      for (int panels : {40, 80, 160}) {
        oracle::QuadratureSpec s;
        s.T = 40;
        s.nodes = nodes;
        s.panels = panels;
        const auto r = oracle::quadrature_integral(a, 0.0, s);
        CHECK(std::abs(r.integral - exact) <= r.error_bound() + 1e-15);
      }
    }
  }
}

TEST_CASE("exhaustive lattice minimum") {
  const auto& m = shallit();
  const auto tiny = oracle::brute_force_min_g(m, 0.5, 1);
  CHECK(tiny.scanned == 2);
  for (int n : {5, 6, 7, 8}) {
    const double eps = m.eps_of_convergent(n);
    const auto b = oracle::brute_force_min_g(m, eps, 300);
    const auto d = dominant_harmonics(m, eps);
    CHECK(b.argmin == d.S);
    CHECK(m.convergent_index(b.argmin) == n);
    CHECK(b.min == doctest::Approx(d.h1).epsilon(1e-12));
    CHECK(b.second == doctest::Approx(d.h2).epsilon(1e-12));
  }
}

TEST_CASE("nu sweep") {
  const auto s = oracle::brute_force_nu_scan(make_frequency(OmegaSpec::shallit(8), 60), 10000);
  REQUIRE(!s.hits.empty());
  CHECK(s.hits.front().q == 1);
  const double omega = make_frequency(OmegaSpec::shallit(8), 60).omega.midpoint();
  CHECK(s.hits.front().nu == doctest::Approx(std::min(omega, 1 - omega)));
  CHECK(s.all_convergents);
  for (const auto& h : s.hits) CHECK(h.is_convergent);

  const auto g = oracle::brute_force_nu_scan(make_frequency(OmegaSpec::golden(), 60), 100000);
  CHECK(g.all_convergents);
  CHECK(std::abs(g.window_min - 1 / std::sqrt(5.0)) < 1e-3);
  CHECK_THROWS_AS(oracle::brute_force_nu_scan(make_frequency(OmegaSpec::golden(), 10), 100000),
                  DepthError);
}

TEST_CASE("periodic resonance relation") {
  const auto golden = oracle::periodic_cf_resonance_check({1}, 30);
  CHECK(golden.passed);
  CHECK(golden.checked == 30);
  const auto v0 = golden.U.apply(0, 1);
  CHECK(v0[0] == 1);
  CHECK(v0[1] == -1);
  const auto two = oracle::periodic_cf_resonance_check({1, 2}, 22);
  CHECK(two.passed);
  CHECK(two.checked == 21);
  CHECK(oracle::periodic_cf_resonance_check({2, 1, 3}, 3).checked == 1);
  CHECK_THROWS_AS(oracle::periodic_cf_resonance_check({1, 2}, 1), DomainError);
}

TEST_CASE("finite differences of the potential") {
  const auto& m = shallit();
  const double eps = m.eps_of_convergent(7);
  const auto d = dominant_harmonics(m, eps);
  const auto lone = explicit_truncation(m, eps, {d.S});
  const std::array<double, 2> th{0.3, 1.1};
  const auto f = melnikov_field(th, lone);
  const auto g = oracle::finite_difference_gradient(th, lone, 1e-5);
  const double arg = static_cast<double>(d.S.k1) * th[0] + static_cast<double>(d.S.k2) * th[1];
  CHECK(f.M[0] == doctest::Approx(-static_cast<double>(d.S.k1) * std::sin(arg)).epsilon(1e-12));
  CHECK(g[0] == doctest::Approx(f.M[0]).epsilon(1e-6));
  CHECK(g[1] == doctest::Approx(f.M[1]).epsilon(1e-6));
  // At a maximum of the lone cosine the gradient vanishes.
  const std::array<double, 2> crit{0.0, 2 * pi / static_cast<double>(d.S.k2)};
  const auto gc = oracle::finite_difference_gradient(crit, lone, 1e-4);
  const double third = std::pow(static_cast<double>(d.S.l1()), 3);
  CHECK(std::hypot(gc[0], gc[1]) <= 1e-8 * third + 1e-9);
  CHECK_THROWS_AS(oracle::finite_difference_gradient(th, lone, 0.0), DomainError);
}
