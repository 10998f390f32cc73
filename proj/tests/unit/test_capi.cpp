#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "nct/nct.h"

namespace {

nct_omega_spec shallit_spec(int K = 8) {
  nct_omega_spec s{};
  s.kind = NCT_OMEGA_SHALLIT;
  s.shallit_order = K;
  return s;
}

struct ModelGuard {
  nct_model* m = nullptr;
  ~ModelGuard() { nct_model_destroy(m); }
};

}  // namespace

TEST_CASE("omega handle") {
  const auto spec = shallit_spec();
  nct_omega* om = nullptr;
  REQUIRE(nct_omega_create(&spec, 15, &om) == NCT_OK);
  CHECK(nct_omega_certified_depth(om) >= 15);
  const int64_t expected[] = {1, 1, 1, 2, 1, 1, 1, 1, 1, 1, 1, 2, 1, 1, 1};
  for (int n = 1; n <= 15; ++n) {
    int64_t a = 0;
    REQUIRE(nct_omega_quotient(om, n, &a) == NCT_OK);
    CHECK(a == expected[n - 1]);
  }
  int64_t a = 0;
  CHECK(nct_omega_quotient(om, 0, &a) == NCT_ERR_DEPTH);

  char p[4], q[4];
  size_t needed = 0;
  CHECK(nct_omega_convergent(om, 15, p, q, sizeof p, &needed) == NCT_ERR_ARGUMENT);
  CHECK(needed > sizeof p);
  std::vector<char> P(needed), Q(needed);
  REQUIRE(nct_omega_convergent(om, 15, P.data(), Q.data(), needed, &needed) == NCT_OK);
  const double ratio = std::stod(P.data()) / std::stod(Q.data());
  CHECK(ratio == doctest::Approx(nct_omega_midpoint(om)).epsilon(1e-6));

  double nu = 0, gamma = 0;
  REQUIRE(nct_omega_nu(om, 10, &nu) == NCT_OK);
  REQUIRE(nct_omega_gamma_convergent(om, 10, &gamma) == NCT_OK);
  CHECK(nu > 0);
  CHECK(nu < 1);
  CHECK(gamma > nu);
  nct_omega_destroy(om);
  nct_omega_destroy(nullptr);
}

TEST_CASE("status codes and messages") {
  nct_omega* om = nullptr;
  CHECK(nct_omega_create(nullptr, 10, &om) == NCT_ERR_ARGUMENT);
  CHECK(std::strlen(nct_last_error()) > 0);

  auto spec = shallit_spec(2);
  CHECK(nct_omega_create(&spec, 60, &om) == NCT_ERR_DEPTH);
  CHECK(om == nullptr);

  nct_omega_spec bad{};
  bad.kind = NCT_OMEGA_ENCLOSURE;
  bad.lo = "1/0";
  bad.hi = "1/2";
  CHECK(nct_omega_create(&bad, 5, &om) == NCT_ERR_ARGUMENT);

  nct_omega_spec narrow{};
  narrow.kind = NCT_OMEGA_ENCLOSURE;
  narrow.lo = "0.6328430180";
  narrow.hi = "0.6328430181";
  CHECK(nct_omega_create(&narrow, 40, &om) == NCT_ERR_DEPTH);
  CHECK(nct_last_required_depth() == 40);

  nct_model_params params;
  nct_model_params_default(&params);
  params.rho = -1;
  ModelGuard g;
  spec = shallit_spec();
  CHECK(nct_model_create(&spec, &params, &g.m) == NCT_ERR_ARGUMENT);
}

TEST_CASE("model queries and a scan round trip") {
  const auto spec = shallit_spec();
  nct_model_params params;
  nct_model_params_default(&params);
  CHECK(params.rho == 1.0);
  CHECK(params.depth == 60);
  ModelGuard g;
  REQUIRE(nct_model_create(&spec, &params, &g.m) == NCT_OK);
  CHECK(nct_model_depth(g.m) == 60);

  nct_limits lim;
  nct_constants c;
  REQUIRE(nct_model_limits(g.m, &lim) == NCT_OK);
  REQUIRE(nct_model_constants(g.m, &c) == NCT_OK);
  CHECK(lim.M == 3);
  CHECK(c.B == doctest::Approx(1.7366).epsilon(5e-4));
  CHECK(nct_omega_certified_depth(nct_model_omega(g.m)) >= 60);

  double lo = 0, hi = 0, e5 = 0;
  REQUIRE(nct_model_default_window(g.m, &lo, &hi) == NCT_OK);
  REQUIRE(nct_model_eps_convergent(g.m, 5, &e5) == NCT_OK);
  CHECK(hi == e5);

  nct_dominance d;
  CHECK(nct_dominance_at(g.m, lo / 1e3, NCT_SEARCH_REDUCTION, &d) == NCT_ERR_DEPTH);
  CHECK(nct_last_required_depth() > 60);
  REQUIRE(nct_dominance_at(g.m, hi, NCT_SEARCH_REDUCTION, &d) == NCT_OK);
  CHECK(d.S_is_convergent);

  std::vector<double> grid(32);
  REQUIRE(nct_log_grid(lo, hi, 32, grid.data()) == NCT_OK);
  CHECK(grid.front() == doctest::Approx(lo));
  CHECK(grid.back() == doctest::Approx(hi));
  nct_scan* scan = nullptr;
  REQUIRE(nct_scan_run(g.m, grid.data(), grid.size(), lo, hi, NCT_SEARCH_REDUCTION, &scan) == NCT_OK);
  REQUIRE(nct_scan_rows(scan) == 32);
  nct_scan_row row;
  REQUIRE(nct_scan_row_at(scan, 7, &row) == NCT_OK);
  CHECK(row.dominance.h1 <= row.h1_hat * (1 + 1e-13));
  std::vector<double> gh(60), ghp(60);
  REQUIRE(nct_scan_curves(scan, 7, gh.data(), ghp.data(), 60) == NCT_OK);
  double best = 1e300;
  for (double x : gh) best = std::min(best, x);
  CHECK(best == row.h1_hat);
  CHECK(nct_scan_curves(scan, 7, gh.data(), ghp.data(), 10) == NCT_ERR_ARGUMENT);
  CHECK(nct_scan_row_at(scan, 32, &row) == NCT_ERR_ARGUMENT);
  nct_bnum b;
  REQUIRE(nct_scan_bnum(scan, &b) == NCT_OK);
  CHECK(b.value >= 1);
  CHECK(b.value <= c.B);
  nct_scan_destroy(scan);

  nct_lower_bound lb;
  REQUIRE(nct_lower_bound_at(g.m, hi, &lb) == NCT_OK);
  CHECK(lb.log10_estimate >= lb.log10_floor);
  nct_second_sum ss;
  REQUIRE(nct_second_sum_at(g.m, hi, 40, &ss) == NCT_OK);
  CHECK(ss.ratio < 1);
  CHECK(ss.terms >= 2);
  nct_field_max fm;
  REQUIRE(nct_field_max_at(g.m, hi, 64, &fm) == NCT_OK);
  CHECK(std::abs(fm.max_rel - fm.dominant_rel) <= fm.dominant_rel * 0.01);
}

namespace {

struct Tally {
  int calls = 0;
  std::vector<std::string> names;
};

void on_check(const nct_check* c, void* user) {
  auto* t = static_cast<Tally*>(user);
  ++t->calls;
  t->names.emplace_back(c->name);
}

}  // namespace

TEST_CASE("verify callback") {
  nct_omega_spec spec{};
  spec.kind = NCT_OMEGA_GOLDEN;
  nct_model_params params;
  nct_model_params_default(&params);
  params.depth = 30;
  ModelGuard g;
  REQUIRE(nct_model_create(&spec, &params, &g.m) == NCT_OK);
  nct_verify_options o;
  nct_verify_options_default(&o);
  o.lattice_K_max = 80;
  o.lattice_points = 4;
  o.quadrature_max_l1 = 3;
  o.nu_sweep_Q = 1000;
  o.sandwich_points = 20;
  Tally t;
  int failures = -1;
  REQUIRE(nct_verify(g.m, &o, on_check, &t, &failures) == NCT_OK);
  CHECK(failures == 0);
  CHECK(t.calls == static_cast<int>(t.names.size()));
  CHECK(t.calls >= 5);
}
