#include "nct/nct.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <exception>
#include <memory>
#include <string>

#include "nct/errors.hpp"
#include "nct/field.hpp"
#include "nct/verify.hpp"

struct nct_omega {
  nct::Frequency frequency;
  std::vector<nct::Convergent> convergents;
};

struct nct_model {
  nct_model(nct_omega o, nct::SplittingModel m) : omega(std::move(o)), model(std::move(m)) {}

  nct_omega omega;
  nct::SplittingModel model;
};

struct nct_scan {
  nct::ScanResult result;
};

namespace {

thread_local std::string g_last_error;
thread_local int g_required_depth = 0;

nct_status fail(nct_status status, const std::string& message, int depth = 0) {
  g_last_error = message;
  g_required_depth = depth;
  return status;
}

template <class F>
nct_status guarded(F&& f) {
  try {
    g_last_error.clear();
    g_required_depth = 0;
    f();
    return NCT_OK;
  } catch (const nct::DepthError& e) {
    return fail(NCT_ERR_DEPTH, e.what(), e.required_depth());
  } catch (const nct::PrecisionError& e) {
    return fail(NCT_ERR_PRECISION, e.what());
  } catch (const nct::DomainError& e) {
    return fail(NCT_ERR_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(NCT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(NCT_ERR_INTERNAL, "unknown error");
  }
}

#define NCT_REQUIRE(cond, msg) \
  do {                          \
    if (!(cond)) return fail(NCT_ERR_ARGUMENT, msg); \
  } while (0)

std::vector<std::int64_t> to_vector(const int64_t* p, size_t n) {
  if (n > 0 && p == nullptr) throw nct::DomainError("null quotient array");
  return std::vector<std::int64_t>(p, p + n);
}

nct::OmegaSpec to_spec(const nct_omega_spec& s) {
  switch (s.kind) {
    case NCT_OMEGA_SHALLIT:
      return nct::OmegaSpec::shallit(s.shallit_order > 0 ? s.shallit_order : 8);
    case NCT_OMEGA_GOLDEN:
      return nct::OmegaSpec::golden();
    case NCT_OMEGA_QUOTIENTS:
      return nct::OmegaSpec::explicit_quotients(to_vector(s.quotients, s.n_quotients));
    case NCT_OMEGA_PERIODIC:
      return nct::OmegaSpec::periodic(to_vector(s.preperiod, s.n_preperiod),
                                      to_vector(s.period, s.n_period));
    case NCT_OMEGA_ENCLOSURE:
      if (!s.lo || !s.hi) throw nct::DomainError("enclosure needs both endpoints");
      return nct::OmegaSpec::enclosure(s.lo, s.hi);
  }
  throw nct::DomainError("unknown omega kind");
}

nct_omega build_omega(const nct::Frequency& f) {
  return {f, nct::convergents(f.quotients, f.quotients.certified_depth())};
}

void put_vec(int64_t out[2], nct::IntVec2 k) {
  out[0] = k.k1;
  out[1] = k.k2;
}

void fill(nct_dominance& d, const nct::DominanceReport& r) {
  d.eps = r.eps;
  put_vec(d.S, r.S);
  d.h1 = r.h1;
  put_vec(d.runner_up, r.runner_up);
  d.h2 = r.h2;
  d.has_tie = r.tie.has_value();
  put_vec(d.tie, r.tie.value_or(nct::IntVec2{}));
  d.S_is_convergent = r.S_is_convergent;
  d.convergent_index = r.convergent_index;
  d.spillover = r.spillover;
  d.cutoff = r.cutoff;
}

nct::SearchPolicy to_policy(nct_search_policy p) {
  return p == NCT_SEARCH_CUTOFF ? nct::SearchPolicy::CutoffScan
                                : nct::SearchPolicy::LatticeReduction;
}

nct_status copy_strings(const std::string& a, const std::string& b, char* out_a, char* out_b,
                        size_t size, size_t* needed) {
  const size_t need = std::max(a.size(), b.size()) + 1;
  if (needed) *needed = need;
  if (size < need || !out_a || !out_b) {
    return fail(NCT_ERR_ARGUMENT, "buffer too small, need " + std::to_string(need) + " bytes");
  }
  std::memcpy(out_a, a.c_str(), a.size() + 1);
  std::memcpy(out_b, b.c_str(), b.size() + 1);
  return NCT_OK;
}

}  // namespace

extern "C" {

const char* nct_version(void) { return "0.1.0"; }
const char* nct_last_error(void) { return g_last_error.c_str(); }
int nct_last_required_depth(void) { return g_required_depth; }

nct_status nct_omega_create(const nct_omega_spec* spec, int depth, nct_omega** out) {
  NCT_REQUIRE(spec && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    if (depth < 1) throw nct::DomainError("depth must be >= 1");
    auto f = nct::make_frequency(to_spec(*spec), depth);
    if (f.quotients.certified_depth() < depth) {
      throw nct::DepthError("only " + std::to_string(f.quotients.certified_depth()) +
                                " partial quotients are certified, " + std::to_string(depth) +
                                " requested (raise the truncation order / enclosure precision)",
                            depth);
    }
    *out = new nct_omega(build_omega(f));
  });
}

void nct_omega_destroy(nct_omega* omega) { delete omega; }

int nct_omega_certified_depth(const nct_omega* omega) {
  return omega ? omega->frequency.quotients.certified_depth() : 0;
}

double nct_omega_midpoint(const nct_omega* omega) {
  return omega ? omega->frequency.omega.midpoint() : 0.0;
}

nct_status nct_omega_quotient(const nct_omega* omega, int n, int64_t* out) {
  NCT_REQUIRE(omega && out, "null argument");
  return guarded([&] {
    if (n < 1 || n > omega->frequency.quotients.certified_depth()) {
      throw nct::DepthError("quotient index " + std::to_string(n) + " not certified", n);
    }
    *out = omega->frequency.quotients.at(n);
  });
}

nct_status nct_omega_convergent(const nct_omega* omega, int n, char* p, char* q, size_t size,
                                size_t* needed) {
  NCT_REQUIRE(omega, "null argument");
  if (n < -1 || n + 1 >= static_cast<int>(omega->convergents.size())) {
    return fail(NCT_ERR_DEPTH, "convergent index " + std::to_string(n) + " not certified", n);
  }
  const auto& c = omega->convergents[static_cast<size_t>(n + 1)];
  return copy_strings(c.p.get_str(), c.q.get_str(), p, q, size, needed);
}

nct_status nct_omega_nu(const nct_omega* omega, int n, double* out) {
  NCT_REQUIRE(omega && out, "null argument");
  return guarded([&] {
    if (n < 1 || n + 1 >= static_cast<int>(omega->convergents.size())) {
      throw nct::DepthError("convergent index " + std::to_string(n) + " not certified", n);
    }
    *out = nct::nu_numerator(omega->convergents[static_cast<size_t>(n + 1)].q,
                             omega->frequency.omega)
               .nu.mid();
  });
}

nct_status nct_omega_gamma_convergent(const nct_omega* omega, int n, double* out) {
  NCT_REQUIRE(omega && out, "null argument");
  return guarded([&] {
    if (n < 1 || n + 1 >= static_cast<int>(omega->convergents.size())) {
      throw nct::DepthError("convergent index " + std::to_string(n) + " not certified", n);
    }
    const auto& c = omega->convergents[static_cast<size_t>(n + 1)];
    *out = nct::gamma_numerator(-c.p, c.q, omega->frequency.omega).mid();
  });
}

nct_status nct_omega_enclosure(const nct_omega* omega, char* lo, char* hi, size_t size,
                               size_t* needed) {
  NCT_REQUIRE(omega, "null argument");
  return copy_strings(omega->frequency.omega.lo().get_str(),
                      omega->frequency.omega.hi().get_str(), lo, hi, size, needed);
}

void nct_model_params_default(nct_model_params* params) {
  if (!params) return;
  const nct::ModelParams p;
  const nct::ModelOptions o;
  params->rho = p.rho;
  params->p_exponent = p.p_exponent;
  params->phases = NCT_PHASES_ZERO;
  params->seed = p.seed;
  params->depth = o.depth;
  params->window_first = 0;
  params->window_last = 0;
  params->gamma_star_corruption = 1.0;
}

nct_status nct_model_create(const nct_omega_spec* spec, const nct_model_params* params,
                            nct_model** out) {
  NCT_REQUIRE(spec && params && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    nct::ModelParams mp;
    mp.rho = params->rho;
    mp.p_exponent = params->p_exponent;
    mp.phases = params->phases == NCT_PHASES_RANDOM ? nct::PhasePolicy::Random
                                                    : nct::PhasePolicy::Zero;
    mp.seed = params->seed;
    nct::ModelOptions opt;
    opt.depth = params->depth;
    opt.gamma_star_corruption = params->gamma_star_corruption;
    if (params->window_first != 0 || params->window_last != 0) {
      if (params->window_first < 1 || params->window_last < params->window_first ||
          params->window_last > params->depth) {
        throw nct::DomainError("Diophantine window must satisfy 1 <= first <= last <= depth");
      }
      opt.window = nct::IndexWindow{params->window_first, params->window_last};
    }
    if (opt.depth < 5) throw nct::DomainError("depth must be >= 5");
    auto f = nct::make_frequency(to_spec(*spec), opt.depth);
    auto omega = build_omega(f);
    *out = new nct_model(std::move(omega), nct::SplittingModel(std::move(f), mp, opt));
  });
}

void nct_model_destroy(nct_model* model) { delete model; }

nct_status nct_model_limits(const nct_model* model, nct_limits* out) {
  NCT_REQUIRE(model && out, "null argument");
  const auto& l = model->model.limits();
  *out = {l.nu_star_est, l.nu_limsup_est, l.gamma_star_est, l.E, l.M,
          l.window.first, l.window.last, l.argmin_n, l.argmax_n};
  return NCT_OK;
}

nct_status nct_model_constants(const nct_model* model, nct_constants* out) {
  NCT_REQUIRE(model && out, "null argument");
  const auto& c = model->model.constants();
  *out = {c.gamma_star, c.nu_star, c.E, c.M, c.rho, c.C0, c.D0, c.B, c.C};
  return NCT_OK;
}

int nct_model_depth(const nct_model* model) { return model ? model->model.depth() : 0; }

nct_status nct_model_eps_convergent(const nct_model* model, int n, double* out) {
  NCT_REQUIRE(model && out, "null argument");
  return guarded([&] { *out = model->model.eps_of_convergent(n); });
}

nct_status nct_model_default_window(const nct_model* model, double* lo, double* hi) {
  NCT_REQUIRE(model && lo && hi, "null argument");
  const auto w = model->model.default_window();
  *lo = w.first;
  *hi = w.second;
  return NCT_OK;
}

const nct_omega* nct_model_omega(const nct_model* model) {
  return model ? &model->omega : nullptr;
}

nct_status nct_dominance_at(const nct_model* model, double eps, nct_search_policy policy,
                            nct_dominance* out) {
  NCT_REQUIRE(model && out, "null argument");
  return guarded([&] { fill(*out, nct::dominant_harmonics(model->model, eps, to_policy(policy))); });
}

nct_status nct_log_grid(double lo, double hi, int count, double* out) {
  NCT_REQUIRE(out, "null argument");
  return guarded([&] {
    if (!(lo > 0) || !(hi > lo)) throw nct::DomainError("grid needs 0 < min < max");
    if (count < 2) throw nct::DomainError("grid needs at least 2 points");
    const auto g = nct::log_grid(lo, hi, count);
    std::copy(g.begin(), g.end(), out);
  });
}

nct_status nct_scan_run(const nct_model* model, const double* grid, size_t n, double window_lo,
                        double window_hi, nct_search_policy policy, nct_scan** out) {
  NCT_REQUIRE(model && grid && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto scan = std::make_unique<nct_scan>();
    scan->result = nct::h1_scan(model->model, std::span<const double>(grid, n),
                                {window_lo, window_hi}, to_policy(policy));
    *out = scan.release();
  });
}

void nct_scan_destroy(nct_scan* scan) { delete scan; }

size_t nct_scan_rows(const nct_scan* scan) { return scan ? scan->result.rows.size() : 0; }

nct_status nct_scan_row_at(const nct_scan* scan, size_t i, nct_scan_row* out) {
  NCT_REQUIRE(scan && out, "null argument");
  NCT_REQUIRE(i < scan->result.rows.size(), "row index out of range");
  const auto& r = scan->result.rows[i];
  fill(out->dominance, r.dominance);
  out->h1_hat = r.h1_hat;
  out->h1_hat_plus = r.h1_hat_plus;
  return NCT_OK;
}

nct_status nct_scan_curves(const nct_scan* scan, size_t i, double* g_hat, double* g_hat_plus,
                           size_t depth) {
  NCT_REQUIRE(scan && g_hat && g_hat_plus, "null argument");
  NCT_REQUIRE(i < scan->result.rows.size(), "row index out of range");
  const auto& r = scan->result.rows[i];
  NCT_REQUIRE(depth == r.g_hat.size(), "curve buffer length must equal the model depth");
  std::copy(r.g_hat.begin(), r.g_hat.end(), g_hat);
  std::copy(r.g_hat_plus.begin(), r.g_hat_plus.end(), g_hat_plus);
  return NCT_OK;
}

nct_status nct_scan_bnum(const nct_scan* scan, nct_bnum* out) {
  NCT_REQUIRE(scan && out, "null argument");
  const auto& b = scan->result.b_num;
  *out = {b.value, b.eps_at, b.crossovers};
  return NCT_OK;
}

nct_status nct_lower_bound_at(const nct_model* model, double eps, nct_lower_bound* out) {
  NCT_REQUIRE(model && out, "null argument");
  return guarded([&] {
    const auto b = nct::lower_bound_estimate(model->model, eps);
    out->eps = b.eps;
    out->mu = b.mu;
    out->h1 = b.h1;
    put_vec(out->S, b.S);
    out->log10_estimate = b.log10_estimate;
    out->log10_floor = b.log10_floor;
    out->log10_dominant = b.log10_dominant;
    out->estimate_mantissa = b.estimate.mantissa;
    out->estimate_exponent = b.estimate.exponent;
    out->floor_mantissa = b.floor.mantissa;
    out->floor_exponent = b.floor.exponent;
  });
}

nct_status nct_second_sum_at(const nct_model* model, double eps, double margin,
                             nct_second_sum* out) {
  NCT_REQUIRE(model && out, "null argument");
  return guarded([&] {
    const auto set = nct::dominant_truncation(model->model, eps, margin);
    const auto s = nct::second_sum_estimate(set);
    put_vec(out->S, s.S);
    out->truncated_rel = s.truncated_rel;
    out->tail_rel = s.tail_rel;
    out->ratio = s.ratio();
    out->log10_sum = s.log_sum / std::log(10.0);
    out->terms = set.terms.size();
  });
}

nct_status nct_field_max_at(const nct_model* model, double eps, int grid_n, nct_field_max* out) {
  NCT_REQUIRE(model && out, "null argument");
  return guarded([&] {
    const auto set = nct::dominant_truncation(model->model, eps);
    const auto g = nct::field_grid_maximum(set, grid_n);
    out->max_rel = g.max_abs_M;
    out->dominant_rel = static_cast<double>(set.S.l1());
    out->log10_max = (std::log(g.max_abs_M) + set.log_scale) / std::log(10.0);
    out->i = g.i;
    out->j = g.j;
  });
}

void nct_verify_options_default(nct_verify_options* options) {
  if (!options) return;
  const nct::VerifyOptions o;
  *options = {o.lattice_K_max, o.lattice_points, o.quadrature_max_l1, o.nu_sweep_Q,
              o.sandwich_points};
}

nct_status nct_verify(const nct_model* model, const nct_verify_options* options,
                      nct_check_callback callback, void* user, int* failures) {
  NCT_REQUIRE(model && failures, "null argument");
  *failures = 0;
  return guarded([&] {
    nct::VerifyOptions o;
    if (options) {
      o.lattice_K_max = options->lattice_K_max;
      o.lattice_points = options->lattice_points;
      o.quadrature_max_l1 = options->quadrature_max_l1;
      o.nu_sweep_Q = options->nu_sweep_Q;
      o.sandwich_points = options->sandwich_points;
    }
    nct::run_verification(model->model, o, [&](const nct::CheckResult& r) {
      if (!r.passed) ++*failures;
      if (callback) {
        const nct_check c{r.name.c_str(), r.passed, r.observed, r.expected, r.tolerance,
                          r.detail.c_str()};
        callback(&c, user);
      }
    });
  });
}

}  // extern "C"
