#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

namespace cli {

namespace {

namespace fs = std::filesystem;

struct ModelDeleter {
  void operator()(nct_model* m) const { nct_model_destroy(m); }
};
struct OmegaDeleter {
  void operator()(nct_omega* o) const { nct_omega_destroy(o); }
};
struct ScanDeleter {
  void operator()(nct_scan* s) const { nct_scan_destroy(s); }
};
using ModelPtr = std::unique_ptr<nct_model, ModelDeleter>;
using OmegaPtr = std::unique_ptr<nct_omega, OmegaDeleter>;
using ScanPtr = std::unique_ptr<nct_scan, ScanDeleter>;

ModelPtr make_model(const RunConfig& cfg) {
  OmegaSpecHolder spec(cfg.omega);
  const auto params = model_params(cfg);
  nct_model* m = nullptr;
  check(nct_model_create(&spec.spec, &params, &m));
  return ModelPtr(m);
}

std::string fmt(double v, int digits = 15) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

/// Decimal (mantissa, exponent) of 10^x.
std::pair<double, long> sci(double log10_value) {
  double e = std::floor(log10_value);
  double m = std::pow(10.0, log10_value - e);
  if (m >= 10) {
    m /= 10;
    e += 1;
  }
  return {m, static_cast<long>(e)};
}

/// Output directory: --out / config, then NCT_OUTPUT_DIR. Empty when neither is set.
std::string explicit_out_dir(const RunConfig& cfg) {
  if (!cfg.out_dir.empty()) return cfg.out_dir;
  if (const char* env = std::getenv("NCT_OUTPUT_DIR"); env && *env) return env;
  return {};
}

fs::path out_path(const RunConfig& cfg, const std::string& name) {
  std::string dir = explicit_out_dir(cfg);
  if (dir.empty()) dir = ".";
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Failure(kUsage, "cannot create output directory " + dir + ": " + ec.message());
  return fs::path(dir) / name;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Failure(kUsage, "cannot write " + path.string());
  f << text;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

json limits_json(const nct_limits& l) {
  return {{"nu_star", l.nu_star},       {"nu_limsup", l.nu_limsup},
          {"gamma_star", l.gamma_star}, {"E", l.E},
          {"M", l.M},                   {"window", {l.window_first, l.window_last}},
          {"argmin_n", l.argmin_n},     {"argmax_n", l.argmax_n}};
}

json constants_json(const nct_constants& c) {
  return {{"gamma_star", c.gamma_star}, {"nu_star", c.nu_star}, {"E", c.E}, {"M", c.M},
          {"rho", c.rho},               {"C0", c.C0},           {"D0", c.D0}, {"B", c.B},
          {"C", c.C}};
}

struct Grid {
  std::vector<double> eps;
  std::pair<double, double> window;
};

/// Resolves the eps grid and the asymptotic window for a model. The default
/// grid runs from eps_{v(20)} (or the deepest convergent) to eps_{v(5)}.
Grid resolve_grid(const RunConfig& cfg, const nct_model* model, int default_points) {
  double lo = 0, hi = 0;
  const int deep = std::min(20, nct_model_depth(model));
  check(nct_model_eps_convergent(model, deep, &lo));
  check(nct_model_eps_convergent(model, 5, &hi));
  if (cfg.eps_min) lo = *cfg.eps_min;
  if (cfg.eps_max) hi = *cfg.eps_max;
  if (!(lo < hi)) throw Failure(kUsage, "eps grid needs min < max (got " + fmt(lo) + ", " + fmt(hi) + ")");
  const int n = cfg.grid_points.value_or(default_points);
  Grid g;
  g.eps.resize(static_cast<std::size_t>(n));
  check(nct_log_grid(lo, hi, n, g.eps.data()));
  if (cfg.window) {
    g.window = *cfg.window;
  } else {
    double wlo = 0, whi = 0;
    check(nct_model_default_window(model, &wlo, &whi));
    g.window = {std::max(wlo, lo), std::min(whi, hi)};
  }
  return g;
}

json resolved_config(const RunConfig& cfg, const Grid* grid) {
  json j = cfg.to_json();
  if (grid) {
    j["grid"]["eps_min"] = grid->eps.front();
    j["grid"]["eps_max"] = grid->eps.back();
    j["grid"]["points"] = grid->eps.size();
    j["window"] = {grid->window.first, grid->window.second};
  }
  return j;
}

}  // namespace

int cmd_cf(const RunConfig& cfg, std::ostream& out) {
  OmegaSpecHolder spec(cfg.omega);
  nct_omega* raw = nullptr;
  check(nct_omega_create(&spec.spec, cfg.depth, &raw));
  OmegaPtr omega(raw);
  const int N = cfg.depth;

  std::vector<int64_t> a(static_cast<std::size_t>(N));
  for (int n = 1; n <= N; ++n) check(nct_omega_quotient(omega.get(), n, &a[static_cast<std::size_t>(n - 1)]));

  out << "# omega: " << cfg.to_json()["omega"].dump() << "\n";
  out << "# certified depth: " << nct_omega_certified_depth(omega.get()) << " (showing " << N
      << ")\n";
  out << "# partial quotients a_1..a_" << N << "\n";
  for (int n = 0; n < N; ++n) out << (n ? " " : "") << a[static_cast<std::size_t>(n)];
  out << "\n";
  out << "# n,a_n,p_n,q_n,v_n,nu_qn,gamma_vn\n";

  json rows = json::array();
  std::vector<char> p(64), q(64);
  for (int n = -1; n <= N; ++n) {
    size_t need = 0;
    if (nct_omega_convergent(omega.get(), n, p.data(), q.data(), p.size(), &need) != NCT_OK) {
      p.resize(need);
      q.resize(need);
      check(nct_omega_convergent(omega.get(), n, p.data(), q.data(), p.size(), &need));
    }
    const std::string ps = p.data(), qs = q.data();
    const std::string v = "(" + (ps == "0" ? ps : "-" + ps) + " " + qs + ")";
    json row{{"n", n}, {"p", ps}, {"q", qs}};
    out << n << ",";
    if (n >= 1) {
      double nu = 0, gamma = 0;
      check(nct_omega_nu(omega.get(), n, &nu));
      check(nct_omega_gamma_convergent(omega.get(), n, &gamma));
      const auto an = a[static_cast<std::size_t>(n - 1)];
      out << an << "," << ps << "," << qs << "," << v << "," << fmt(nu, 10) << "," << fmt(gamma, 10);
      row["a"] = an;
      row["nu"] = nu;
      row["gamma"] = gamma;
    } else {
      out << "," << ps << "," << qs << "," << v << ",,";
    }
    out << "\n";
    rows.push_back(row);
  }

  if (const auto dir = explicit_out_dir(cfg); !dir.empty()) {
    json j{{"config", resolved_config(cfg, nullptr)},
           {"certified_depth", nct_omega_certified_depth(omega.get())},
           {"quotients", a},
           {"convergents", rows}};
    write_json(out_path(cfg, "cf.json"), j);
  }
  return kOk;
}

int cmd_constants(const RunConfig& cfg, std::ostream& out) {
  auto model = make_model(cfg);
  nct_limits l;
  nct_constants c;
  check(nct_model_limits(model.get(), &l));
  check(nct_model_constants(model.get(), &c));
  double wlo = 0, whi = 0;
  check(nct_model_default_window(model.get(), &wlo, &whi));

  out << "omega        " << cfg.to_json()["omega"].dump() << "\n";
  out << "window       n = " << l.window_first << ".." << l.window_last << "\n";
  out << "nu*          " << fmt(l.nu_star, 10) << "  (n = " << l.argmin_n << ")\n";
  out << "nu limsup    " << fmt(l.nu_limsup, 10) << "  (n = " << l.argmax_n << ")\n";
  out << "gamma*       " << fmt(c.gamma_star, 10) << "\n";
  out << "E            " << fmt(c.E, 10) << "\n";
  out << "M            " << c.M << "\n";
  out << "rho          " << fmt(c.rho) << "\n";
  out << "C0           " << fmt(c.C0, 10) << "\n";
  out << "D0           " << fmt(c.D0, 10) << "\n";
  out << "B            " << fmt(c.B, 10) << "\n";
  out << "C = C0*B     " << fmt(c.C, 10) << "\n";
  out << "eps window   [" << fmt(wlo, 6) << ", " << fmt(whi, 6) << "]\n";

  json j{{"config", resolved_config(cfg, nullptr)},
         {"limits", limits_json(l)},
         {"constants", constants_json(c)},
         {"eps_window", {wlo, whi}}};
  write_json(out_path(cfg, "constants.json"), j);
  return kOk;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out) {
  auto model = make_model(cfg);
  const Grid grid = resolve_grid(cfg, model.get(), 400);
  nct_scan* raw = nullptr;
  check(nct_scan_run(model.get(), grid.eps.data(), grid.eps.size(), grid.window.first,
                     grid.window.second, search_policy(cfg), &raw));
  ScanPtr scan(raw);
  const auto depth = static_cast<std::size_t>(nct_model_depth(model.get()));

  const json config = resolved_config(cfg, &grid);
  std::string csv = "# config: " + config.dump() + "\n";
  csv += "log10_eps,h1,h2,S_k1,S_k2,S_is_convergent,h1_hat,h1_hat_plus";
  for (std::size_t n = 1; n <= depth; ++n) csv += ",ghat_" + std::to_string(n);
  for (std::size_t n = 1; n <= depth; ++n) csv += ",ghat_plus_" + std::to_string(n);
  csv += "\n";

  std::vector<double> g(depth), gp(depth);
  int sandwich_violations = 0;
  for (std::size_t i = 0; i < nct_scan_rows(scan.get()); ++i) {
    nct_scan_row r;
    check(nct_scan_row_at(scan.get(), i, &r));
    check(nct_scan_curves(scan.get(), i, g.data(), gp.data(), depth));
    const auto& d = r.dominance;
    if (d.h1 > r.h1_hat * (1 + 1e-12) || r.h1_hat > r.h1_hat_plus * (1 + 1e-12)) ++sandwich_violations;
    csv += fmt(std::log10(d.eps)) + "," + fmt(d.h1) + "," + fmt(d.h2) + "," +
           std::to_string(d.S[0]) + "," + std::to_string(d.S[1]) + "," +
           std::to_string(d.S_is_convergent) + "," + fmt(r.h1_hat) + "," + fmt(r.h1_hat_plus);
    for (double v : g) csv += "," + fmt(v);
    for (double v : gp) csv += "," + fmt(v);
    csv += "\n";
  }
  nct_bnum b;
  check(nct_scan_bnum(scan.get(), &b));
  nct_constants c;
  check(nct_model_constants(model.get(), &c));

  const auto csv_path = out_path(cfg, "scan.csv");
  write_text(csv_path, csv);
  json summary{{"config", config},
               {"constants", constants_json(c)},
               {"B_num", b.value},
               {"B_num_eps", b.eps_at},
               {"crossovers", b.crossovers},
               {"rows", grid.eps.size()},
               {"sandwich_violations", sandwich_violations},
               {"table", csv_path.filename().string()}};
  write_json(out_path(cfg, "scan_summary.json"), summary);

  out << "rows        " << grid.eps.size() << "\n";
  out << "window      [" << fmt(grid.window.first, 6) << ", " << fmt(grid.window.second, 6) << "]\n";
  out << "B_num       " << fmt(b.value, 8) << "  at eps = " << fmt(b.eps_at, 6) << "\n";
  out << "B           " << fmt(c.B, 8) << "\n";
  out << "crossovers  " << b.crossovers << "\n";
  out << "table       " << csv_path.string() << "\n";
  return kOk;
}

int cmd_bound(const RunConfig& cfg, std::ostream& out) {
  auto model = make_model(cfg);
  Grid grid;
  if (!cfg.eps_list.empty()) {
    grid.eps = cfg.eps_list;
    double wlo = 0, whi = 0;
    check(nct_model_default_window(model.get(), &wlo, &whi));
    grid.window = cfg.window.value_or(std::make_pair(wlo, whi));
  } else {
    grid = resolve_grid(cfg, model.get(), 21);
  }
  const json config = resolved_config(cfg, &grid);
  std::string csv = "# config: " + config.dump() + "\n";
  csv +=
      "log10_eps,mu_mantissa,mu_exponent,h1,S_k1,S_k2,estimate_mantissa,estimate_exponent,"
      "floor_mantissa,floor_exponent,log10_estimate,log10_floor,log10_mu_S_LS,"
      "log10_mu_max_M,max_M_ratio,spillover,in_window\n";
  int floor_violations = 0;
  json rows = json::array();
  for (double eps : grid.eps) {
    nct_lower_bound lb;
    nct_second_sum ss;
    nct_field_max fm;
    check(nct_lower_bound_at(model.get(), eps, &lb));
    check(nct_second_sum_at(model.get(), eps, 40.0, &ss));
    check(nct_field_max_at(model.get(), eps, 512, &fm));
    const double log10_mu = cfg.p * std::log10(eps);
    const auto mu = sci(log10_mu);
    const bool in_window = eps >= grid.window.first && eps <= grid.window.second;
    if (in_window && lb.log10_floor > lb.log10_estimate) ++floor_violations;
    const double ratio = fm.max_rel / fm.dominant_rel;
    csv += fmt(std::log10(eps)) + "," + fmt(mu.first, 12) + "," + std::to_string(mu.second) +
           "," + fmt(lb.h1) + "," + std::to_string(lb.S[0]) + "," + std::to_string(lb.S[1]) +
           "," + fmt(lb.estimate_mantissa, 12) + "," + std::to_string(lb.estimate_exponent) +
           "," + fmt(lb.floor_mantissa, 12) + "," + std::to_string(lb.floor_exponent) + "," +
           fmt(lb.log10_estimate) + "," + fmt(lb.log10_floor) + "," + fmt(lb.log10_dominant) +
           "," + fmt(log10_mu + fm.log10_max) + "," + fmt(ratio) + "," + fmt(ss.ratio) + "," +
           std::to_string(in_window) + "\n";
    rows.push_back({{"eps", eps},
                    {"S", {lb.S[0], lb.S[1]}},
                    {"h1", lb.h1},
                    {"log10_estimate", lb.log10_estimate},
                    {"log10_floor", lb.log10_floor},
                    {"spillover", ss.ratio}});
  }
  nct_constants c;
  check(nct_model_constants(model.get(), &c));
  const auto csv_path = out_path(cfg, "bound.csv");
  write_text(csv_path, csv);
  write_json(out_path(cfg, "bound_summary.json"),
             json{{"config", config},
                  {"constants", constants_json(c)},
                  {"floor_violations", floor_violations},
                  {"rows", rows},
                  {"table", csv_path.filename().string()}});

  out << "rows              " << grid.eps.size() << "\n";
  out << "C0, C             " << fmt(c.C0, 8) << ", " << fmt(c.C, 8) << "\n";
  out << "floor violations  " << floor_violations << "\n";
  out << "table             " << csv_path.string() << "\n";
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  auto model = make_model(cfg);
  nct_verify_options opt;
  nct_verify_options_default(&opt);
  struct Ctx {
    std::ostream* out;
    json checks = json::array();
  } ctx{&out};
  int failures = 0;
  check(nct_verify(
      model.get(), &opt,
      [](const nct_check* c, void* user) {
        auto* ctx = static_cast<Ctx*>(user);
        *ctx->out << (c->passed ? "PASS " : "FAIL ") << c->name << "  observed=" << fmt(c->observed, 6)
                  << " tolerance=" << fmt(c->tolerance, 6) << "  " << c->detail << "\n";
        ctx->checks.push_back({{"name", c->name},
                               {"passed", static_cast<bool>(c->passed)},
                               {"observed", c->observed},
                               {"expected", c->expected},
                               {"tolerance", c->tolerance},
                               {"detail", c->detail}});
      },
      &ctx, &failures));
  out << (failures == 0 ? "all checks passed" : std::to_string(failures) + " check(s) failed")
      << "\n";
  if (const auto dir = explicit_out_dir(cfg); !dir.empty()) {
    write_json(out_path(cfg, "verify.json"), json{{"config", resolved_config(cfg, nullptr)},
                                                  {"failures", failures},
                                                  {"checks", ctx.checks}});
  }
  return failures == 0 ? kOk : kVerifyFailed;
}

}  // namespace cli
