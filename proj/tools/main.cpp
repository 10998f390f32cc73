#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"

namespace {

struct Flags {
  std::vector<std::string> omega;
  std::optional<int> K, depth, grid_points;
  std::optional<double> rho, p, eps_min, eps_max, corrupt;
  std::optional<std::string> phases, policy, out, config;
  std::optional<std::uint64_t> seed;
  std::vector<double> window;
  std::vector<double> eps;
};

void add_common(CLI::App& sub, Flags& f) {
  sub.add_option("--omega", f.omega,
                 "shallit | golden | quotients <list> | periodic <[pre;]period> | enclosure <lo> <hi>")
      ->expected(1, 3);
  sub.add_option("--K", f.K, "truncation order of the Shallit series");
  sub.add_option("--depth", f.depth, "number of certified convergents N");
  sub.add_option("--rho", f.rho, "analyticity width rho");
  sub.add_option("--p", f.p, "exponent p in mu = eps^p");
  sub.add_option("--phases", f.phases, "zero | random");
  sub.add_option("--seed", f.seed, "seed for random phases");
  sub.add_option("--policy", f.policy, "dominant-harmonic search: reduction | cutoff");
  sub.add_option("--eps-min", f.eps_min, "smallest grid eps");
  sub.add_option("--eps-max", f.eps_max, "largest grid eps");
  sub.add_option("--grid-points", f.grid_points, "log-spaced grid size");
  sub.add_option("--window", f.window, "asymptotic eps window <lo> <hi>")->expected(2);
  sub.add_option("--out", f.out, "output directory (default: $NCT_OUTPUT_DIR or .)");
  sub.add_option("--config", f.config, "JSON config file; flags override it");
  auto* hidden = sub.add_option("--corrupt-gamma-star", f.corrupt, "test hook");
  hidden->group("");
}

cli::RunConfig resolve(const Flags& f, const std::string& command) {
  cli::RunConfig cfg = f.config ? cli::load_config_file(*f.config) : cli::RunConfig{};
  if (command == "cf" && !f.depth && !f.config) cfg.depth = 15;
  if (!f.omega.empty()) {
    const auto& kind = f.omega[0];
    cfg.omega.kind = kind;
    const std::size_t want = kind == "enclosure" ? 3 : (kind == "quotients" || kind == "periodic") ? 2 : 1;
    if (f.omega.size() != want) {
      throw cli::Failure(cli::kUsage, "--omega " + kind + " takes " + std::to_string(want - 1) +
                                          " value(s)");
    }
    if (kind == "quotients") cfg.omega.quotients = cli::parse_list(f.omega[1]);
    if (kind == "periodic") cli::parse_periodic(f.omega[1], cfg.omega);
    if (kind == "enclosure") {
      cfg.omega.lo = f.omega[1];
      cfg.omega.hi = f.omega[2];
    }
  }
  if (f.K) cfg.omega.K = *f.K;
  if (f.depth) cfg.depth = *f.depth;
  if (f.rho) cfg.rho = *f.rho;
  if (f.p) cfg.p = *f.p;
  if (f.phases) cfg.phases = *f.phases;
  if (f.seed) cfg.seed = *f.seed;
  if (f.policy) cfg.policy = *f.policy;
  if (f.eps_min) cfg.eps_min = *f.eps_min;
  if (f.eps_max) cfg.eps_max = *f.eps_max;
  if (f.grid_points) cfg.grid_points = *f.grid_points;
  if (!f.window.empty()) cfg.window = std::make_pair(f.window[0], f.window[1]);
  if (!f.eps.empty()) cfg.eps_list = f.eps;
  if (f.out) cfg.out_dir = *f.out;
  if (f.corrupt) cfg.corrupt_gamma_star = *f.corrupt;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nctsplit: continued fractions, Diophantine constants and exponentially small "
               "splitting estimates for a frequency ratio of constant type"};
  app.require_subcommand(1);
  Flags flags;
  auto* cf = app.add_subcommand("cf", "partial quotients, convergents, nu_{q_n} and gamma_{v(n)}");
  auto* constants = app.add_subcommand("constants", "Diophantine limits and splitting constants");
  auto* scan = app.add_subcommand("scan", "h1 / h2 / envelope curves over a log eps grid");
  auto* bound = app.add_subcommand("bound", "lower-bound estimate and dominance diagnostics");
  auto* verify = app.add_subcommand("verify", "oracle cross-checks; exit 1 on any failure");
  for (auto* sub : {cf, constants, scan, bound, verify}) add_common(*sub, flags);
  bound->add_option("--eps", flags.eps, "explicit eps values (overrides the grid)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kUsage;
  }

  try {
    const auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    const cli::RunConfig cfg = resolve(flags, name);
    if (name == "cf") return cli::cmd_cf(cfg, std::cout);
    if (name == "constants") return cli::cmd_constants(cfg, std::cout);
    if (name == "scan") return cli::cmd_scan(cfg, std::cout);
    if (name == "bound") return cli::cmd_bound(cfg, std::cout);
    return cli::cmd_verify(cfg, std::cout);
  } catch (const cli::Failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kInternal;
  }
}
