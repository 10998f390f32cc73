#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace cli {

void check(nct_status status) {
  switch (status) {
    case NCT_OK:
      return;
    case NCT_ERR_ARGUMENT:
      throw Failure(kUsage, nct_last_error());
    case NCT_ERR_PRECISION:
      throw Failure(kPrecision, std::string(nct_last_error()) +
                                    " (hint: raise --K or supply a narrower enclosure)");
    case NCT_ERR_DEPTH: {
      std::string msg = nct_last_error();
      if (int n = nct_last_required_depth(); n > 0) {
        msg += " (required depth N = " + std::to_string(n) + ")";
      }
      throw Failure(kPrecision, msg);
    }
    default:
      throw Failure(kInternal, nct_last_error());
  }
}

std::vector<std::int64_t> parse_list(const std::string& text) {
  std::string s = text;
  for (char& c : s) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(s);
  std::vector<std::int64_t> out;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw Failure(kUsage, "not an integer list: '" + text + "'");
    out.push_back(v);
  }
  if (out.empty()) throw Failure(kUsage, "empty integer list");
  return out;
}

void parse_periodic(const std::string& text, OmegaConfig& out) {
  const auto semi = text.find(';');
  if (semi == std::string::npos) {
    out.preperiod.clear();
    out.period = parse_list(text);
  } else {
    const std::string pre = text.substr(0, semi);
    out.preperiod = pre.find_first_not_of(" ,") == std::string::npos ? std::vector<std::int64_t>{}
                                                                      : parse_list(pre);
    out.period = parse_list(text.substr(semi + 1));
  }
}

void RunConfig::validate() const {
  static const std::vector<std::string> kinds{"shallit", "golden", "quotients", "periodic",
                                              "enclosure"};
  if (std::find(kinds.begin(), kinds.end(), omega.kind) == kinds.end()) {
    throw Failure(kUsage, "unknown omega kind '" + omega.kind + "'");
  }
  if (omega.kind == "shallit" && (omega.K < 1 || omega.K > 20)) {
    throw Failure(kUsage, "--K must be in 1..20");
  }
  if (omega.kind == "quotients" && omega.quotients.empty()) {
    throw Failure(kUsage, "quotients omega needs a list");
  }
  if (omega.kind == "periodic" && omega.period.empty()) {
    throw Failure(kUsage, "periodic omega needs a period");
  }
  if (omega.kind == "enclosure" && (omega.lo.empty() || omega.hi.empty())) {
    throw Failure(kUsage, "enclosure omega needs lo and hi");
  }
  if (depth < 5) throw Failure(kUsage, "--depth must be >= 5");
  if (!(rho > 0)) throw Failure(kUsage, "--rho must be > 0");
  if (!(p > 3)) throw Failure(kUsage, "--p must be > 3");
  if (phases != "zero" && phases != "random") throw Failure(kUsage, "--phases must be zero|random");
  if (policy != "reduction" && policy != "cutoff") {
    throw Failure(kUsage, "--policy must be reduction|cutoff");
  }
  if (eps_min && !(*eps_min > 0)) throw Failure(kUsage, "--eps-min must be > 0");
  if (eps_min && eps_max && !(*eps_min < *eps_max)) {
    throw Failure(kUsage, "--eps-min must be < --eps-max");
  }
  if (grid_points && *grid_points < 2) throw Failure(kUsage, "--grid-points must be >= 2");
  if (window && !(window->first > 0 && window->first < window->second)) {
    throw Failure(kUsage, "--window needs 0 < lo < hi");
  }
  for (double e : eps_list) {
    if (!(e > 0)) throw Failure(kUsage, "--eps values must be > 0");
  }
  if (!(corrupt_gamma_star > 0)) throw Failure(kUsage, "gamma* corruption must be > 0");
}

json RunConfig::to_json() const {
  json o{{"kind", omega.kind}};
  if (omega.kind == "shallit") o["K"] = omega.K;
  if (omega.kind == "quotients") o["quotients"] = omega.quotients;
  if (omega.kind == "periodic") {
    o["preperiod"] = omega.preperiod;
    o["period"] = omega.period;
  }
  if (omega.kind == "enclosure") {
    o["lo"] = omega.lo;
    o["hi"] = omega.hi;
  }
  json j{{"omega", o},
         {"model",
          {{"depth", depth}, {"rho", rho}, {"p", p}, {"phases", phases}, {"seed", seed}}},
         {"search", {{"policy", policy}}}};
  json grid = json::object();
  if (eps_min) grid["eps_min"] = *eps_min;
  if (eps_max) grid["eps_max"] = *eps_max;
  if (grid_points) grid["points"] = *grid_points;
  j["grid"] = grid;
  if (window) j["window"] = {window->first, window->second};
  if (!eps_list.empty()) j["eps"] = eps_list;
  if (corrupt_gamma_star != 1.0) j["corrupt_gamma_star"] = corrupt_gamma_star;
  return j;
}

namespace {

template <class T>
void take(const json& j, const char* key, T& dst) {
  if (j.contains(key)) dst = j.at(key).get<T>();
}

template <class T>
void take_opt(const json& j, const char* key, std::optional<T>& dst) {
  if (j.contains(key)) dst = j.at(key).get<T>();
}

}  // namespace

void apply_json(RunConfig& cfg, const json& j) {
  try {
    if (j.contains("omega")) {
      const auto& o = j.at("omega");
      if (o.is_string()) {
        cfg.omega.kind = o.get<std::string>();
      } else {
        take(o, "kind", cfg.omega.kind);
        take(o, "K", cfg.omega.K);
        take(o, "quotients", cfg.omega.quotients);
        take(o, "preperiod", cfg.omega.preperiod);
        take(o, "period", cfg.omega.period);
        take(o, "lo", cfg.omega.lo);
        take(o, "hi", cfg.omega.hi);
      }
    }
    if (j.contains("model")) {
      const auto& m = j.at("model");
      take(m, "depth", cfg.depth);
      take(m, "rho", cfg.rho);
      take(m, "p", cfg.p);
      take(m, "phases", cfg.phases);
      take(m, "seed", cfg.seed);
    }
    if (j.contains("search")) take(j.at("search"), "policy", cfg.policy);
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      take_opt(g, "eps_min", cfg.eps_min);
      take_opt(g, "eps_max", cfg.eps_max);
      take_opt(g, "points", cfg.grid_points);
    }
    if (j.contains("window")) {
      const auto w = j.at("window").get<std::vector<double>>();
      if (w.size() != 2) throw Failure(kUsage, "config window needs two values");
      cfg.window = std::make_pair(w[0], w[1]);
    }
    take(j, "eps", cfg.eps_list);
    if (j.contains("output")) take(j.at("output"), "dir", cfg.out_dir);
  } catch (const json::exception& e) {
    throw Failure(kUsage, std::string("bad config: ") + e.what());
  }
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure(kUsage, "cannot read config file " + path);
  json j;
  try {
    j = json::parse(in, nullptr, true, true);
  } catch (const json::exception& e) {
    throw Failure(kUsage, "cannot parse " + path + ": " + e.what());
  }
  RunConfig cfg;
  apply_json(cfg, j);
  return cfg;
}

OmegaSpecHolder::OmegaSpecHolder(const OmegaConfig& c) : cfg(c) {
  if (cfg.kind == "shallit") {
    spec.kind = NCT_OMEGA_SHALLIT;
    spec.shallit_order = cfg.K;
  } else if (cfg.kind == "golden") {
    spec.kind = NCT_OMEGA_GOLDEN;
  } else if (cfg.kind == "quotients") {
    spec.kind = NCT_OMEGA_QUOTIENTS;
    spec.quotients = cfg.quotients.data();
    spec.n_quotients = cfg.quotients.size();
  } else if (cfg.kind == "periodic") {
    spec.kind = NCT_OMEGA_PERIODIC;
    spec.preperiod = cfg.preperiod.data();
    spec.n_preperiod = cfg.preperiod.size();
    spec.period = cfg.period.data();
    spec.n_period = cfg.period.size();
  } else {
    spec.kind = NCT_OMEGA_ENCLOSURE;
    spec.lo = cfg.lo.c_str();
    spec.hi = cfg.hi.c_str();
  }
}

nct_model_params model_params(const RunConfig& cfg) {
  nct_model_params p;
  nct_model_params_default(&p);
  p.rho = cfg.rho;
  p.p_exponent = cfg.p;
  p.phases = cfg.phases == "random" ? NCT_PHASES_RANDOM : NCT_PHASES_ZERO;
  p.seed = cfg.seed;
  p.depth = cfg.depth;
  p.gamma_star_corruption = cfg.corrupt_gamma_star;
  return p;
}

nct_search_policy search_policy(const RunConfig& cfg) {
  return cfg.policy == "cutoff" ? NCT_SEARCH_CUTOFF : NCT_SEARCH_REDUCTION;
}

}  // namespace cli
