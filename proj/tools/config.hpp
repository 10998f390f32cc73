#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "nct/nct.h"

namespace cli {

using json = nlohmann::ordered_json;

/// Exit codes of the front end.
enum Exit : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kPrecision = 3, kInternal = 4 };

/// Error carrying the process exit code.
struct Failure : std::runtime_error {
  Failure(int code, const std::string& what) : std::runtime_error(what), code(code) {}
  int code;
};

/// Throws Failure for a non-OK status of the C API.
void check(nct_status status);

struct OmegaConfig {
  std::string kind = "shallit";
  int K = 8;
  std::vector<std::int64_t> quotients;
  std::vector<std::int64_t> preperiod;
  std::vector<std::int64_t> period;
  std::string lo;
  std::string hi;
};

struct RunConfig {
  OmegaConfig omega;
  int depth = 60;
  double rho = 1.0;
  double p = 3.5;
  std::string phases = "zero";
  std::uint64_t seed = 0;
  std::string policy = "reduction";
  std::optional<double> eps_min;
  std::optional<double> eps_max;
  std::optional<int> grid_points;
  std::optional<std::pair<double, double>> window;
  std::vector<double> eps_list;
  std::string out_dir;
  double corrupt_gamma_star = 1.0;

  void validate() const;
  json to_json() const;
};

/// Overlays the keys present in `j` onto `cfg`.
void apply_json(RunConfig& cfg, const json& j);
RunConfig load_config_file(const std::string& path);

/// Parses "1,2,1" (commas or spaces).
std::vector<std::int64_t> parse_list(const std::string& text);
/// Parses "pre;period" or "period".
void parse_periodic(const std::string& text, OmegaConfig& out);

/// Keeps the arrays that the C spec points into alive.
struct OmegaSpecHolder {
  OmegaConfig cfg;
  nct_omega_spec spec{};
  explicit OmegaSpecHolder(const OmegaConfig& c);
  OmegaSpecHolder(const OmegaSpecHolder&) = delete;
  OmegaSpecHolder& operator=(const OmegaSpecHolder&) = delete;
};

nct_model_params model_params(const RunConfig& cfg);
nct_search_policy search_policy(const RunConfig& cfg);

}  // namespace cli
