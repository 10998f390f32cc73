#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nct/splitting_model.hpp"

namespace nct {

struct CheckResult {
  std::string name;
  bool passed = false;
  double observed = 0;
  double expected = 0;
  double tolerance = 0;
  std::string detail;
};

struct VerifyOptions {
  std::int64_t lattice_K_max = 500;
  int lattice_points = 20;
  int quadrature_max_l1 = 10;
  std::int64_t nu_sweep_Q = 10000;
  int sandwich_points = 200;
};

/// Runs the oracle cross-checks against `model`. Each result is passed to
/// `report` as soon as it is known and also returned.
std::vector<CheckResult> run_verification(
    const SplittingModel& model, const VerifyOptions& options,
    const std::function<void(const CheckResult&)>& report = {});

}  // namespace nct
