#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nct/diophantine.hpp"
#include "nct/frequency.hpp"
#include "nct/lattice.hpp"
#include "nct/melnikov.hpp"

namespace nct {

/// Splitting constants derived from the windowed Diophantine limits.
struct ConstantsBundle {
  double gamma_star = 0;
  double nu_star = 0;
  double nu_limsup = 0;
  double E = 0;
  std::int64_t M = 0;
  double rho = 0;
  double C0 = 0;  ///< sqrt(2 pi rho gamma*)
  double D0 = 0;  ///< (pi gamma* / (2 rho))^2
  double B = 0;   ///< (E/2)((EM)^{1/2} + (EM)^{-1/2})
  double C = 0;   ///< C0 * B
  IndexWindow window;
};

ConstantsBundle constants_bundle(const DiophantineLimits& limits, double rho);

struct HarmonicProfile {
  IntVec2 k;
  double gamma = 0;        ///< |<k, omega>| |k|
  double gamma_tilde = 0;  ///< gamma / gamma*
  double eps_k = 0;        ///< D0 gamma_tilde^2 / |k|^4, where g_k is minimal
};

HarmonicProfile harmonic_profile(IntVec2 k, const ConstantsBundle& constants,
                                 const SmallDivisor& divisor);

/// g_k(eps) = G(eps; eps_k, gamma_tilde_k).
double g_of(const HarmonicProfile& h, double eps);

/// Profile of the resonant convergent v(n) = (-p_n, q_n).
struct ConvergentProfile {
  int n = 0;
  HarmonicProfile profile;
};

struct ModelOptions {
  int depth = 60;                        ///< number of convergents N to use
  std::optional<IndexWindow> window;     ///< Diophantine window, default upper half
  std::optional<double> gamma_star;      ///< override of the windowed estimate
  double gamma_star_corruption = 1.0;    ///< test hook: rescales gamma* after C0, D0
};

/// Immutable bundle of Omega, its certified convergents, the perturbation
/// parameters and the derived constants. Safe to share across threads.
class SplittingModel {
 public:
  SplittingModel(Frequency frequency, ModelParams params, ModelOptions options = {});

  const Frequency& frequency() const { return frequency_; }
  const SmallDivisor& divisor() const { return divisor_; }
  const ModelParams& params() const { return params_; }
  const ModelOptions& options() const { return options_; }
  const DiophantineLimits& limits() const { return limits_; }
  const ConstantsBundle& constants() const { return constants_; }

  /// Profiles of v(1)..v(N).
  std::span<const ConvergentProfile> convergent_profiles() const { return profiles_; }
  int depth() const { return static_cast<int>(profiles_.size()); }

  /// eps_{v(n)}, 1 <= n <= depth().
  double eps_of_convergent(int n) const;
  /// Smallest eps the certified data covers: eps_{v(N)}.
  double eps_floor() const { return eps_of_convergent(depth()); }
  /// [eps_{v(N)}, eps_{v(5)}].
  std::pair<double, double> default_window() const;

  /// Index n in -1..N when k = +-v(n).
  std::optional<int> convergent_index(IntVec2 k) const;

  /// Throws DepthError when eps lies below the certified convergent range.
  void require_covered(double eps) const;

  /// Same frequency and options with a different rho.
  SplittingModel with_rho(double rho) const;

 private:
  Frequency frequency_;
  SmallDivisor divisor_;
  ModelParams params_;
  ModelOptions options_;
  DiophantineLimits limits_;
  ConstantsBundle constants_;
  std::vector<ConvergentProfile> profiles_;
};

}  // namespace nct
