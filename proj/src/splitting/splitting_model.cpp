#include "nct/splitting_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nct/errors.hpp"

namespace nct {

using std::numbers::pi;

ConstantsBundle constants_bundle(const DiophantineLimits& limits, double rho) {
  if (!(rho > 0)) throw DomainError("rho must be > 0");
  ConstantsBundle c;
  c.gamma_star = limits.gamma_star_est;
  c.nu_star = limits.nu_star_est;
  c.nu_limsup = limits.nu_limsup_est;
  c.E = limits.E;
  c.M = limits.M;
  c.rho = rho;
  c.window = limits.window;
  c.C0 = std::sqrt(2 * pi * rho * c.gamma_star);
  c.D0 = std::pow(pi * c.gamma_star / (2 * rho), 2);
  const double em = c.E * static_cast<double>(c.M);
  c.B = 0.5 * c.E * (std::sqrt(em) + 1 / std::sqrt(em));
  c.C = c.C0 * c.B;
  return c;
}

HarmonicProfile harmonic_profile(IntVec2 k, const ConstantsBundle& constants,
                                 const SmallDivisor& divisor) {
  if (k.is_zero()) throw DomainError("harmonic profile undefined for k = 0");
  HarmonicProfile h;
  h.k = k;
  const double norm = static_cast<double>(k.l1());
  h.gamma = divisor.abs_value(k) * norm;
  h.gamma_tilde = h.gamma / constants.gamma_star;
  h.eps_k = constants.D0 * h.gamma_tilde * h.gamma_tilde / (norm * norm * norm * norm);
  return h;
}

double g_of(const HarmonicProfile& h, double eps) {
  return g_function(eps, h.eps_k, h.gamma_tilde);
}

namespace {

constexpr std::int64_t kLatticeLimit = std::int64_t{1} << 61;

}  // namespace

SplittingModel::SplittingModel(Frequency frequency, ModelParams params, ModelOptions options)
    : frequency_(std::move(frequency)),
      divisor_(frequency_.omega),
      params_(params),
      options_(std::move(options)) {
  params_.validate();
  if (options_.depth < 5) throw DomainError("depth must be >= 5");
  if (!(options_.gamma_star_corruption > 0)) {
    throw DomainError("gamma* corruption factor must be positive");
  }
  const int certified = frequency_.quotients.certified_depth();
  if (certified < options_.depth) {
    throw DepthError("only " + std::to_string(certified) + " partial quotients are certified, " +
                         std::to_string(options_.depth) +
                         " requested (raise the truncation order / enclosure precision)",
                     options_.depth);
  }
  auto resonant = resonant_convergents(frequency_.quotients, options_.depth);

  // Usable depth: v(n) must fit the 64-bit lattice and its divisor must be
  // resolved by the enclosure.
  std::vector<IntVec2> vecs;
  for (int n = 1; n <= options_.depth; ++n) {
    const auto& v = resonant[static_cast<std::size_t>(n + 1)];
    if (abs(v.k1) >= kLatticeLimit || abs(v.k2) >= kLatticeLimit) {
      throw DepthError("v(" + std::to_string(n) + ") exceeds the 63-bit lattice range; use depth <= " +
                           std::to_string(n - 1),
                       n - 1);
    }
    IntVec2 k{v.k1.get_si(), v.k2.get_si()};
    try {
      (void)divisor_.signed_value(k);
    } catch (const PrecisionError&) {
      throw DepthError("enclosure of Omega does not resolve <v(" + std::to_string(n) +
                           "), omega>; raise precision or use depth <= " + std::to_string(n - 1),
                       n - 1);
    }
    vecs.push_back(k);
  }

  IndexWindow window = options_.window.value_or(upper_half_window(options_.depth));
  limits_ = estimate_diophantine_limits(frequency_.quotients, frequency_.omega, window);
  if (options_.gamma_star) {
    limits_.gamma_star_est = *options_.gamma_star;
    limits_.nu_star_est = *options_.gamma_star / (1.0 + frequency_.omega.midpoint());
  }
  constants_ = constants_bundle(limits_, params_.rho);
  constants_.gamma_star *= options_.gamma_star_corruption;

  profiles_.reserve(vecs.size());
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    profiles_.push_back({static_cast<int>(i) + 1, harmonic_profile(vecs[i], constants_, divisor_)});
  }
}

double SplittingModel::eps_of_convergent(int n) const {
  if (n < 1 || n > depth()) {
    throw DepthError("convergent " + std::to_string(n) + " outside 1.." + std::to_string(depth()), n);
  }
  return profiles_[static_cast<std::size_t>(n - 1)].profile.eps_k;
}

std::pair<double, double> SplittingModel::default_window() const {
  return {eps_floor(), eps_of_convergent(5)};
}

std::optional<int> SplittingModel::convergent_index(IntVec2 k) const {
  const IntVec2 c = k.canonical();
  if (c == IntVec2{1, 0}) return -1;  // v(-1) = (-1, 0)
  if (c == IntVec2{0, 1}) return 0;   // v(0) = (0, 1)
  for (const auto& p : profiles_) {
    if (p.profile.k.canonical() == c) return p.n;
  }
  return std::nullopt;
}

void SplittingModel::require_covered(double eps) const {
  if (!(eps > 0)) throw DomainError("eps must be > 0");
  const double floor = eps_floor();
  if (eps >= floor) return;
  // eps_{v(n)} shrinks geometrically; extrapolate with the observed rate.
  const int n0 = std::max(1, depth() / 2);
  const double rate = std::log(eps_of_convergent(n0) / floor) / (depth() - n0);
  const int extra = static_cast<int>(std::ceil(std::log(floor / eps) / std::max(rate, 1e-3)));
  const int required = depth() + std::max(extra, 1);
  throw DepthError("insufficient depth: eps = " + std::to_string(eps) + " lies below eps_v(" +
                       std::to_string(depth()) + ") = " + std::to_string(floor) +
                       "; need about N = " + std::to_string(required) + " convergents",
                   required);
}

SplittingModel SplittingModel::with_rho(double rho) const {
  ModelParams p = params_;
  p.rho = rho;
  return SplittingModel(frequency_, p, options_);
}

}  // namespace nct
