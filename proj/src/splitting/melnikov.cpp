#include "nct/melnikov.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "nct/errors.hpp"

namespace nct {

using std::numbers::pi;

void ModelParams::validate() const {
  if (!(rho > 0) || !std::isfinite(rho)) throw DomainError("rho must be > 0");
  if (!(p_exponent > 3) || !std::isfinite(p_exponent)) {
    throw DomainError("p must be > 3 (mu = eps^p)");
  }
}

double ModelParams::phase(IntVec2 k) const {
  if (phases == PhasePolicy::Zero) return 0.0;
  auto c = k.canonical();
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(c.k1), static_cast<std::uint32_t>(c.k1 >> 32),
                    static_cast<std::uint32_t>(c.k2), static_cast<std::uint32_t>(c.k2 >> 32)};
  std::mt19937_64 gen(seq);
  // 53 random bits -> [0, 1), platform independent.
  double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
  return 2 * pi * u;
}

double ModelParams::mu(double eps) const { return std::pow(eps, p_exponent); }

double LogValue::value() const { return std::exp(log); }
double LogValue::log10() const { return log / std::numbers::ln10; }

Scientific Scientific::from_log10(double v) {
  if (!std::isfinite(v)) return {0.0, 0};
  double e = std::floor(v);
  double m = std::pow(10.0, v - e);
  if (m >= 10.0) {
    m /= 10.0;
    e += 1;
  }
  return {m, static_cast<long>(e)};
}

std::string Scientific::str(int digits) const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*fe%+ld", digits, mantissa, exponent);
  return buf;
}

LogValue melnikov_coefficient_from_divisor(double a, double rho_norm) {
  // 2 pi a / sinh(pi a / 2) = 4x / sinh(x) with x = pi a / 2.
  const double x = 0.5 * pi * std::abs(a);
  double log_prefactor;
  if (x < 1e-4) {
    log_prefactor = std::log(4.0) + std::log1p(-x * x / 6.0);
  } else {
    // log sinh x = x + log1p(-e^{-2x}) - log 2, stable for large x.
    double log_sinh = x + std::log1p(-std::exp(-2 * x)) - std::numbers::ln2;
    log_prefactor = std::log(4.0 * x) - log_sinh;
  }
  return {log_prefactor - rho_norm};
}

LogValue melnikov_coefficient(IntVec2 k, double eps, double rho,
                              const SmallDivisor& divisor) {
  if (k.is_zero()) throw DomainError("L_k undefined for k = 0");
  if (!(eps > 0)) throw DomainError("eps must be > 0");
  const double a = divisor.abs_value(k) / std::sqrt(eps);
  return melnikov_coefficient_from_divisor(a, rho * static_cast<double>(k.l1()));
}

ExponentPair exponent_decomposition(IntVec2 k, double eps, double rho,
                                    const SmallDivisor& divisor) {
  if (k.is_zero()) throw DomainError("exponents undefined for k = 0");
  if (!(eps > 0)) throw DomainError("eps must be > 0");
  const double norm = static_cast<double>(k.l1());
  const double gamma = divisor.abs_value(k) * norm;
  const double root = std::sqrt(eps);
  return {4 * pi * gamma / (norm * root), rho * norm + pi * gamma / (2 * norm * root)};
}

double g_function(double eps, double X, double Y) {
  if (!(eps > 0 && X > 0 && Y > 0)) throw DomainError("G requires eps, X, Y > 0");
  const double r = std::sqrt(std::sqrt(eps / X));
  return 0.5 * std::sqrt(Y) * (r + 1.0 / r);
}

}  // namespace nct
