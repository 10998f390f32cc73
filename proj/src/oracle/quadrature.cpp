#include <quadmath.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

#include "nct/errors.hpp"
#include "nct/oracle.hpp"

namespace nct::oracle {

namespace {

using quad = __float128;

struct Rule {
  std::vector<quad> x;  // nodes on [-1, 1]
  std::vector<quad> w;
};

// Legendre nodes by Newton iteration from the Chebyshev-like initial guess.
Rule gauss_legendre(int n) {
  Rule r;
  r.x.resize(static_cast<std::size_t>(n));
  r.w.resize(static_cast<std::size_t>(n));
  const quad pi = M_PIq;
  for (int i = 0; i < n; ++i) {
    quad x = cosq(pi * (i + 0.75Q) / (n + 0.5Q));
    quad dp = 0;
    for (int it = 0; it < 100; ++it) {
      quad p0 = 1, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const quad p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const quad dx = p1 / dp;
      x -= dx;
      if (fabsq(dx) < 1e-33Q) break;
    }
    quad p0 = 1, p1 = x;
    for (int j = 2; j <= n; ++j) {
      const quad p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1);
    r.x[static_cast<std::size_t>(i)] = x;
    r.w[static_cast<std::size_t>(i)] = 2 / ((1 - x * x) * dp * dp);
  }
  return r;
}

const Rule& cached_rule(int n) {
  static std::mutex mutex;
  static std::map<int, Rule> rules;
  std::lock_guard lock(mutex);
  auto it = rules.find(n);
  if (it == rules.end()) it = rules.emplace(n, gauss_legendre(n)).first;
  return it->second;
}

// 2 sech^2 t cos(a t) integrated over [0, T] with `panels` equal panels.
quad composite(quad a, quad T, int panels, const Rule& rule) {
  const quad h = T / panels;
  quad sum = 0;
  for (int p = 0; p < panels; ++p) {
    const quad mid = (p + 0.5Q) * h;
    quad part = 0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      const quad t = mid + 0.5Q * h * rule.x[i];
      const quad e = expq(-2 * t);
      const quad sech2 = 4 * e / ((1 + e) * (1 + e));
      part += rule.w[i] * 2 * sech2 * cosq(a * t);
    }
    sum += part * 0.5Q * h;
  }
  return 2 * sum;  // even integrand
}

}  // namespace

double closed_form_integral(double a) {
  if (a == 0) return 4;
  const double x = std::numbers::pi * std::abs(a) / 2;
  return 4 * x / std::sinh(x);
}

QuadratureResult quadrature_integral(double a, double rho_norm, const QuadratureSpec& spec) {
  if (!(spec.T > 0)) throw DomainError("quadrature window T must be positive");
  if (spec.panels < 16) throw DomainError("quadrature needs at least 16 panels");
  if (spec.nodes < 1 || spec.nodes > 64) throw DomainError("quadrature nodes must be in 1..64");
  if (!std::isfinite(a)) throw DomainError("divisor must be finite");

  // At least 8 nodes per period of cos(a t).
  const double periods = std::abs(a) * spec.T / (2 * std::numbers::pi);
  const int needed = static_cast<int>(std::ceil(8 * periods / spec.nodes));
  const int coarse = std::max(spec.panels, needed);

  const Rule& rule = cached_rule(spec.nodes);
  const quad qa = a;
  const quad qT = spec.T;
  const quad q1 = composite(qa, qT, coarse, rule);
  const quad q2 = composite(qa, qT, 2 * coarse, rule);

  QuadratureResult r;
  r.integral = static_cast<double>(q2);
  r.discretization = static_cast<double>(fabsq(q1 - q2));
  r.tail_bound = 8 * std::exp(-2 * spec.T);
  r.panels = 2 * coarse;
  r.value = static_cast<double>(q2 * expq(-static_cast<quad>(rho_norm)));

  if (spec.target) {
    const double rel = r.error_bound() / std::abs(r.integral);
    if (!(rel <= *spec.target)) {
      std::ostringstream msg;
      msg << "quadrature accuracy " << rel << " misses target " << *spec.target << " (";
      if (r.tail_bound > r.discretization) {
        msg << "tail dominates; raise T to at least "
            << std::ceil(0.5 * std::log(8 / (*spec.target * std::abs(r.integral))) + 1);
      } else {
        msg << "discretization dominates; try panels = " << 4 * coarse;
      }
      msg << ")";
      throw PrecisionError(msg.str());
    }
  }
  return r;
}

QuadratureResult quadrature_melnikov_coefficient(IntVec2 k, double eps, double rho,
                                                 const SmallDivisor& divisor,
                                                 const QuadratureSpec& spec) {
  if (k.is_zero()) throw DomainError("k = 0 is not a harmonic");
  if (!(eps > 0)) throw DomainError("eps must be positive");
  const double a = divisor.signed_value(k) / std::sqrt(eps);
  return quadrature_integral(a, rho * static_cast<double>(k.l1()), spec);
}

}  // namespace nct::oracle
