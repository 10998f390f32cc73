#include "nct/frequency.hpp"

#include <sstream>

#include "nct/errors.hpp"

namespace nct {

OmegaSpec OmegaSpec::shallit(int K) {
  OmegaSpec s;
  s.kind = OmegaKind::Shallit;
  s.shallit_order = K;
  return s;
}

OmegaSpec OmegaSpec::golden() {
  OmegaSpec s;
  s.kind = OmegaKind::Golden;
  s.period = {1};
  return s;
}

OmegaSpec OmegaSpec::explicit_quotients(std::vector<std::int64_t> a) {
  OmegaSpec s;
  s.kind = OmegaKind::Quotients;
  s.quotients = std::move(a);
  return s;
}

OmegaSpec OmegaSpec::periodic(std::vector<std::int64_t> preperiod,
                              std::vector<std::int64_t> period) {
  OmegaSpec s;
  s.kind = OmegaKind::Periodic;
  s.preperiod = std::move(preperiod);
  s.period = std::move(period);
  return s;
}

OmegaSpec OmegaSpec::enclosure(std::string lo, std::string hi) {
  OmegaSpec s;
  s.kind = OmegaKind::Enclosure;
  s.lo = std::move(lo);
  s.hi = std::move(hi);
  return s;
}

namespace {

std::string join(const std::vector<std::int64_t>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

void check_positive(const std::vector<std::int64_t>& v, const char* what) {
  for (auto a : v) {
    if (a < 1) throw DomainError(std::string(what) + " entries must be positive integers");
  }
}

}  // namespace

std::string OmegaSpec::describe() const {
  switch (kind) {
    case OmegaKind::Shallit:
      return "shallit K=" + std::to_string(shallit_order);
    case OmegaKind::Golden:
      return "golden";
    case OmegaKind::Quotients:
      return "quotients " + join(quotients);
    case OmegaKind::Periodic:
      return "periodic " + (preperiod.empty() ? "" : join(preperiod) + ";") + join(period);
    case OmegaKind::Enclosure:
      return "enclosure " + lo + " " + hi;
  }
  return "unknown";
}

std::vector<std::int64_t> Frequency::period() const {
  return spec.kind == OmegaKind::Golden ? std::vector<std::int64_t>{1} : spec.period;
}

Frequency make_frequency(const OmegaSpec& spec, int depth) {
  if (depth < 1) throw DomainError("depth must be >= 1");
  switch (spec.kind) {
    case OmegaKind::Shallit: {
      auto omega = shallit_number(spec.shallit_order);
      auto pq = expand_continued_fraction(omega, depth);
      return {spec, std::move(omega), std::move(pq)};
    }
    case OmegaKind::Golden:
    case OmegaKind::Periodic: {
      auto period = spec.kind == OmegaKind::Golden ? std::vector<std::int64_t>{1} : spec.period;
      if (period.empty()) throw DomainError("periodic list needs a nonempty period");
      check_positive(period, "period");
      check_positive(spec.preperiod, "preperiod");
      // Quadratic surds are known exactly; the enclosure is a deep cylinder
      // so divisors of the certified convergents are resolved.
      const std::size_t total = static_cast<std::size_t>(2 * depth + 24);
      std::vector<std::int64_t> a(spec.preperiod);
      while (a.size() < total) {
        for (auto x : period) a.push_back(x);
      }
      a.resize(total);
      auto omega = cylinder_enclosure(a);
      a.resize(static_cast<std::size_t>(depth));
      return {spec, std::move(omega), PartialQuotients(std::move(a), depth)};
    }
    case OmegaKind::Quotients: {
      if (spec.quotients.empty()) throw DomainError("explicit quotient list is empty");
      check_positive(spec.quotients, "quotient");
      auto omega = cylinder_enclosure(spec.quotients);
      std::vector<std::int64_t> a(spec.quotients);
      int n = std::min<int>(depth, static_cast<int>(a.size()));
      return {spec, std::move(omega), PartialQuotients(std::move(a), n)};
    }
    case OmegaKind::Enclosure: {
      CertifiedReal omega(parse_rational(spec.lo), parse_rational(spec.hi));
      auto pq = expand_continued_fraction(omega, depth);
      return {spec, std::move(omega), std::move(pq)};
    }
  }
  throw DomainError("unknown omega kind");
}

}  // namespace nct
