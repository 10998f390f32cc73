#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nct/certified_real.hpp"
#include "nct/continued_fraction.hpp"

namespace nct {

enum class OmegaKind { Shallit, Golden, Quotients, Periodic, Enclosure };

/// User-facing description of the frequency ratio Omega.
struct OmegaSpec {
  OmegaKind kind = OmegaKind::Shallit;
  int shallit_order = 8;                 ///< K for OmegaKind::Shallit
  std::vector<std::int64_t> quotients;   ///< explicit list (Quotients)
  std::vector<std::int64_t> preperiod;   ///< Periodic: leading block
  std::vector<std::int64_t> period;      ///< Periodic: repeating block
  std::string lo;                        ///< Enclosure endpoints
  std::string hi;

  static OmegaSpec shallit(int K);
  static OmegaSpec golden();
  static OmegaSpec explicit_quotients(std::vector<std::int64_t> a);
  static OmegaSpec periodic(std::vector<std::int64_t> preperiod,
                            std::vector<std::int64_t> period);
  static OmegaSpec enclosure(std::string lo, std::string hi);

  std::string describe() const;
};

/// Omega together with its certified partial quotients.
struct Frequency {
  OmegaSpec spec;
  CertifiedReal omega;
  PartialQuotients quotients;

  bool purely_periodic() const {
    return (spec.kind == OmegaKind::Periodic && spec.preperiod.empty()) ||
           spec.kind == OmegaKind::Golden;
  }
  std::vector<std::int64_t> period() const;
};

/// Builds Omega and certifies up to `depth` partial quotients. For the
/// Shallit and enclosure forms the certified depth may be smaller than
/// requested; explicit and periodic lists are certified by construction.
Frequency make_frequency(const OmegaSpec& spec, int depth);

}  // namespace nct
