#pragma once

#include <iosfwd>

#include "config.hpp"

namespace cli {

int cmd_cf(const RunConfig& cfg, std::ostream& out);
int cmd_constants(const RunConfig& cfg, std::ostream& out);
int cmd_scan(const RunConfig& cfg, std::ostream& out);
int cmd_bound(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);

}  // namespace cli
