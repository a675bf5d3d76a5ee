#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "cli/config.hpp"
#include "cli/table.hpp"

namespace wavepkt::cli {

/// Linear (or geometric when `log` is set) sweep of `points` values.
std::vector<double> sweep(double lo, double hi, std::uint64_t points, bool log, const char* what);

/// Unit label for a physical dimension ("length", "time", ...) in `mode`.
std::string unit_label(UnitMode mode, const std::string& dimension);

CurveTable run_spread(const Config& cfg, std::ostream& diag);
CurveTable run_density(const Config& cfg, std::ostream& diag);
CurveTable run_sql(const Config& cfg, std::ostream& diag);
CurveTable run_decohere(const Config& cfg, std::ostream& diag);

}  // namespace wavepkt::cli
