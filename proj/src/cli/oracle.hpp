#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "cli/config.hpp"

namespace wavepkt::cli {

struct OracleReport {
  std::string name;
  std::string metric;  ///< what max_error measures
  double max_error = 0;
  double tolerance = 0;
  bool passed = false;
};

const std::vector<std::string>& oracle_names();

/// Runs the oracle named in `cfg`. Resolves the oracle's tolerance and grid
/// into `cfg.values` so the echo records what was actually used.
OracleReport run_oracle(Config& cfg);

void write_report_csv(std::ostream& os, const OracleReport& r);
void write_report_json(std::ostream& os, const OracleReport& r, const nlohmann::json& config);

}  // namespace wavepkt::cli
