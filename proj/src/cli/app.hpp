#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wavepkt::cli {

enum ExitStatus : int { kOk = 0, kUsage = 1, kPhysics = 2, kOracleFailed = 3 };

/// Runs one invocation. `args` excludes the program name. Results go to `out`
/// (or to the --out file), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wavepkt::cli
