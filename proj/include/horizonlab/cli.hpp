#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace horizonlab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAuditViolation = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitParam = 4;

/// Runs the command line `args` (without the program name). Summaries go to
/// `out`, diagnostics to `err`; files go under --out-dir.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace horizonlab
