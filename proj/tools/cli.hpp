#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace robustggm::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kNonConvergence = 3, kFailure = 1 };

inline constexpr int kSchemaVersion = 1;

/// Runs one command line (without the program name). Returns the process
/// exit code; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Path of the manifest written next to an output file.
std::string manifest_path(const std::string& output);

}  // namespace robustggm::cli
