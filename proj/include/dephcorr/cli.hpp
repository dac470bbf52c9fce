#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dephcorr {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitNumeric = 2 };

/// Environment variable consulted for the default output directory.
inline constexpr const char* kOutDirEnv = "DEPHCORR_OUT_DIR";

/// Runs one command line (args[0] is the program name).
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int dispatch(int argc, char** argv);

/// Parses "6", "4,6,8" or "lo:hi[:step]" into a list of k values.
std::vector<int> parse_k_spec(const std::string& spec);

}  // namespace dephcorr
