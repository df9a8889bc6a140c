#pragma once

// `srl` command line: run, preset, verify.
//
// Exit codes: 0 success, 1 usage error, 2 validation error, 3 runtime
// failure. Errors are also written to stderr as one JSON object per line.

#include <iosfwd>
#include <string>
#include <vector>

namespace srl {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitRuntime = 3;

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace srl
