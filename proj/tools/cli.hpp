#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace biflag::cli {

/// Exit codes: 0 success, 1 usage or validation error, 2 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitNumerical = 2;

/// Runs one CLI invocation. args excludes the program name. Reports go to out,
/// usage text and the one-line "error: ..." diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace biflag::cli
