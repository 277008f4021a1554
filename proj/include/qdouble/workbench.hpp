#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qdouble {

/// Exit statuses of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command; `args` excludes the program name. Results go to `out`,
/// diagnostics and cache warnings to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qdouble
