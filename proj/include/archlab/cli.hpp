#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace archlab::cli {

/// Exit statuses of the archlab command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1; // invalid graph, wrong orientation, unstable oracle...
inline constexpr int kExitUsageError = 2;  // bad flags, unreadable or malformed files

/// Runs one archlab invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace archlab::cli
