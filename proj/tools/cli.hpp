#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace evo1d::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;
inline constexpr int kMismatch = 3;

/// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace evo1d::cli
