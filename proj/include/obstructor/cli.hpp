#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "obstructor/obstruction.hpp"

namespace obstructor::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParseError = 2;
inline constexpr int kExitDimensionMismatch = 3;
inline constexpr int kExitLimitExceeded = 4;
inline constexpr int kExitTableMismatch = 5;

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kCacheEnvVar = "OBSTRUCTOR_CACHE";

/// Runs one command line (without the program name). All output goes to the
/// given streams; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Renders a certificate as an indented text tree.
std::string render_certificate(const DerivationNode& node);

}  // namespace obstructor::cli
