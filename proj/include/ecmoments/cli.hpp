#pragma once

// Command-line front end. Exit codes: 0 success, 1 verification mismatch,
// 2 usage or configuration error, 3 resource or cap error.

#include <iosfwd>
#include <string>
#include <vector>

namespace ecm {

inline constexpr const char* kToolVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ecm
