#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nilrad::cli {

/// Exit codes of the nilrad tool.
inline constexpr int kOk = 0;           // success, or the verdict is true
inline constexpr int kFalse = 1;        // the verdict is false
inline constexpr int kUsage = 2;        // bad command line or unreadable input
inline constexpr int kUndecided = 3;    // resource guard or search budget exhausted

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nilrad::cli
