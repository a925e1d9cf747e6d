#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace minred::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kParseError = 1;
inline constexpr int kMathError = 2;
inline constexpr int kInconclusive = 3;

// Runs one CLI invocation; args excludes the program name. Reports go to
// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace minred::cli
