#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dfarm::cli {

// Exit codes: 0 success, 1 usage error, 2 data or contract error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// `args` excludes the program name. Data goes to `out` or files, diagnostics
// to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dfarm::cli
