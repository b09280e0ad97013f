#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace drs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsageError = 2;

// Entry point behind the `drs` binary. `args` excludes the program name.
// Reports go to `out`; the run banner, diagnostics and usage go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace drs::cli
