#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace covmin::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitDiscrepancy = 4;

/// Runs one command line (without the program name). Results go to `out`
/// unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace covmin::cli
