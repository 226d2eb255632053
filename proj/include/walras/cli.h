#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace walras {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNegative = 2;  // NO-WE, reject, infeasible

// Runs one command. `args` excludes the program name. Regular output goes to
// `out`; errors are a single "error: ..." line on `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace walras
