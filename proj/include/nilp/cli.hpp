#pragma once

// The `nilp` command line, callable in-process.
//
// Exit codes: 0 pass, 2 validation failure or failed checks (also usage
// errors), 3 I/O or format error, 4 outside the flow regime, 5 internal
// invariant breach.

#include <iosfwd>
#include <string>
#include <vector>

namespace nilp {

inline constexpr int kExitPass = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitFormat = 3;
inline constexpr int kExitRegime = 4;
inline constexpr int kExitInternal = 5;

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nilp
