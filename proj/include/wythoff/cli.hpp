#pragma once

#include <ostream>

namespace wythoff::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Parses argv and runs one subcommand. Returns 0 on success or PASS, 1 on
/// a failed verification, 2 on usage errors, malformed input, an undefined
/// dimension or an exceeded budget.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wythoff::cli
