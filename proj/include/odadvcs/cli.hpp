#pragma once

#include <iosfwd>

namespace odadvcs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsageError = 2;

/// Entry point shared by the `odadvcs` executable and the tests. Diagnostics
/// go to `err`; reports that are not written to a file go to `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace odadvcs::cli
