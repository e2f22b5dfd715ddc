#ifndef HARDCOUNT_CLI_HPP
#define HARDCOUNT_CLI_HPP

#include <iosfwd>

namespace hardcount {

inline constexpr const char* kVersion = "0.1.0";

// Full command-line dispatch.  Returns the process exit code:
// 0 success, 2 precondition/parse violation, 3 certification failure,
// 4 probabilistic budget exhaustion.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace hardcount

#endif
