#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nlfem::cli {

// Exit codes
inline constexpr int exit_ok = 0;
inline constexpr int exit_check_failed = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_not_converged = 3;
inline constexpr int exit_error = 4;

// Runs one subcommand. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace nlfem::cli
