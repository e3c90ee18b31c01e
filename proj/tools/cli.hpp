#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mcrit::cli
{

/// Exit codes of run().
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_numerical = 2;

/// Parses the arguments (without the program name), runs the subcommand
/// and writes its output to out, or to --out when given. Diagnostics go to
/// err. Nothing is written to out unless the command succeeds.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace mcrit::cli
