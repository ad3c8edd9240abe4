#pragma once

#include <ostream>

namespace rosenblatt {

// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;      // bad flag, domain error, unknown subcommand
inline constexpr int kExitNumerical = 3;  // numerical or resource failure

// Parses argv and runs one subcommand. Data goes to `out` (or --out),
// diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rosenblatt
