// Command-line front end.

#pragma once

#include <iosfwd>

namespace nonmark::app {

/// Parses argv and runs one subcommand. Returns 0 on success, 1 on bad input or usage,
/// 2 on numerical failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace nonmark::app
