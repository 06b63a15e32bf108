#pragma once

#include <iosfwd>

namespace fastppr::cli {

/// Parses argv and runs one subcommand. Returns 0 on success, 2 on a usage
/// error (bad flags, missing input files) and 1 on a runtime failure.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int dispatch(int argc, const char* const* argv);

}  // namespace fastppr::cli
