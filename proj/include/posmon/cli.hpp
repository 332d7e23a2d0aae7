#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace posmon::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_input = 1;
inline constexpr int exit_aborted = 2;

/// Runs one command line (program name excluded). Results go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace posmon::cli
