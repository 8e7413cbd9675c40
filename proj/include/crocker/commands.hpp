#pragma once

#include <iosfwd>
#include <span>

namespace crocker {

inline constexpr const char* kToolVersion = "0.1.0";

/// Full command-line driver (subcommands sweep, single, selftest). args is
/// the argv vector including the program name. Exit codes: 0 success,
/// 2 configuration error, 3 runtime error.
int run_cli(std::span<const char* const> args, std::ostream& out, std::ostream& err);

} // namespace crocker
