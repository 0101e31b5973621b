// Usable under the terms in the Apache License, Version 2.0.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sckf::lab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInfeasible = 2;

/// Entry point of the `sckf-lab` tool. args excludes the program name.
/// Subcommands: plan, fprate, loadsweep, failsweep, compare, bloom, selftest.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sckf::lab
