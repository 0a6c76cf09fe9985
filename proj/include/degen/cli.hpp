#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace degen {

/// Environment variable that overrides the AUTO-budget ceiling.
inline constexpr const char* kCeilingEnv = "DEGEN_AUTO_BUDGET_CEILING";

/// Entry point of the `degen` command-line tool.
///
/// Returns 0 on success, 1 when an engine refuses its preconditions (size
/// caps, budget ceiling) and 2 on usage or input errors.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace degen
