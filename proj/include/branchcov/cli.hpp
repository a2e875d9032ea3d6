#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace branchcov::cli {

inline constexpr const char* tool_name = "branchcov";
inline constexpr const char* tool_version = "0.1.0";

/// Runs one command. `args` excludes the program name. Returns 0 on
/// success, 1 on a failed verification, 2 on usage or input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace branchcov::cli
