#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace psiforge {

inline constexpr int kExitPass = 0;
inline constexpr int kExitPropertyFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command. `args` excludes the program name. A path of "-" reads
/// `in`. Returns 0 when every checked property holds, 1 when one fails
/// (witness printed) and 2 on usage or input errors (message on `err`).
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace psiforge
