#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hypgeo::cli {

// Exit codes: 0 affirmative verdict/evidence, 1 negative, 2 usage or parse error.
inline constexpr int exit_affirmative = 0;
inline constexpr int exit_negative = 1;
inline constexpr int exit_usage = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hypgeo::cli
