#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace multiaxial::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConsistency = 1;
inline constexpr int kExitValidation = 2;

/// Parses args (without the program name) and runs one subcommand.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace multiaxial::cli
