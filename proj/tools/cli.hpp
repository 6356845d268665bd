#pragma once

// `bohmtoa` command-line front end. Exit codes: 0 success, 1 validation or
// numerical failure, 2 bad arguments.

#include <ostream>
#include <string>
#include <vector>

namespace bohmtoa::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitBadArguments = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Convenience overload; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bohmtoa::cli
