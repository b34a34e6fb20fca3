#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mhad::cli {

inline constexpr int kExitOk = 0;        // exists / verified
inline constexpr int kExitNegative = 1;  // does not exist / verification failed
inline constexpr int kExitUsage = 2;     // usage or format error

// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mhad::cli
