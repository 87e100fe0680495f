#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sheath::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNoSolution = 2;
inline constexpr int kExitInvalid = 3;

// Entry point of the sheath tool. args excludes the program name, e.g.
// {"solve", "--scenario", "s.cfg", "--out", "dir"}. Reports go to out, JSON
// error objects to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sheath::cli
