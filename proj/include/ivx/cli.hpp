#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ivx {

// Full command-line dispatch, separated from main() so tests can drive it
// in-process. Returns the process exit code: 0 success, 2 usage/parse error,
// 3 domain error, 4 missing calibration.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace ivx
