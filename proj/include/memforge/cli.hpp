// cli.hpp -- command line entry point
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace memforge::cli {

// Exit codes: 0 success (or languages equal), 1 validation/diff failure,
// 2 usage or parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace memforge::cli
