#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace realform::cli {

// Exit codes: 0 Yes/ok, 1 No, 2 parse or spec error, 3 spectral precondition
// failure, 4 genericity failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace realform::cli
