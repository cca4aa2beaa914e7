#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cvsteer::cli {

// Exit codes: 0 ok, 1 validation failure, 2 compute failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cvsteer::cli
