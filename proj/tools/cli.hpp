#pragma once

#include <ostream>

namespace giantwg::cli {

// Exit codes: 0 success, 1 job failure, 2 usage or input parse error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace giantwg::cli
