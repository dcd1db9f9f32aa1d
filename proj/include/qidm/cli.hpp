#pragma once

#include <string>
#include <vector>

namespace qidm::cli {

// Runs one subcommand. args excludes the program name. Exit codes:
// 0 success, 2 validation error, 3 inconclusive QID verdict, 64 usage error.
int dispatch(const std::vector<std::string>& args);

}  // namespace qidm::cli
