#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cfdyn::cli {

/// Runs one command line. Returns 0 on success, 1 on usage or module errors,
/// 2 when a reproduce job finished but some of its checks failed.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// Same with the arguments after the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cfdyn::cli
