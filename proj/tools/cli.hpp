#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace brp {

enum ExitCode { exit_ok = 0, exit_invariant = 1, exit_parse = 2, exit_semantic = 3, exit_certificate = 4 };

// args exclude the program name
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace brp
