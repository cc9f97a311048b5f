#pragma once

#include <string>
#include <vector>

namespace ttr {

// Full command-line surface (subcommands recommend, marginals, simulate,
// hard-instance). `args` excludes the program name. Returns the process exit
// code: 0 success, 1 invalid input, 2 resource limit exceeded, 3 I/O failure.
int run_cli(const std::vector<std::string>& args);

}  // namespace ttr
