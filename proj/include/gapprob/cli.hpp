#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gapprob::cli {

// Runs one command. `args` excludes the program name. Returns the process
// exit code: 0 success, 1 invalid input, 2 coverage or resource limits,
// 3 verification failure. Errors go to `err` as "ERROR <code>: <message>".
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gapprob::cli
