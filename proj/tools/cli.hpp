// The erank command line, callable in-process for tests.

#ifndef ERANK_TOOLS_CLI_HPP
#define ERANK_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace erank::cli {

enum ExitCode : int { ok = 0, refuted = 1, usage = 2, unsupported = 3 };

// args excludes the program name. Structured output goes to `out`, messages
// to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace erank::cli

#endif
