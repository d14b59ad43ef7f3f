#ifndef HCFASP_TOOLS_CLI_HPP_INCLUDED
#define HCFASP_TOOLS_CLI_HPP_INCLUDED

#include <iosfwd>
#include <string>
#include <vector>

namespace hcfasp::cli {

/// Runs one command; `args` excludes the program name. Returns the exit code.
int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hcfasp::cli

#endif
