#ifndef ENTLAB_TOOLS_CLI_HPP
#define ENTLAB_TOOLS_CLI_HPP

#include <string>
#include <vector>

namespace entlab::cli {

/// Subcommand front door. `args` excludes the program name.
/// Exit codes: 0 success, 1 domain error, 2 usage error.
int dispatch(std::vector<std::string> args);

} // namespace entlab::cli

#endif
