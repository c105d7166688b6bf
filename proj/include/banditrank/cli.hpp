#ifndef BANDITRANK_CLI_HPP_
#define BANDITRANK_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace banditrank {

/// Entry point of the `banditrank` tool. `args` excludes the program name.
/// Returns the process exit code.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace banditrank

#endif  // BANDITRANK_CLI_HPP_
