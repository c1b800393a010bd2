#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace semzk {

/// Runs the command line `semzk <subcommand> [options]`. Returns 0 on success,
/// 2 for usage or configuration errors and 1 for runtime failures.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_main(int argc, char** argv);

}  // namespace semzk
