#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace soliton::tools {

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitUsage = 2 };

/// Runs the `soliton` command line. Returns 0 on success or passing verification,
/// 1 on a verification failure, 2 on usage or input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Inserts `--key value` for every entry of a JSON config object whose flag is absent from `args`.
/// Keys may sit at the top level or under the subcommand name ("solve": {...}).
std::vector<std::string> apply_config(const std::vector<std::string>& args, const std::string& json_text);

}  // namespace soliton::tools
