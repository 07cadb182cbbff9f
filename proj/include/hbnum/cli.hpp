#ifndef HBNUM_CLI_HPP
#define HBNUM_CLI_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace hbnum {

/// Entry point behind the `hbnum` executable. `args` excludes the program
/// name. Returns the process exit status.
///
/// Subcommands: fit, simulate, compare, summarize. Any subcommand accepts
/// `--config FILE` holding flat `key=value` lines whose keys are long flag
/// names without the dashes; flags given on the command line win.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses `key=value` lines; blank lines and lines starting with '#' are skipped.
std::map<std::string, std::string> parse_config_text(const std::string& text);

}  // namespace hbnum

#endif  // HBNUM_CLI_HPP
