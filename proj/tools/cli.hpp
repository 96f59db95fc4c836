#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace perclab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdict = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand. `args` excludes the program name. Output goes to
/// `--out` if given, else to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Appends the key=value pairs of the `--config` file as `--key=value`
/// arguments, skipping keys already present in `args`.
std::vector<std::string> merge_config(const std::vector<std::string>& args);

/// "# perclab <version> argv=<args> seed=<seed>"; --workers is left out so
/// that runs differing only in worker count produce identical bytes.
std::string header_line(const std::vector<std::string>& args, unsigned long long seed);

}  // namespace perclab::cli
