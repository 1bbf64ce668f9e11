#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lindet {

/// Exit codes of run_cli.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitRuntime = 2,
};

/**
 * Command-line entry point: `lindet <table1|gain|cdf|ber|condratio|props> [flags]`.
 *
 * `args` excludes the program name. Results go to --out (or `out` when no
 * path is given); diagnostics go to `err`.
 */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "min:max:step" (inclusive within half a step), "a,b,c" or a single value.
std::vector<double> parse_real_grid(const std::string& text);

/// Parses "2,4,8".
std::vector<std::size_t> parse_dims(const std::string& text);

} // namespace lindet
