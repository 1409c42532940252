#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace repower::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNoConvergence = 3;

/// Runs one command. `args` excludes the program name. Data goes to `out`
/// (or the --out file), human-readable summaries and errors to `err`.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

/// Expands `--config FILE`: every `key = value` line becomes `--key value`
/// unless that flag is already given. `true`/`false` values toggle flags.
std::vector<std::string> expand_config(std::vector<std::string> args);

/// from, from + step, ... up to `to` (inclusive within rounding).
std::vector<double> make_grid(double from, double to, double step);

}  // namespace repower::cli
