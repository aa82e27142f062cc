#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace efftemp {

enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitNumerical = 2 };

struct CliEnvironment {
    /// Overrides the LP dimension cap of the oracle command (EFFTEMP_MAX_DIM).
    std::optional<std::size_t> max_dim;

    static CliEnvironment from_process();
};

/// Runs the command line (args excludes the program name). The run report
/// is written to `out` as JSON; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const CliEnvironment& env = {});

/// 64-bit FNV-1a digest as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

/// "%.12g", or inf / -inf / nan.
std::string format_number(double x);

}  // namespace efftemp
