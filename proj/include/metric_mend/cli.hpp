#pragma once

#include <cstdint>
#include <iosfwd>

namespace metric_mend::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_negative = 1,  // a checked property does not hold (e.g. not a cover)
    exit_input = 2,     // unreadable or malformed input, bad arguments
    exit_internal = 3   // an output failed its own verification
};

/// Runs the metric_mend command line. Reports and instances go to `out`,
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Oracle work cap from METRIC_MEND_BUDGET, or `fallback` when unset.
std::uint64_t budget_from_env(std::uint64_t fallback);

}  // namespace metric_mend::cli
