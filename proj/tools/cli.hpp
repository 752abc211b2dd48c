#pragma once

#include <qinterp/error.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qinterp::cli {

enum ExitCode : int {
    kOk = 0,
    kOther = 1,
    kValidation = 2,
    kBudget = 3,
    kNotInRange = 4,
    kAttemptsExhausted = 5,
};

int exit_code(ErrorKind kind) noexcept;

// Expands "5..31" or "4,8,9" (or a mix) to the prime powers it contains, in
// increasing order. Composite non-prime-powers inside a range go to
// `skipped`; listed explicitly they throw NotPrime.
std::vector<std::uint64_t> parse_q_sweep(std::string_view sweep, std::vector<std::uint64_t>& skipped);

// Runs one command line (without the program name) and returns the exit
// status. Results go to `out` unless -o names a file.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qinterp::cli
