#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace spinem {

struct CheckResult {
    std::string suite;
    std::string check;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Names of the built-in verification suites, in run order.
std::vector<std::string> verification_suites();

/// Run one suite with seeded randomness. Unknown name -> ArgumentError.
std::vector<CheckResult> run_verification_suite(const std::string& name,
                                                std::uint64_t seed);

std::vector<CheckResult> run_all_verifications(std::uint64_t seed);

}  // namespace spinem
