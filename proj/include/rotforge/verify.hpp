#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rotforge {

struct CheckResult {
    std::string name;
    bool pass = false;
    double deviation = 0.0;
    std::string detail;
};

struct VerifyOptions {
    uint64_t seed = 0;
    int mc_trials = 200;
    bool inject_sign_bug = false;  // test hook: flips the pivot reflection sign
};

/// Full invariant suite: encoder table, transversal-Hadamard action,
/// compression identities, parity projection, single-error detection,
/// pivotal failure branch, output symmetry, leading-order coefficients,
/// dilution identity, generic-noise Monte Carlo, and the closed-form
/// errata flags.
std::vector<CheckResult> run_verification(const VerifyOptions& opts);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace rotforge
