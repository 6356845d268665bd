#pragma once

// Self-check suite behind `bohmtoa validate`: every closed form is compared
// against its independent numerical route on seeded random parameters.

#include <cstdint>
#include <string>
#include <vector>

namespace bohmtoa::validation {

struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct ValidationOptions {
    std::uint64_t seed = 20250101;
    // Negative control: corrupts the quantities under test so that every
    // check must fail.
    bool perturb = false;
};

std::vector<CheckResult> run_validation(const ValidationOptions& options = {});

}  // namespace bohmtoa::validation
