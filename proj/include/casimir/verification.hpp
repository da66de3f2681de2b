#pragma once

#include <string>
#include <vector>

namespace casimir {

// One acceptance check outcome. measured is the check's figure of merit,
// compared against threshold (pass means measured <= threshold unless the
// check is a sign test, where pass means measured > threshold).
struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string detail;
};

// Runs the full verification suite. Quadrature-backed checks honor the
// serial flag; everything is deterministic either way.
std::vector<CheckResult> run_acceptance_checks(bool serial = false);

} // namespace casimir
