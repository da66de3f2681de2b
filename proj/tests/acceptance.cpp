// Acceptance suite: runs every verification check and prints one line per
// check. The process exits nonzero if any check fails.

#include "casimir/verification.hpp"

#include <cstdio>

int main() {
    auto results = casimir::run_acceptance_checks(false);
    int failures = 0;
    int index = 0;
    for (const auto& r : results) {
        ++index;
        std::printf("[%s] %2d %-32s measured=%-12.4g threshold=%-12.4g %s\n",
                    r.pass ? "PASS" : "FAIL", index, r.name.c_str(), r.measured,
                    r.threshold, r.detail.c_str());
        if (!r.pass) ++failures;
    }
    std::printf("%d/%d checks passed\n", index - failures, index);
    return failures == 0 ? 0 : 1;
}
