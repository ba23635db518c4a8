// Acceptance gate: runs the thirteen release criteria and prints one
// pass/fail line per criterion. Exits nonzero if any criterion fails.

#include <cstdio>

#include "cartan/acceptance.hpp"

int main() {
    cartan::AcceptanceConfig cfg;
    int failures = 0;
    for (const cartan::CriterionResult& r : cartan::run_acceptance(cfg)) {
        std::printf("[%s] %2d %-28s (%7.2fs) %s\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.seconds, r.detail.c_str());
        if (!r.pass) ++failures;
    }
    if (failures == 0) {
        std::printf("acceptance: all 13 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", failures);
    return 1;
}
