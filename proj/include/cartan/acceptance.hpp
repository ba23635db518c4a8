#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cartan {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct AcceptanceConfig {
    std::uint64_t seed = 20240901;
    // Scaled-down knobs for quick smoke runs; defaults match the full gate.
    std::uint64_t containment_samples = 1000;
    std::uint64_t tower_samples = 500;
    std::uint64_t complement_samples = 100;
    std::uint64_t hensel_samples = 200;
    std::uint64_t mertens_max_n = 100000;
    std::uint32_t mertens_max_k = 2263;
    std::uint32_t pipeline_grid = 1000;
};

CriterionResult run_criterion(int id, const AcceptanceConfig& cfg);
std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg);

} // namespace cartan
