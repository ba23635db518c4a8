#pragma once

#include <cstdint>

namespace cartan {

enum class ReductionType { ordinary, supersingular, unknown };

struct LocalContext {
    std::uint64_t p = 3;            // odd prime
    std::uint32_t n = 1;            // level
    std::uint64_t e = 1;            // ramification index
    ReductionType reduction = ReductionType::unknown;
};

// ell not congruent to +-1 mod p^n (forces potentially good reduction at ell).
// Excluded case p^n = 3.
bool potentially_good_forced_at_ell(std::uint64_t ell, std::uint64_t p, std::uint32_t n);

// p^{n-1}(p-1) does not divide 2e (forces potentially good reduction at p).
bool good_reduction_forced_at_p(std::uint64_t p, std::uint32_t n, std::uint64_t e);

// No canonical subgroup: p > 6e+1 and p != 12e+1; supersingular relaxation
// p >= 6e-1.
bool canonical_subgroup_excluded(std::uint64_t p, std::uint64_t e, bool supersingular);

// Potentially good supersingular reduction forced: p > 6e+1 and p != 12e+1.
bool supersingular_forced(std::uint64_t p, std::uint64_t e);

// Inertia image element order: (p^n - p^{n-1})/gcd(., e) in the ordinary
// case, (p^{n+1} - p^{n-1})/gcd(., e) in the supersingular one.
std::uint64_t inertia_order(const LocalContext& ctx);

struct EntanglementMultiples {
    std::uint64_t full_mult = 0;       // degree over the prime-to-p tower
    std::uint64_t cyclotomic_mult = 0; // degree over the cyclotomic-closed tower
    std::uint64_t cyclic_order = 0;    // guaranteed element order
};

// General number-field form: quantities of the entanglement theorem as exact
// integers (divisibility checked; NonIntegral is a hard failure).
EntanglementMultiples entanglement_multiples(std::uint64_t p, std::uint32_t n,
                                             std::uint32_t eta, std::uint64_t e);

// Q-specialized form (guard p > 7, e = 1): full part (p^{2n} - p^{2n-2})/12
// (a proper multiple), cyclotomic part p^{n-1}(p+1)/gcd(eta, p+1).
EntanglementMultiples entanglement_multiples_q(std::uint64_t p, std::uint32_t n,
                                               std::uint32_t eta);

// Goursat identity: total index = idx_m * idx_n * entanglement degree.
std::uint64_t goursat_total_index(std::uint64_t idx_m, std::uint64_t idx_n,
                                  std::uint64_t ent_degree);

} // namespace cartan
