#include "cartan/local.hpp"

#include <numeric>

#include "cartan/error.hpp"
#include "cartan/gl2.hpp"

namespace cartan {

namespace {

std::uint64_t pow_checked(std::uint64_t base, std::uint32_t exp) {
    std::uint64_t r = 1;
    for (std::uint32_t i = 0; i < exp; ++i) {
        if (base != 0 && r > UINT64_MAX / base) fail("SizeCap", "power overflows 64 bits");
        r *= base;
    }
    return r;
}

void require_odd_prime(std::uint64_t p) {
    if (p == 2 || !is_prime_u64(p)) fail("NotPrime", "p must be an odd prime");
}

std::uint64_t mul_checked(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a) fail("SizeCap", "product overflows 64 bits");
    return a * b;
}

} // namespace

bool potentially_good_forced_at_ell(std::uint64_t ell, std::uint64_t p, std::uint32_t n) {
    require_odd_prime(p);
    if (!is_prime_u64(ell)) fail("NotPrime", "ell must be prime");
    if (n < 1) fail("BadLevel", "level must be at least 1");
    std::uint64_t pn = pow_checked(p, n);
    if (pn == 3) fail("ExcludedCase", "the criterion does not apply to p^n = 3");
    std::uint64_t r = ell % pn;
    return r != 1 && r != pn - 1;
}

bool good_reduction_forced_at_p(std::uint64_t p, std::uint32_t n, std::uint64_t e) {
    require_odd_prime(p);
    if (n < 1) fail("BadLevel", "level must be at least 1");
    if (e < 1) fail("BadRamification", "ramification index must be at least 1");
    std::uint64_t q = mul_checked(pow_checked(p, n - 1), p - 1);
    return (2 * e) % q != 0;
}

bool canonical_subgroup_excluded(std::uint64_t p, std::uint64_t e, bool supersingular) {
    require_odd_prime(p);
    if (e < 1) fail("BadRamification", "ramification index must be at least 1");
    if (supersingular) return p + 1 >= 6 * e;
    return p > 6 * e + 1 && p != 12 * e + 1;
}

bool supersingular_forced(std::uint64_t p, std::uint64_t e) {
    require_odd_prime(p);
    if (e < 1) fail("BadRamification", "ramification index must be at least 1");
    return p > 6 * e + 1 && p != 12 * e + 1;
}

std::uint64_t inertia_order(const LocalContext& ctx) {
    require_odd_prime(ctx.p);
    if (ctx.n < 1) fail("BadLevel", "level must be at least 1");
    if (ctx.e < 1) fail("BadRamification", "ramification index must be at least 1");
    std::uint64_t span;
    switch (ctx.reduction) {
        case ReductionType::ordinary:
            span = pow_checked(ctx.p, ctx.n) - pow_checked(ctx.p, ctx.n - 1);
            break;
        case ReductionType::supersingular:
            span = pow_checked(ctx.p, ctx.n + 1) - pow_checked(ctx.p, ctx.n - 1);
            break;
        default:
            fail("UnknownReduction", "inertia order needs a known reduction type");
    }
    return span / std::gcd(span, ctx.e);
}

EntanglementMultiples entanglement_multiples(std::uint64_t p, std::uint32_t n, std::uint32_t eta,
                                             std::uint64_t e) {
    require_odd_prime(p);
    if (n < 1) fail("BadLevel", "level must be at least 1");
    if (eta < 1) fail("BadRamification", "eta must be at least 1");
    if (e < 1) fail("BadRamification", "ramification index must be at least 1");
    std::uint64_t p2m1 = p * p - 1;
    std::uint64_t g = std::gcd(mul_checked(2 * std::uint64_t(eta), e), p2m1);
    EntanglementMultiples out;
    if (p2m1 % g != 0) fail("NonIntegral", "entanglement degree is not an integer");
    out.full_mult = mul_checked(pow_checked(p, 2 * n - 2), p2m1 / g);
    out.cyclic_order = mul_checked(pow_checked(p, n - 1), p2m1 / g);
    std::uint64_t gc = std::gcd(mul_checked(std::uint64_t(eta), e), p + 1);
    if ((p + 1) % gc != 0) fail("NonIntegral", "cyclotomic entanglement degree is not an integer");
    out.cyclotomic_mult = mul_checked(pow_checked(p, n - 1), (p + 1) / gc);
    return out;
}

EntanglementMultiples entanglement_multiples_q(std::uint64_t p, std::uint32_t n,
                                               std::uint32_t eta) {
    require_odd_prime(p);
    if (p <= 7) fail("ExcludedCase", "the rational form requires p > 7");
    if (n < 1) fail("BadLevel", "level must be at least 1");
    if (eta < 1) fail("BadRamification", "eta must be at least 1");
    std::uint64_t span = pow_checked(p, 2 * n) - pow_checked(p, 2 * n - 2);
    if (span % 12 != 0) fail("NonIntegral", "the full entanglement multiple is not an integer");
    EntanglementMultiples out;
    out.full_mult = span / 12;
    std::uint64_t gc = std::gcd(std::uint64_t(eta), p + 1);
    out.cyclotomic_mult = mul_checked(pow_checked(p, n - 1), (p + 1) / gc);
    std::uint64_t g = std::gcd(2 * std::uint64_t(eta), p * p - 1);
    out.cyclic_order = mul_checked(pow_checked(p, n - 1), (p * p - 1) / g);
    return out;
}

std::uint64_t goursat_total_index(std::uint64_t idx_m, std::uint64_t idx_n,
                                  std::uint64_t ent_degree) {
    if (idx_m < 1 || idx_n < 1 || ent_degree < 1)
        fail("BadRamification", "indices and entanglement degree must be positive");
    return mul_checked(mul_checked(idx_m, idx_n), ent_degree);
}

} // namespace cartan
