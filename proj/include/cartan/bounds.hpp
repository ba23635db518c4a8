#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cartan/real.hpp"

namespace cartan {

// ---- Effective Mertens lemma -------------------------------------------------

// Certified check of prod_{p | N} (1 + 1/p) < (6 e^gamma / pi^2)(1 + loglog N)
// for N > 6: exact-rational left side against the rounded-down right side.
bool mertens_check(const mpz_class& n);

// The exact left side.
BigRational mertens_lhs(const mpz_class& n);

// Right side as an interval.
Ival mertens_rhs(const Ival& log_n);
Ival mertens_constant(); // 6 e^gamma / pi^2

// Scans primorials N_k for 3 <= k <= k_max; returns the first failing k.
std::optional<std::uint32_t> mertens_primorial_scan(std::uint32_t k_max);

// Scans all integers 7 <= N <= n_max; returns the first failing N.
std::optional<std::uint64_t> mertens_integer_scan(std::uint64_t n_max);

// ---- Lambert W ---------------------------------------------------------------

Ival lambert_w(const Ival& x);   // principal branch, x >= 0
Ival lw_upper(const Ival& x);    // x / (log x - loglog x), upper bound for x/W(x), x > e

// ---- Prime-power bounds from the j-denominator -------------------------------

enum class PowerBoundVariant { general, coprime_ramification, Q_form };

// general:              1.6 d n h / (log(1.6 d n h) - loglog(1.6 d n h))
// coprime_ramification: (d h + 1.116) / (log(.) - loglog(.))
// Q_form (h plays b(j)): (b + 0.527) / (log(2b + 1.054) - loglog(2b + 1.054))
RealBound cartan_power_bound(std::uint32_t d, std::uint32_t n, const Ival& hj,
                             PowerBoundVariant variant);

// The weaker closed shapes 2.2 dnh/log(dnh), 1.68 dh/log(dh), 1.3 b/log b.
RealBound cartan_power_bound_weak(std::uint32_t d, std::uint32_t n, const Ival& hj,
                                  PowerBoundVariant variant);

// ---- Lambda bounds for non-integral j -----------------------------------------

RealBound lambda_bound_nonintegral(std::uint32_t d, const Ival& hj); // d h / log 2
RealBound lambda_bound_nonintegral_q(const Ival& bj, const Ival& f); // min(b/log2, 12F/log2+25)
Ival lambda_linear_q(const Ival& f);                                 // 12F/log2 + 25

// ---- Effective surjectivity inequality solver ---------------------------------

enum class EffisoVariant {
    nf_general,          // F + 7/2 log(F+2.72) + 4 log L + 5
    nf_cartan_only,      // F + 3/2 log(F+2.72) + 2 log L + 2.6
    Q_cartan_only,       // F + 2 log L + 3/2 max{0, log Im tau} + 1.38
    Q_cartan_proof_stage // L^{1-log_19 2} < 1454*2^0.627*(F + 2 log L + 3/2 log(15/pi) + 1.38)
};

struct EffisoParams {
    std::uint32_t degree = 1;
    double F = 0.0;
    std::uint32_t c_count = 0; // |C|
    double tau_im = 0.0;
    bool refined = false; // 1266.4 instead of 1454
};

// Largest Lambda >= 1 satisfying the selected implicit inequality
// (bisection on the certified sign; relative tolerance 1e-9).
RealBound effiso_max_lambda(EffisoVariant variant, const EffisoParams& params);

// ---- Height-parameter Lambda and adelic bounds --------------------------------

Ival delta_ival(const Ival& x); // 1/(log(log(x+40)+7.6) - 0.903)
RealBound delta_bound(double x);

RealBound lambda_bound_height(const Ival& f);         // 21000 (F+40)^{1.308}
RealBound lambda_bound_height_refined(const Ival& f); // 14400 (F+40)^{0.907 d(F)} (F+22.5)

BoundReport adelic_bound_height(const Ival& f);         // 9.5e20 (F+40)^{4.42}
BoundReport adelic_bound_height_refined(const Ival& f); // 3.4e20 (F+22.5)^{3+4.158 d(F)}

Ival require_f_domain(double f); // guard F > -0.75, returns exact interval

// ---- Conductor-parameter bounds ------------------------------------------------

// 2488320 (51 N (1+loglog N)^{1/2})^{3 omega(N)} for squarefree N > 6.
BoundReport adelic_bound_conductor(const mpz_class& n);

// Largest prime with nonzero trace obstruction: 312 N^2 (1+loglog N);
// prime N improves to N(N+1)/6.
RealBound prime_with_nonzero_trace_bound(const mpz_class& n);

// Certified minimum of the applicable large-prime-product bounds:
// general (35.33 N (1+loglog N)^{1/2})^{omega(N)}; prime N: sqrt(2N(N+1)/3);
// non-integral j: N^2/4 - 1.
RealBound large_prime_product_bound(const mpz_class& n, bool j_integral);

std::vector<mpz_class> factor_distinct_primes(const mpz_class& n, bool* squarefree = nullptr);

} // namespace cartan
