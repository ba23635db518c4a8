#include "cartan/bounds.hpp"

#include <string>

namespace cartan {

namespace {

Ival ipow(const Ival& base, unsigned long e) {
    Ival acc = Ival::exact_int(1);
    Ival sq = base;
    while (e > 0) {
        if (e & 1) acc = acc * sq;
        sq = sq * sq;
        e >>= 1;
    }
    return acc;
}

} // namespace

std::vector<mpz_class> factor_distinct_primes(const mpz_class& n, bool* squarefree) {
    if (n < 1) fail("ExcludedCase", "requires a positive integer");
    if (squarefree) *squarefree = true;
    std::vector<mpz_class> out;
    mpz_class rem = n;
    auto strip = [&](unsigned long d) {
        if (!mpz_divisible_ui_p(rem.get_mpz_t(), d)) return;
        out.push_back(mpz_class(d));
        unsigned count = 0;
        while (mpz_divisible_ui_p(rem.get_mpz_t(), d)) {
            mpz_divexact_ui(rem.get_mpz_t(), rem.get_mpz_t(), d);
            ++count;
        }
        if (count > 1 && squarefree) *squarefree = false;
    };
    strip(2);
    for (unsigned long d = 3; d <= 10000000UL; d += 2) {
        if (mpz_class(d) * d > rem) break;
        strip(d);
    }
    if (rem > 1) {
        if (mpz_probab_prime_p(rem.get_mpz_t(), 40) == 0)
            fail("SizeCap", "factorization budget exceeded");
        out.push_back(rem);
    }
    return out;
}

BoundReport adelic_bound_conductor(const mpz_class& n) {
    if (n <= 6) fail("ExcludedCase", "requires N > 6");
    bool squarefree = true;
    std::vector<mpz_class> primes = factor_distinct_primes(n, &squarefree);
    if (!squarefree) fail("NotSquarefree", "conductor must be squarefree");
    unsigned long omega = primes.size();
    Ival loglog = Ival::of_mpz(n).log().log();
    Ival inner = Ival::exact_int(51) * Ival::of_mpz(n) *
                 (Ival::exact_int(1) + loglog).sqrt();
    Ival v = Ival::exact_int(2488320) * ipow(inner, 3 * omega);
    return BoundReport{"adelic-index-conductor",
                       {{"N", n.get_str()}, {"omega", std::to_string(omega)}},
                       RealBound{v, Rounding::up},
                       "adelic index bound in the conductor"};
}

RealBound prime_with_nonzero_trace_bound(const mpz_class& n) {
    if (n <= 6) fail("ExcludedCase", "requires N > 6");
    if (mpz_probab_prime_p(n.get_mpz_t(), 40) > 0)
        return RealBound{Ival::of_mpq(BigRational(n * (n + 1), 6)), Rounding::up};
    Ival loglog = Ival::of_mpz(n).log().log();
    Ival v = Ival::exact_int(312) * Ival::of_mpz(n) * Ival::of_mpz(n) *
             (Ival::exact_int(1) + loglog);
    return RealBound{v, Rounding::up};
}

RealBound large_prime_product_bound(const mpz_class& n, bool j_integral) {
    if (n <= 6) fail("ExcludedCase", "requires N > 6");
    std::vector<mpz_class> primes = factor_distinct_primes(n);
    Ival loglog = Ival::of_mpz(n).log().log();
    Ival best = ipow(Ival::of_decimal("35.33") * Ival::of_mpz(n) *
                         (Ival::exact_int(1) + loglog).sqrt(),
                     primes.size());
    if (mpz_probab_prime_p(n.get_mpz_t(), 40) > 0)
        best = Ival::min(best, Ival::of_mpq(BigRational(2 * n * (n + 1), 3)).sqrt());
    if (!j_integral)
        best = Ival::min(best, Ival::of_mpq(BigRational(n * n - 4, 4)));
    return RealBound{best, Rounding::up};
}

} // namespace cartan
