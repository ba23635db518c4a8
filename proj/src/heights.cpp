#include "cartan/heights.hpp"

namespace cartan {

namespace {

Ival log_max_num_den(const BigRational& j) {
    mpz_class a = abs(j.get_num());
    mpz_class b = j.get_den();
    mpz_class m = a > b ? a : b;
    return Ival::of_mpz(m).log();
}

void require_tau_domain(const BigRational& tau_re, const BigRational& tau_im) {
    if (tau_im <= 0) fail("OutsideFundamentalDomain", "tau must have positive imaginary part");
    BigRational half(1, 2);
    if (tau_re < -half || tau_re > half)
        fail("OutsideFundamentalDomain", "real part must lie in [-1/2, 1/2]");
    if (tau_re * tau_re + tau_im * tau_im < 1)
        fail("OutsideFundamentalDomain", "|tau| must be at least 1");
}

} // namespace

RealBound weil_height(const BigRational& j) {
    return RealBound{log_max_num_den(j), Rounding::nearest};
}

RealBound b_of_j(const BigRational& j) {
    return RealBound{Ival::of_mpz(mpz_class(j.get_den())).log(), Rounding::nearest};
}

std::pair<RealBound, RealBound> faltings_interval(const BigRational& j) {
    Ival h12 = log_max_num_den(j) / Ival::exact_int(12);
    BigRational aj = abs(j);
    Ival lo_shift, hi_shift;
    if (aj > 3500) {
        Ival half_loglog = Ival::of_mpq(aj).log().log() / Ival::exact_int(2);
        lo_shift = h12 - half_loglog + Ival::of_decimal("-0.406");
        hi_shift = h12 - half_loglog + Ival::of_decimal("0.159");
    } else {
        lo_shift = h12 + Ival::of_decimal("-1.429");
        hi_shift = h12 + Ival::of_decimal("-0.135");
    }
    return {RealBound{lo_shift, Rounding::down}, RealBound{hi_shift, Rounding::up}};
}

Ival faltings_interval_ival(const BigRational& j) {
    auto [lo, hi] = faltings_interval(j);
    return Ival::hull(lo.enclosure, hi.enclosure);
}

RealBound faltings_from_tau(const BigRational& tau_re, const BigRational& tau_im,
                            const BigRational& j) {
    require_tau_domain(tau_re, tau_im);
    Ival two_pi_t = Ival::pi() * Ival::exact_int(2) * Ival::of_mpq(tau_im);
    Ival r = (-two_pi_t).exp(); // |q|
    if (!r.certified_less(0.05)) fail("OutsideFundamentalDomain", "|q| is not small enough");

    Ival sum = Ival::exact_int(0);
    Ival r_pow = Ival::exact_int(1);
    Ival two_pi_x = Ival::pi() * Ival::exact_int(2) * Ival::of_mpq(tau_re);
    std::uint32_t n = 0;
    for (;;) {
        ++n;
        if (n > 4000) fail("SizeCap", "q-expansion failed to converge");
        r_pow = r_pow * r;
        if (r_pow.certified_less(1e-30)) break;
        Ival c = (two_pi_x * Ival::exact_uint(n)).cos();
        Ival sq = Ival::exact_int(1) - Ival::exact_int(2) * r_pow * c + r_pow * r_pow;
        sum = sum + sq.log() / Ival::exact_int(2);
    }
    Ival tail = Ival::exact_int(2) * r_pow / (Ival::exact_int(1) - r);
    sum = sum + Ival::hull(-tail, tail);

    Ival twelve_f = Ival::of_mpz(mpz_class(j.get_den())).log() + two_pi_t -
                    Ival::exact_int(6) * Ival::exact_int(2).log() -
                    Ival::exact_int(6) * two_pi_t.log() - Ival::exact_int(24) * sum;
    return RealBound{twelve_f / Ival::exact_int(12), Rounding::nearest};
}

Ival j_of_tau_imag(const BigRational& t) {
    if (t * t * 4 < 3) fail("OutsideFundamentalDomain", "imaginary part below sqrt(3)/2");
    Ival q = (-(Ival::pi() * Ival::exact_int(2) * Ival::of_mpq(t))).exp();
    if (!q.certified_less(0.01)) fail("OutsideFundamentalDomain", "|q| is not small enough");

    // E4 = 1 + 240 sum sigma3(n) q^n; sigma3(n) <= n^4 and the geometric
    // ratio is below e*q < 0.03, so the tail is under 1.03*(N+1)^4 q^{N+1}.
    Ival e4 = Ival::exact_int(1);
    Ival log_prod = Ival::exact_int(0);
    Ival q_pow = Ival::exact_int(1);
    std::uint32_t n = 0;
    for (;;) {
        ++n;
        if (n > 4000) fail("SizeCap", "q-expansion failed to converge");
        q_pow = q_pow * q;
        std::uint64_t sigma3 = 0;
        for (std::uint64_t d = 1; d <= n; ++d)
            if (n % d == 0) sigma3 += d * d * d;
        e4 = e4 + Ival::exact_uint(240) * Ival::exact_uint(sigma3) * q_pow;
        log_prod = log_prod + (Ival::exact_int(1) - q_pow).log();
        std::uint64_t n4 = std::uint64_t(n + 1) * (n + 1) * (n + 1) * (n + 1);
        if ((q_pow * q * Ival::exact_uint(n4)).certified_less(1e-35)) break;
    }
    Ival q_next = q_pow * q;
    Ival e4_tail = Ival::of_decimal("1.03") * Ival::exact_uint(240) *
                   Ival::exact_uint(std::uint64_t(n + 1) * (n + 1) * (n + 1) * (n + 1)) * q_next;
    e4 = e4 + Ival::hull(Ival::exact_int(0), e4_tail);
    Ival prod_tail = Ival::exact_int(2) * q_next / (Ival::exact_int(1) - q);
    log_prod = log_prod + Ival::hull(-prod_tail, prod_tail);

    Ival delta = q * (Ival::exact_int(24) * log_prod).exp();
    return e4 * e4 * e4 / delta;
}

} // namespace cartan
