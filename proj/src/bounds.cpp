#include "cartan/bounds.hpp"

#include <cmath>
#include <string>

namespace cartan {

namespace {

Ival ival_point(double v) {
    if (!std::isfinite(v)) fail("ExcludedCase", "non-finite numeric input");
    return Ival::of_mpq(BigRational(v));
}

std::string ival_text(const Ival& v, int digits = 20) {
    if (v.width_d() == 0.0) return v.str_hi(digits);
    return "[" + v.str_lo(digits) + ", " + v.str_hi(digits) + "]";
}

// x / (log(arg) - loglog(arg)) with the positivity guards the formulas assume.
Ival log_gap_ratio(const Ival& num, const Ival& arg) {
    Ival l = arg.log();
    if (!l.is_positive()) fail("ExcludedCase", "argument must exceed 1");
    Ival den = l - l.log();
    if (!den.is_positive()) fail("ExcludedCase", "argument must exceed e");
    return num / den;
}

std::vector<std::uint64_t> distinct_primes_u64(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; d == 2 ? d = 3 : d += 2) {
        if (n % d) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

} // namespace

BigRational mertens_lhs(const mpz_class& n) {
    if (n < 1) fail("ExcludedCase", "requires a positive integer");
    BigRational lhs = 1;
    for (const mpz_class& p : factor_distinct_primes(n))
        lhs *= BigRational(p + 1, p);
    return lhs;
}

Ival mertens_constant() {
    return Ival::exact_int(6) * Ival::euler_gamma().exp() / (Ival::pi() * Ival::pi());
}

Ival mertens_rhs(const Ival& log_n) {
    return mertens_constant() * (Ival::exact_int(1) + log_n.log());
}

bool mertens_check(const mpz_class& n) {
    if (n <= 6) fail("ExcludedCase", "requires N > 6");
    Ival rhs = mertens_rhs(Ival::of_mpz(n).log());
    return Ival::of_mpq(mertens_lhs(n)).certified_less(rhs);
}

std::optional<std::uint32_t> mertens_primorial_scan(std::uint32_t k_max) {
    mpz_class p = 2;
    mpz_class primorial = 1;
    BigRational lhs = 1;
    for (std::uint32_t k = 1; k <= k_max; ++k) {
        primorial *= p;
        lhs *= BigRational(p + 1, p);
        if (k >= 3) {
            Ival rhs = mertens_rhs(Ival::of_mpz(primorial).log());
            if (!Ival::of_mpq(lhs).certified_less(rhs)) return k;
        }
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    }
    return std::nullopt;
}

std::optional<std::uint64_t> mertens_integer_scan(std::uint64_t n_max) {
    for (std::uint64_t n = 7; n <= n_max; ++n) {
        BigRational lhs = 1;
        for (std::uint64_t p : distinct_primes_u64(n))
            lhs *= BigRational(mpz_class(static_cast<unsigned long>(p) + 1),
                               mpz_class(static_cast<unsigned long>(p)));
        Ival rhs = mertens_rhs(Ival::of_mpz(mpz_class(static_cast<unsigned long>(n))).log());
        if (!Ival::of_mpq(lhs).certified_less(rhs)) return n;
    }
    return std::nullopt;
}

Ival lambert_w(const Ival& x) {
    if (!Ival::exact_int(0).certified_leq(x)) fail("ExcludedCase", "requires x >= 0");
    auto weval = [](const BigRational& w) {
        Ival iw = Ival::of_mpq(w);
        return iw * iw.exp();
    };
    BigRational two(2);
    auto find_upper_start = [&](void) {
        BigRational wu(1);
        double hint = (Ival::exact_int(1) + x).log().hi_d();
        if (std::isfinite(hint) && hint > 0.5) wu = BigRational(hint) + 1;
        for (int i = 0; i < 2000; ++i) {
            if (x.certified_leq(weval(wu))) return wu;
            wu *= two;
        }
        fail("SearchExhausted", "Lambert W bracketing failed");
        return wu;
    };
    BigRational top = find_upper_start();
    BigRational tol(1, 1000000000);
    tol /= 1000; // relative 1e-12

    // Largest certified w with w e^w <= lo(x).
    BigRational a = 0, b = top;
    while (b - a > tol * (a > 1 ? a : BigRational(1))) {
        BigRational m = (a + b) / 2;
        if (weval(m).certified_leq(x)) a = m; else b = m;
    }
    // Smallest certified w with w e^w >= hi(x).
    BigRational c = 0, d = top;
    while (d - c > tol * (c > 1 ? c : BigRational(1))) {
        BigRational m = (c + d) / 2;
        if (x.certified_leq(weval(m))) d = m; else c = m;
    }
    return Ival::hull(Ival::of_mpq(a), Ival::of_mpq(d));
}

Ival lw_upper(const Ival& x) {
    if (!x.certified_greater(2.718281828459045)) fail("ExcludedCase", "requires x > e");
    return log_gap_ratio(x, x);
}

RealBound cartan_power_bound(std::uint32_t d, std::uint32_t n, const Ival& hj,
                             PowerBoundVariant variant) {
    switch (variant) {
        case PowerBoundVariant::general: {
            Ival f = Ival::of_decimal("1.6") * Ival::exact_uint(d) * Ival::exact_uint(n) * hj;
            return RealBound{log_gap_ratio(f, f), Rounding::up};
        }
        case PowerBoundVariant::coprime_ramification: {
            Ival dh = Ival::exact_uint(d) * hj;
            if (!dh.certified_greater(2.0)) fail("ExcludedCase", "requires d*h(j) > 2");
            Ival f = dh + Ival::of_decimal("1.116");
            return RealBound{log_gap_ratio(f, f), Rounding::up};
        }
        case PowerBoundVariant::Q_form: {
            if (!hj.certified_greater(10.0)) fail("ExcludedCase", "requires b(j) > 10");
            Ival arg = Ival::exact_int(2) * hj + Ival::of_decimal("1.054");
            return RealBound{log_gap_ratio(hj + Ival::of_decimal("0.527"), arg), Rounding::up};
        }
    }
    fail("ExcludedCase", "unknown variant");
}

RealBound cartan_power_bound_weak(std::uint32_t d, std::uint32_t n, const Ival& hj,
                                  PowerBoundVariant variant) {
    switch (variant) {
        case PowerBoundVariant::general: {
            Ival x = Ival::exact_uint(d) * Ival::exact_uint(n) * hj;
            Ival l = x.log();
            if (!l.is_positive()) fail("ExcludedCase", "requires d*n*h(j) > 1");
            return RealBound{Ival::of_decimal("2.2") * x / l, Rounding::up};
        }
        case PowerBoundVariant::coprime_ramification: {
            Ival x = Ival::exact_uint(d) * hj;
            if (!x.certified_greater(2.0)) fail("ExcludedCase", "requires d*h(j) > 2");
            return RealBound{Ival::of_decimal("1.68") * x / x.log(), Rounding::up};
        }
        case PowerBoundVariant::Q_form: {
            if (!hj.certified_greater(10.0)) fail("ExcludedCase", "requires b(j) > 10");
            return RealBound{Ival::of_decimal("1.3") * hj / hj.log(), Rounding::up};
        }
    }
    fail("ExcludedCase", "unknown variant");
}

RealBound lambda_bound_nonintegral(std::uint32_t d, const Ival& hj) {
    Ival log2 = Ival::exact_int(2).log();
    return RealBound{Ival::exact_uint(d) * hj / log2, Rounding::up};
}

Ival lambda_linear_q(const Ival& f) {
    return Ival::exact_int(12) * f / Ival::exact_int(2).log() + Ival::exact_int(25);
}

RealBound lambda_bound_nonintegral_q(const Ival& bj, const Ival& f) {
    Ival direct = bj / Ival::exact_int(2).log();
    return RealBound{Ival::min(direct, lambda_linear_q(f)), Rounding::up};
}

RealBound effiso_max_lambda(EffisoVariant variant, const EffisoParams& params) {
    if (params.degree < 1) fail("ExcludedCase", "degree must be at least 1");
    if (params.c_count >= 64) fail("ExcludedCase", "prime-set size out of range");
    if (!(params.F > -0.75)) fail("ExcludedCase", "requires F > -0.75");
    Ival F = ival_point(params.F);
    Ival c = params.refined ? Ival::of_decimal("1266.4") : Ival::exact_int(1454);
    Ival two_pow = Ival::exact_uint(1UL << params.c_count);
    Ival deg = Ival::exact_uint(params.degree);

    Ival tau_term = Ival::exact_int(0);
    if (variant == EffisoVariant::Q_cartan_only) {
        if (!(params.tau_im > 0)) fail("ExcludedCase", "tau_im must be positive");
        if (params.tau_im > 1.0)
            tau_term = Ival::max(Ival::exact_int(0), ival_point(params.tau_im).log());
    }

    Ival lhs_exp = Ival::exact_int(1);
    if (variant == EffisoVariant::Q_cartan_proof_stage)
        lhs_exp = Ival::exact_int(1) - Ival::exact_int(2).log() / Ival::exact_int(19).log();

    auto log_f272 = [&](void) {
        Ival a = F + Ival::of_decimal("2.72");
        if (!a.is_positive()) fail("ExcludedCase", "requires F > -2.72");
        return a.log();
    };

    auto gap = [&](const BigRational& lam) {
        Ival L = Ival::of_mpq(lam);
        Ival logL = L.log();
        Ival rhs;
        switch (variant) {
            case EffisoVariant::nf_general:
                rhs = c * two_pow * deg *
                      (F + Ival::of_mpq(BigRational(7, 2)) * log_f272() +
                       Ival::exact_int(4) * logL + Ival::exact_int(5));
                break;
            case EffisoVariant::nf_cartan_only:
                rhs = c * two_pow * deg *
                      (F + Ival::of_mpq(BigRational(3, 2)) * log_f272() +
                       Ival::exact_int(2) * logL + Ival::of_decimal("2.6"));
                break;
            case EffisoVariant::Q_cartan_only:
                rhs = c * two_pow *
                      (F + Ival::exact_int(2) * logL +
                       Ival::of_mpq(BigRational(3, 2)) * tau_term + Ival::of_decimal("1.38"));
                break;
            case EffisoVariant::Q_cartan_proof_stage:
                rhs = c * Ival::exact_int(2).pow(Ival::of_decimal("0.627")) *
                      (F + Ival::exact_int(2) * logL +
                       Ival::of_mpq(BigRational(3, 2)) *
                           (Ival::exact_int(15) / Ival::pi()).log() +
                       Ival::of_decimal("1.38"));
                break;
        }
        return rhs - L.pow(lhs_exp);
    };

    if (!gap(BigRational(1)).is_positive())
        fail("SearchExhausted", "inequality fails already at Lambda = 1");
    BigRational lo = 1, hi = 2;
    int guard = 0;
    while (!gap(hi).is_negative()) {
        lo = hi;
        hi *= 2;
        if (++guard > 400) fail("SearchExhausted", "no crossing found below 2^400");
    }
    BigRational tol(1, 1000000000);
    for (int i = 0; i < 500 && hi - lo > lo * tol; ++i) {
        BigRational m = (lo + hi) / 2;
        Ival g = gap(m);
        if (g.is_positive()) lo = m;
        else if (g.is_negative()) hi = m;
        else break;
    }
    return RealBound{Ival::hull(Ival::of_mpq(lo), Ival::of_mpq(hi)), Rounding::up};
}

Ival delta_ival(const Ival& x) {
    Ival den = ((x + Ival::exact_int(40)).log() + Ival::of_decimal("7.6")).log() -
               Ival::of_decimal("0.903");
    if (!den.is_positive()) fail("ExcludedCase", "delta denominator not positive");
    return Ival::exact_int(1) / den;
}

RealBound delta_bound(double x) {
    return RealBound{delta_ival(ival_point(x)), Rounding::up};
}

namespace {

void require_height_domain(const Ival& f) {
    if (!f.certified_greater(-0.75)) fail("ExcludedCase", "requires F > -0.75");
}

} // namespace

RealBound lambda_bound_height(const Ival& f) {
    require_height_domain(f);
    Ival v = Ival::exact_int(21000) *
             (f + Ival::exact_int(40)).pow(Ival::of_decimal("1.308"));
    return RealBound{v, Rounding::up};
}

RealBound lambda_bound_height_refined(const Ival& f) {
    require_height_domain(f);
    Ival v = Ival::exact_int(14400) *
             (f + Ival::exact_int(40)).pow(Ival::of_decimal("0.907") * delta_ival(f)) *
             (f + Ival::of_decimal("22.5"));
    return RealBound{v, Rounding::up};
}

BoundReport adelic_bound_height(const Ival& f) {
    require_height_domain(f);
    Ival v = Ival::of_decimal("9.5e20") *
             (f + Ival::exact_int(40)).pow(Ival::of_decimal("4.42"));
    return BoundReport{"adelic-index-height",
                       {{"F", ival_text(f)}},
                       RealBound{v, Rounding::up},
                       "adelic index bound in the Faltings height"};
}

BoundReport adelic_bound_height_refined(const Ival& f) {
    require_height_domain(f);
    Ival v = Ival::of_decimal("3.4e20") *
             (f + Ival::of_decimal("22.5"))
                 .pow(Ival::exact_int(3) + Ival::of_decimal("4.158") * delta_ival(f));
    return BoundReport{"adelic-index-height-refined",
                       {{"F", ival_text(f)}},
                       RealBound{v, Rounding::up},
                       "refined adelic index bound in the Faltings height"};
}

Ival require_f_domain(double f) {
    if (!std::isfinite(f)) fail("ExcludedCase", "non-finite height parameter");
    BigRational q(f);
    if (!(q > BigRational(-3, 4))) fail("ExcludedCase", "requires F > -0.75");
    return Ival::of_mpq(q);
}

} // namespace cartan
