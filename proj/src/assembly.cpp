#include "cartan/assembly.hpp"

#include <limits>
#include <string>

namespace cartan {

namespace {

std::uint64_t mul_checked(std::uint64_t a, std::uint64_t b) {
    if (b != 0 && a > std::numeric_limits<std::uint64_t>::max() / b)
        fail("SizeCap", "index value exceeds 64 bits");
    return a * b;
}

std::uint64_t pow_checked(std::uint64_t base, std::uint32_t e) {
    std::uint64_t r = 1;
    for (std::uint32_t i = 0; i < e; ++i) r = mul_checked(r, base);
    return r;
}

mpz_class zpow(unsigned long base, unsigned long e) {
    mpz_class r;
    mpz_class b(base);
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

std::string ival_text(const Ival& v, int digits = 20) {
    if (v.width_d() == 0.0) return v.str_hi(digits);
    return "[" + v.str_lo(digits) + ", " + v.str_hi(digits) + "]";
}

Ival case_a_exponent() {
    return Ival::exact_int(3) + Ival::exact_int(3).log() / Ival::exact_int(19).log();
}

} // namespace

PAdicIndexFact padic_index(std::uint64_t p, std::uint32_t n) {
    if (p < 3 || p % 2 == 0) fail("BadPrime", "requires an odd prime");
    mpz_class zp(static_cast<unsigned long>(p));
    if (mpz_probab_prime_p(zp.get_mpz_t(), 40) == 0) fail("NotPrime", "p must be prime");
    if (n < 1) fail("BadLevel", "requires n >= 1");

    PAdicIndexFact fact;
    fact.p = p;
    fact.n = n;
    std::uint64_t half = (p - 1) / 2;
    if (n == 1) {
        fact.candidates = {mul_checked(half, p), mul_checked(half, mul_checked(p, p))};
        if (p == 5) fact.candidates.push_back(30);
    } else {
        fact.candidates = {mul_checked(half, pow_checked(p, 2 * n - 1))};
    }
    fact.upper = mul_checked(half, pow_checked(p, 3 * n - 1));
    if (p == 3) fact.note = "the mod-3 hypothesis is equality with the normaliser, not containment";
    return fact;
}

std::uint64_t two_adic_upper() { return 32; }
std::uint64_t three_adic_surjective_upper() { return 27; }
std::uint64_t five_exceptional() { return 5; }

const std::vector<KnownPoint>& known_points() {
    static const std::vector<KnownPoint> table = [] {
        std::vector<KnownPoint> t;
        auto add = [&](BigRational j, const std::string& source, std::uint64_t index,
                       bool exact) {
            j.canonicalize();
            t.push_back(KnownPoint{std::move(j), source, index, exact});
        };
        const std::string l7 = "integral point on the level-7 nonsplit curve";
        add(BigRational(zpow(2, 3) * zpow(5, 3) * zpow(7, 5)), l7, 84, true);
        add(BigRational(zpow(2, 15) * zpow(7, 5)), l7, 84, true);
        add(BigRational(zpow(2, 9) * zpow(17, 6) * zpow(19, 3) * zpow(29, 3) * zpow(149, 3)),
            l7, 504, true);
        add(BigRational(zpow(2, 6) * zpow(11, 3) * zpow(23, 3) * zpow(149, 3) * zpow(269, 3)),
            l7, 504, true);
        add(BigRational(zpow(3, 3) * zpow(41, 3) * zpow(61, 3) * zpow(149, 3)),
            "integral point on the level-9 nonsplit curve", 108, true);

        const std::string grouped = "grouped small-image list";
        add(BigRational(-11 * zpow(131, 3)), grouped, 2736, false);
        add(BigRational(-121), grouped, 2736, false);
        add(BigRational(-(zpow(17, 2) * zpow(101, 3)), mpz_class(2)), grouped, 2736, false);
        add(BigRational(-17 * zpow(373, 3), zpow(2, 17)), grouped, 2736, false);
        add(BigRational(-7 * zpow(11, 3)), grouped, 2736, false);
        add(BigRational(-7 * zpow(137, 3) * zpow(2083, 3)), grouped, 2736, false);

        const std::string exc13 = "exceptional mod-13 triple";
        add(BigRational(zpow(2, 4) * 5 * zpow(13, 4) * zpow(17, 3), zpow(3, 13)), exc13, 182,
            true);
        add(BigRational(-(zpow(2, 12) * zpow(5, 3) * 11 * zpow(13, 4)), zpow(3, 13)), exc13,
            182, true);
        add(BigRational(zpow(2, 18) * zpow(3, 3) * zpow(13, 4) * zpow(127, 3) * zpow(139, 3) *
                            zpow(157, 3) * zpow(283, 3) * 929,
                        zpow(5, 13) * zpow(61, 13)),
            exc13, 182, true);

        const std::string two_adic = "2-adic exceptional pair";
        add(BigRational(-3 * zpow(18249920, 3), zpow(17, 16)), two_adic, 128, true);
        add(BigRational(-7 * zpow(1723187806080UL, 3), zpow(79, 16)), two_adic, 128, true);
        return t;
    }();
    return table;
}

std::optional<KnownPoint> known_point_lookup(const BigRational& j) {
    for (const KnownPoint& kp : known_points())
        if (kp.j && *kp.j == j) return kp;
    return std::nullopt;
}

const std::vector<KnownPoint>& exceptional_index_entries() {
    static const std::vector<KnownPoint> table = {
        KnownPoint{std::nullopt, "mod-7 exceptional pair, tabulated externally", 224, true},
        KnownPoint{std::nullopt, "mod-25 exceptional pair, tabulated externally", 200, true},
        KnownPoint{std::nullopt, "mod-25 exceptional pair, tabulated externally", 300, true},
    };
    return table;
}

std::string delta7_name(Delta7 d) {
    switch (d) {
        case Delta7::one: return "1";
        case Delta7::eight_thirds: return "8/3";
        case Delta7::eight: return "8";
    }
    fail("ExcludedCase", "unknown Delta7 value");
}

BigRational delta7_value(Delta7 d) {
    switch (d) {
        case Delta7::one: return BigRational(1);
        case Delta7::eight_thirds: return BigRational(8, 3);
        case Delta7::eight: return BigRational(8);
    }
    fail("ExcludedCase", "unknown Delta7 value");
}

BoundReport compose_case_A(const BigRational& lambda, std::uint32_t beta, Delta7 d7,
                           bool absorbed) {
    if (lambda < 1) fail("ExcludedCase", "requires Lambda >= 1");
    BigRational d = delta7_value(d7);
    if (absorbed && d > BigRational(8, 3)) d = BigRational(8, 3);
    BigRational v = BigRational(2488320) * d;
    for (std::uint32_t i = 0; i < beta; ++i) v *= 3;
    v *= lambda * lambda * lambda;
    return BoundReport{"case-a-index",
                       {{"lambda", format_rational(lambda)},
                        {"beta", std::to_string(beta)},
                        {"delta7", format_rational(d)},
                        {"absorbed", absorbed ? "true" : "false"}},
                       RealBound{Ival::of_mpq(v), Rounding::up},
                       "index composition over the nonsplit prime set"};
}

BoundReport compose_case_A(const Ival& lambda, std::uint32_t beta, Delta7 d7, bool absorbed) {
    if (!lambda.certified_greater(0.0)) fail("ExcludedCase", "requires Lambda > 0");
    BigRational d = delta7_value(d7);
    if (absorbed && d > BigRational(8, 3)) d = BigRational(8, 3);
    BigRational coeff = BigRational(2488320) * d;
    for (std::uint32_t i = 0; i < beta; ++i) coeff *= 3;
    Ival v = Ival::of_mpq(coeff) * lambda * lambda * lambda;
    return BoundReport{"case-a-index",
                       {{"lambda", ival_text(lambda)},
                        {"beta", std::to_string(beta)},
                        {"delta7", format_rational(d)},
                        {"absorbed", absorbed ? "true" : "false"}},
                       RealBound{v, Rounding::up},
                       "index composition over the nonsplit prime set"};
}

BoundReport compose_case_B(const BigRational& lambda) {
    if (lambda < 1) fail("ExcludedCase", "requires Lambda >= 1");
    BigRational v = BigRational(4300000000000L) * lambda * lambda;
    return BoundReport{"case-b-index",
                       {{"lambda", format_rational(lambda)}},
                       RealBound{Ival::of_mpq(v), Rounding::up},
                       "index composition with large primes surjective"};
}

BoundReport compose_case_B(const Ival& lambda) {
    if (!lambda.certified_greater(0.0)) fail("ExcludedCase", "requires Lambda > 0");
    Ival v = Ival::exact_int(4300000000000L) * lambda * lambda;
    return BoundReport{"case-b-index",
                       {{"lambda", ival_text(lambda)}},
                       RealBound{v, Rounding::up},
                       "index composition with large primes surjective"};
}

mpz_class entanglement_ratio_bound(std::uint32_t alpha) {
    mpz_class v = 1536;
    for (std::uint32_t i = 0; i < alpha; ++i) v *= 6;
    return v;
}

BoundReport full_pipeline_height(double f, const PipelineScenario& scenario) {
    return full_pipeline_height(require_f_domain(f), scenario);
}

BoundReport full_pipeline_height(const Ival& f, const PipelineScenario& scenario) {
    if (!f.certified_greater(-0.75)) fail("ExcludedCase", "requires F > -0.75");
    Ival curve = adelic_bound_height(f).result.enclosure *
                 (Ival::exact_int(1) + Ival::of_decimal("1e-9"));
    std::map<std::string, std::string> inputs{{"F", ival_text(f)}};

    if (scenario.kind == PipelineScenario::Case::B) {
        Ival lam = lambda_bound_height(f).enclosure;
        Ival v = Ival::exact_int(4300000000000L) * lam * lam;
        if (!v.certified_leq(curve))
            fail("BoundExceeded", "surjective-case pipeline exceeds the height curve");
        inputs.emplace("case", "B");
        inputs.emplace("lambda", ival_text(lam));
        return BoundReport{"pipeline-height-case-b", std::move(inputs),
                           RealBound{v, Rounding::up}, "height pipeline dominance"};
    }

    inputs.emplace("case", "A");
    if (scenario.beta.has_value() != scenario.d7.has_value())
        fail("ExcludedCase", "explicit composition needs both beta and delta7");
    if (scenario.beta) {
        Ival lam = lambda_bound_height(f).enclosure;
        BigRational coeff = BigRational(2488320) * delta7_value(*scenario.d7);
        for (std::uint32_t i = 0; i < *scenario.beta; ++i) coeff *= 3;
        Ival v = Ival::of_mpq(coeff) * lam * lam * lam;
        inputs.emplace("lambda", ival_text(lam));
        inputs.emplace("beta", std::to_string(*scenario.beta));
        inputs.emplace("delta7", format_rational(delta7_value(*scenario.d7)));
        return BoundReport{"pipeline-height-case-a", std::move(inputs),
                           RealBound{v, Rounding::up},
                           "height pipeline, explicit composition (reported only)"};
    }

    Ival v;
    if (scenario.j_integral) {
        Ival lam = lambda_bound_height(f).enclosure;
        v = Ival::exact_int(2488320) * lam.pow(case_a_exponent());
        inputs.emplace("lambda", ival_text(lam));
        inputs.emplace("j_integral", "true");
    } else {
        Ival lam = lambda_linear_q(f);
        v = Ival::exact_int(6635520) * Ival::exact_int(3).pow(Ival::of_decimal("0.525")) *
            lam.pow(case_a_exponent());
        inputs.emplace("lambda", ival_text(lam));
        inputs.emplace("j_integral", "false");
    }
    if (!v.certified_leq(curve))
        fail("BoundExceeded", "nonsplit-case pipeline exceeds the height curve");
    return BoundReport{"pipeline-height-case-a", std::move(inputs),
                       RealBound{v, Rounding::up}, "height pipeline dominance"};
}

} // namespace cartan
