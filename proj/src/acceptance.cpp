#include "cartan/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "cartan/assembly.hpp"
#include "cartan/bounds.hpp"
#include "cartan/heights.hpp"
#include "cartan/lie.hpp"
#include "cartan/lifting.hpp"
#include "cartan/matgroup.hpp"

namespace cartan {

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::uint64_t mix_seed(std::uint64_t base, int id) {
    return base + 0x9e3779b97f4a7c15ULL * std::uint64_t(id);
}

Mat2 random_invertible(PrimePower ctx, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> dist(0, ctx.modulus - 1);
    for (int tries = 0; tries < 100000; ++tries) {
        Mat2 m(ctx, dist(rng), dist(rng), dist(rng), dist(rng));
        if (is_invertible(m)) return m;
    }
    fail("SearchExhausted", "no invertible sample found");
}

Outcome criterion_cartan_index() {
    const std::pair<std::uint32_t, std::uint32_t> pairs[] = {{3, 1}, {3, 2}, {3, 3},
                                                             {5, 1}, {5, 2}, {7, 1}};
    int ok = 0;
    std::ostringstream detail;
    for (auto [p, n] : pairs) {
        MatGroup c = build_cartan(PrimePower(p, n), CartanKind::nonsplit_normaliser);
        std::uint64_t idx = index_in_gl2(c);
        std::uint64_t expected = (p - 1) / 2;
        for (std::uint32_t i = 0; i + 1 < 2 * n; ++i) expected *= p;
        if (idx == expected) ++ok;
        else detail << " mismatch at (" << p << "," << n << "): " << idx << " vs " << expected;
    }
    return {ok == 6, "6 (p,n) pairs, " + std::to_string(ok) + " exact matches" + detail.str()};
}

Outcome criterion_lie_filtration() {
    int ok = 0, total = 0;
    for (std::uint32_t p : {3u, 5u, 7u}) {
        LieSubspace expected = subspace_sum(build_V(p, VPiece::V1, CartanCase::nonsplit),
                                            build_V(p, VPiece::V2, CartanCase::nonsplit));
        for (std::uint32_t k : {1u, 2u}) {
            ++total;
            MatGroup c = build_cartan(PrimePower(p, k + 1), CartanKind::nonsplit_normaliser);
            if (lie_image(c, k) == expected) ++ok;
        }
    }
    return {ok == total,
            std::to_string(ok) + "/" + std::to_string(total) + " graded images equal V1+V2"};
}

Outcome criterion_module_decomposition() {
    bool pass = true;
    std::ostringstream detail;
    for (std::uint32_t p : {5u, 7u, 11u, 13u}) {
        MatGroup c = build_cartan(PrimePower(p, 1), CartanKind::nonsplit_normaliser);
        LieSubspace v1 = build_V(p, VPiece::V1, CartanCase::nonsplit);
        LieSubspace v2 = build_V(p, VPiece::V2, CartanCase::nonsplit);
        LieSubspace v3 = build_V(p, VPiece::V3, CartanCase::nonsplit);
        bool here = is_stable_under(v1, c) && is_stable_under(v2, c) && is_stable_under(v3, c);
        here = here && subspace_sum(subspace_sum(v1, v2), v3) == full_gl2_space(p);
        here = here && is_irreducible_under(v2, c) && is_irreducible_under(v3, c);
        if (!here) {
            pass = false;
            detail << " decomposition failed at p=" << p;
        }
    }
    for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
        if (bracket_closed(build_V(p, VPiece::V3, CartanCase::nonsplit))) {
            pass = false;
            detail << " V3 bracket-closed at p=" << p;
        }
    }
    return {pass, pass ? "stability, irreducibility and bracket checks hold for all primes"
                       : detail.str()};
}

Outcome criterion_v3_splits() {
    PrimePower ctx(3, 1);
    std::uint32_t eps = least_nonresidue(3);
    MatGroup g = generate(ctx, {Mat2(ctx, 0, eps, 1, 0), Mat2(ctx, 1, 0, 0, -1)});
    MatGroup cns = build_cartan(ctx, CartanKind::nonsplit);
    for (std::uint64_t enc : g.elements) {
        Mat2 m = Mat2::decode(ctx, enc);
        if (cns.contains(m) && projective_order(m) > 2)
            return {false, "battery element has projective order above 2"};
    }
    LieSubspace l1 = span_of(3, {{1, 0, 0, 2}});
    LieSubspace l2 = span_of(3, {{0, eps, 3 - 1, 0}});
    LieSubspace v3 = build_V(3, VPiece::V3, CartanCase::nonsplit);
    bool pass = is_stable_under(l1, g) && is_stable_under(l2, g) &&
                subspace_sum(l1, l2) == v3 && !is_irreducible_under(v3, g);
    return {pass, pass ? "V3 = line(diag) + line(antidiag), both stable, V3 reducible"
                       : "stable-line decomposition failed"};
}

Outcome criterion_grade_containment(const AcceptanceConfig& cfg) {
    PrimePower ctx(3, 3);
    std::mt19937_64 rng(mix_seed(cfg.seed, 5));
    std::uint64_t violations = 0;
    for (std::uint64_t i = 0; i < cfg.containment_samples; ++i) {
        std::vector<Mat2> gens;
        std::uint64_t count = 1 + rng() % 3;
        for (std::uint64_t k = 0; k < count; ++k) gens.push_back(random_invertible(ctx, rng));
        MatGroup g = generate(ctx, gens);
        if (!subspace_subset(lie_image(g, 1), lie_image(g, 2))) ++violations;
    }
    return {violations == 0, std::to_string(cfg.containment_samples) + " random subgroups, " +
                                 std::to_string(violations) + " containment violations"};
}

Outcome criterion_tower_census(const AcceptanceConfig& cfg) {
    std::uint64_t rows = 0, mismatched = 0, unexpected_violation = 0;
    std::ostringstream detail;
    for (std::uint32_t p : {3u, 5u}) {
        SamplerConfig sc;
        sc.samples = cfg.tower_samples;
        sc.seed = mix_seed(cfg.seed, 6) + p;
        for (const CartanLiftReport& r : verify_cartan_tower(p, 2, sc)) {
            ++rows;
            std::string expected;
            const std::string& d = r.description;
            if (d.rfind("expected:", 0) == 0) {
                auto bar = d.find('|');
                expected = d.substr(9, bar == std::string::npos ? std::string::npos : bar - 9);
            }
            std::string observed = lift_class_name(r.classification);
            if (expected.empty() || expected != observed) {
                ++mismatched;
                if (r.classification == LiftClass::violation) ++unexpected_violation;
                if (mismatched <= 3)
                    detail << " [p=" << p << " level=" << r.level << " expected=" << expected
                           << " observed=" << observed << "]";
            }
        }
    }
    std::ostringstream s;
    s << rows << " census rows (battery + " << cfg.tower_samples << " samples per prime), "
      << mismatched << " mismatches, " << unexpected_violation << " unexpected violations"
      << detail.str();
    return {mismatched == 0, s.str()};
}

Outcome criterion_schur_zassenhaus(const AcceptanceConfig& cfg) {
    PrimePower ctx(3, 2);
    std::mt19937_64 rng(mix_seed(cfg.seed, 7));
    std::uniform_int_distribution<std::uint32_t> d3(0, 2);
    std::uint64_t failures = 0, done = 0;
    while (done < cfg.complement_samples) {
        Mat2 top = random_invertible(ctx, rng);
        if (element_order(reduce_level(top, 1)) % 3 == 0) continue;
        Mat2 k1(ctx, 1 + 3 * d3(rng), 3 * d3(rng), 3 * d3(rng), 1 + 3 * d3(rng));
        Mat2 k2(ctx, 1 + 3 * d3(rng), 3 * d3(rng), 3 * d3(rng), 1 + 3 * d3(rng));
        MatGroup g = generate(ctx, {top, k1, k2});
        if (group_order(reduce_group(g, 1)) % 3 == 0) continue;
        ++done;
        try {
            MatGroup h1 = find_complement(g);
            MatGroup h2 = find_complement_seeded(g, rng());
            bool ok = is_complement(g, h1) && is_complement(g, h2);
            Mat2 x = complements_conjugate(g, h1, h2);
            for (std::uint64_t enc : h1.elements)
                ok = ok && h2.contains(conjugate(Mat2::decode(ctx, enc), x));
            if (!ok) ++failures;
        } catch (const DomainError&) {
            ++failures;
        }
    }
    return {failures == 0, std::to_string(done) + " coprime-top subgroups of the mod-9 ring, " +
                               std::to_string(failures) + " complement failures"};
}

Outcome criterion_hensel(const AcceptanceConfig& cfg) {
    PrimePower ctx(5, 3);
    std::mt19937_64 rng(mix_seed(cfg.seed, 8));
    std::uniform_int_distribution<std::uint32_t> dist(0, ctx.modulus - 1);
    std::uint64_t failures = 0, done = 0;
    auto char_value = [&](const QuadResidue& lam, std::uint32_t tr, std::uint32_t dt) {
        QuadResidue sq = qr_mul(lam, lam);
        QuadResidue tl = qr_mul(QuadResidue(ctx, tr, 0), lam);
        return qr_add(qr_sub(sq, tl), QuadResidue(ctx, dt, 0));
    };
    while (done < cfg.hensel_samples) {
        Mat2 m(ctx, dist(rng), dist(rng), dist(rng), dist(rng));
        std::uint32_t tr = trace(m), dt = det(m);
        std::uint64_t disc =
            (std::uint64_t(tr) * tr + 4ULL * ctx.modulus * ctx.modulus - 4ULL * dt) %
            ctx.modulus;
        if (disc % 5 == 0) continue;
        ++done;
        try {
            auto [l1, l2] = hensel_eigenvalues(m);
            QuadResidue z1 = char_value(l1, tr, dt);
            QuadResidue z2 = char_value(l2, tr, dt);
            bool ok = z1.re == 0 && z1.im == 0 && z2.re == 0 && z2.im == 0;
            Mat2 g = random_invertible(ctx, rng);
            auto [m1, m2] = hensel_eigenvalues(conjugate(m, g));
            ok = ok && ((l1 == m1 && l2 == m2) || (l1 == m2 && l2 == m1));
            if (!ok) ++failures;
        } catch (const DomainError&) {
            ++failures;
        }
    }
    return {failures == 0, std::to_string(done) + " unit-discriminant matrices mod 125, " +
                               std::to_string(failures) + " failures"};
}

Outcome criterion_mertens(const AcceptanceConfig& cfg) {
    auto bad_n = mertens_integer_scan(cfg.mertens_max_n);
    auto bad_k = mertens_primorial_scan(cfg.mertens_max_k);
    BigRational lhs12 = mertens_lhs(12);
    Ival ratio = Ival::of_mpq(lhs12) /
                 (Ival::exact_int(1) + Ival::of_mpz(mpz_class(12)).log().log());
    bool r12 = lhs12 == 2 && ratio.certified_less(1.05);
    std::ostringstream s;
    s << "integers to " << cfg.mertens_max_n << ": "
      << (bad_n ? "first failure at " + std::to_string(*bad_n) : "no failures")
      << "; primorials to k=" << cfg.mertens_max_k << ": "
      << (bad_k ? "first failure at k=" + std::to_string(*bad_k) : "no failures")
      << "; N=12 ratio < 1.05: " << (r12 ? "yes" : "no");
    return {!bad_n && !bad_k && r12, s.str()};
}

Outcome criterion_effiso_anchor() {
    EffisoParams params;
    params.degree = 1;
    params.F = 0.6;
    params.c_count = 0;
    RealBound r = effiso_max_lambda(EffisoVariant::Q_cartan_proof_stage, params);
    double v = r.value_d();
    double rel = std::fabs(v - 2.41e6) / 2.41e6;
    std::ostringstream s;
    s << "max Lambda = " << v << ", relative offset from 2.41e6 = " << rel;
    return {rel < 0.01, s.str()};
}

Outcome criterion_delta_anchor() {
    RealBound d = delta_bound(1.2e15);
    bool pass = d.enclosure.certified_less(0.352);
    std::ostringstream s;
    s << "delta(1.2e15) in [" << d.enclosure.str_lo(12) << ", " << d.enclosure.str_hi(12)
      << "], certified < 0.352: " << (pass ? "yes" : "no");
    return {pass, s.str()};
}

Outcome criterion_known_points() {
    std::uint64_t rows = 0, failures = 0;
    for (const KnownPoint& kp : known_points()) {
        if (!kp.j) continue;
        ++rows;
        RealBound upper = faltings_interval(*kp.j).second;
        Ival curve = adelic_bound_height(upper.enclosure).result.enclosure;
        if (!Ival::exact_uint(kp.adelic_index).certified_leq(curve)) ++failures;
    }
    Ival floor_curve =
        adelic_bound_height(Ival::of_mpq(BigRational(-3, 4) + BigRational(1, 1 << 20)))
            .result.enclosure;
    for (const KnownPoint& kp : exceptional_index_entries()) {
        ++rows;
        if (!Ival::exact_uint(kp.adelic_index).certified_leq(floor_curve)) ++failures;
    }
    return {failures == 0, std::to_string(rows) + " tabulated indices, " +
                               std::to_string(failures) + " exceed the height curve"};
}

Outcome criterion_pipeline(const AcceptanceConfig& cfg) {
    std::uint32_t m = cfg.pipeline_grid < 2 ? 2 : cfg.pipeline_grid;
    const double lo_off = 1e-6, hi_off = 1e18 + 0.75;
    std::uint64_t checked = 0;
    PipelineScenario scenario;
    scenario.kind = PipelineScenario::Case::B;
    for (std::uint32_t i = 0; i < m; ++i) {
        double t = double(i) / double(m - 1);
        double f = -0.75 + std::exp(std::log(lo_off) + t * (std::log(hi_off) - std::log(lo_off)));
        full_pipeline_height(f, scenario); // throws if the curve is exceeded
        ++checked;
    }
    return {checked == m, std::to_string(checked) + " grid points dominated by the height curve"};
}

Outcome dispatch_criterion(int id, const AcceptanceConfig& cfg) {
    switch (id) {
        case 1: return criterion_cartan_index();
        case 2: return criterion_lie_filtration();
        case 3: return criterion_module_decomposition();
        case 4: return criterion_v3_splits();
        case 5: return criterion_grade_containment(cfg);
        case 6: return criterion_tower_census(cfg);
        case 7: return criterion_schur_zassenhaus(cfg);
        case 8: return criterion_hensel(cfg);
        case 9: return criterion_mertens(cfg);
        case 10: return criterion_effiso_anchor();
        case 11: return criterion_delta_anchor();
        case 12: return criterion_known_points();
        case 13: return criterion_pipeline(cfg);
        default: fail("ExcludedCase", "criterion id must be between 1 and 13");
    }
}

const char* criterion_name(int id) {
    switch (id) {
        case 1: return "cartan-index-formula";
        case 2: return "cartan-lie-filtration";
        case 3: return "module-decomposition";
        case 4: return "v3-splits-at-3";
        case 5: return "grade-containment";
        case 6: return "cartan-tower-census";
        case 7: return "schur-zassenhaus-complements";
        case 8: return "hensel-eigenvalues";
        case 9: return "mertens-certified-scan";
        case 10: return "effiso-proof-anchor";
        case 11: return "delta-anchor";
        case 12: return "known-points-dominated";
        case 13: return "pipeline-dominance";
        default: return "unknown";
    }
}

} // namespace

CriterionResult run_criterion(int id, const AcceptanceConfig& cfg) {
    CriterionResult result;
    result.id = id;
    result.name = criterion_name(id);
    auto start = std::chrono::steady_clock::now();
    try {
        Outcome o = dispatch_criterion(id, cfg);
        result.pass = o.pass;
        result.detail = o.detail;
    } catch (const DomainError& e) {
        result.pass = false;
        result.detail = std::string("error ") + e.code() + ": " + e.what();
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= 13; ++id) out.push_back(run_criterion(id, cfg));
    return out;
}

} // namespace cartan
