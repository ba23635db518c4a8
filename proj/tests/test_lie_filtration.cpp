#include <doctest.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "cartan/lie.hpp"
#include "cartan/lifting.hpp"
#include "test_util.hpp"

using namespace cartan;

TEST_CASE("span and subspace operations") {
    LieSubspace v = span_of(5, {{1, 2, 3, 4}, {2, 4, 0, 1}});
    CHECK(v.dim() == 2);
    CHECK(span_of(5, {{1, 2, 3, 4}, {2, 4, 6, 8}}).dim() == 1); // dependent rows
    CHECK(subspace_contains(v, {1, 2, 3, 4}));
    CHECK(subspace_contains(v, {3, 6, 3, 5})); // sum of the generators
    CHECK(!subspace_contains(v, {1, 0, 0, 0}));
    CHECK(subspace_subset(span_of(5, {{1, 2, 3, 4}}), v));
    CHECK(!subspace_subset(v, span_of(5, {{1, 2, 3, 4}})));
    CHECK(subspace_sum(v, span_of(5, {{1, 0, 0, 0}, {0, 1, 0, 0}})).dim() == 4);
    CHECK(full_gl2_space(5).dim() == 4);
    CHECK(full_sl2_space(5).dim() == 3);
    CHECK(sl_part(full_gl2_space(5)) == full_sl2_space(5));
    CHECK(sl_part(span_of(5, {{1, 0, 0, 1}})).dim() == 0);
}

TEST_CASE("module pieces match their stated spans") {
    for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
        std::uint32_t eps = least_nonresidue(p);
        CHECK(build_V(p, VPiece::V1, CartanCase::nonsplit) == span_of(p, {{1, 0, 0, 1}}));
        CHECK(build_V(p, VPiece::V2, CartanCase::nonsplit) == span_of(p, {{0, eps, 1, 0}}));
        CHECK(build_V(p, VPiece::V3, CartanCase::nonsplit) ==
              span_of(p, {{1, 0, 0, p - 1}, {0, eps, p - 1, 0}}));
        CHECK(build_V(p, VPiece::V1, CartanCase::split) == span_of(p, {{1, 0, 0, 1}}));
        CHECK(build_V(p, VPiece::V2, CartanCase::split) == span_of(p, {{1, 0, 0, p - 1}}));
        CHECK(build_V(p, VPiece::V3, CartanCase::split) ==
              span_of(p, {{0, 1, 1, 0}, {0, 1, p - 1, 0}}));
        LieSubspace sum = subspace_sum(
            subspace_sum(build_V(p, VPiece::V1, CartanCase::nonsplit),
                         build_V(p, VPiece::V2, CartanCase::nonsplit)),
            build_V(p, VPiece::V3, CartanCase::nonsplit));
        CHECK(sum == full_gl2_space(p));
    }
}

TEST_CASE("bracket closure") {
    for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
        CHECK(bracket_closed(build_V(p, VPiece::V1, CartanCase::nonsplit)));
        CHECK(bracket_closed(build_V(p, VPiece::V2, CartanCase::nonsplit)));
        CHECK(bracket_closed(full_sl2_space(p)));
        CHECK(bracket_closed(full_gl2_space(p)));
        CHECK(!bracket_closed(build_V(p, VPiece::V3, CartanCase::nonsplit)));
        CHECK(!bracket_closed(build_V(p, VPiece::V3, CartanCase::split)));
    }
}

TEST_CASE("an explicit bracket leaves V3") {
    // [diag(1,-1), antidiag(eps,-1)] = 2*antidiag(eps,1), which spans V2
    std::uint32_t p = 7, eps = least_nonresidue(7);
    PrimePower ctx(p, 1);
    Mat2 a(ctx, 1, 0, 0, -1), b(ctx, 0, eps, -1, 0);
    Mat2 br = mat_sub(mat_mul(a, b), mat_mul(b, a));
    LieSubspace v3 = build_V(p, VPiece::V3, CartanCase::nonsplit);
    CHECK(subspace_contains(v3, {a.a, a.b, a.c, a.d}));
    CHECK(subspace_contains(v3, {b.a, b.b, b.c, b.d}));
    CHECK(!subspace_contains(v3, {br.a, br.b, br.c, br.d}));
    CHECK(subspace_contains(build_V(p, VPiece::V2, CartanCase::nonsplit),
                            {br.a, br.b, br.c, br.d}));
}

TEST_CASE("stability and irreducibility under the Cartan normaliser") {
    MatGroup c = build_cartan(PrimePower(7, 1), CartanKind::nonsplit_normaliser);
    for (VPiece which : {VPiece::V1, VPiece::V2, VPiece::V3})
        CHECK(is_stable_under(build_V(7, which, CartanCase::nonsplit), c));
    CHECK(is_irreducible_under(build_V(7, VPiece::V2, CartanCase::nonsplit), c));
    CHECK(is_irreducible_under(build_V(7, VPiece::V3, CartanCase::nonsplit), c));
    CHECK(!is_irreducible_under(full_gl2_space(7), c));
    // the plain Cartan does not act irreducibly on V3: it preserves eigenlines
    MatGroup csp = build_cartan(PrimePower(7, 1), CartanKind::split);
    CHECK(is_stable_under(build_V(7, VPiece::V3, CartanCase::split), csp));
    CHECK(!is_irreducible_under(build_V(7, VPiece::V3, CartanCase::split), csp));
}

TEST_CASE("graded images of the Cartan tower") {
    MatGroup c9 = build_cartan(PrimePower(3, 2), CartanKind::nonsplit_normaliser);
    LieSubspace expected = subspace_sum(build_V(3, VPiece::V1, CartanCase::nonsplit),
                                        build_V(3, VPiece::V2, CartanCase::nonsplit));
    CHECK(lie_image(c9, 1) == expected);
    CHECK(lie_image(full_gl2(PrimePower(3, 2)), 1) == full_gl2_space(3));
    CHECK(error_code_of([&] { lie_image(c9, 2); }) == "BadLevel");
}

TEST_CASE("framing detection") {
    PrimePower ctx(7, 1);
    MatGroup cns = build_cartan(ctx, CartanKind::nonsplit_normaliser);
    Mat2 g(ctx, 1, 2, 0, 1);
    std::vector<Mat2> moved;
    for (const Mat2& m : cns.generators) moved.push_back(conjugate(m, g));
    MatGroup twisted = generate(ctx, moved);
    auto framing = find_ncartan_framing(twisted);
    REQUIRE(framing.has_value());
    CHECK(framing->kind == CartanCase::nonsplit);
    MatGroup target = build_cartan(ctx, CartanKind::nonsplit_normaliser);
    for (std::uint64_t e : twisted.elements)
        CHECK(target.contains(conjugate(Mat2::decode(ctx, e), framing->conjugator)));

    MatGroup csp = build_cartan(ctx, CartanKind::split_normaliser);
    auto split_framing = find_ncartan_framing(csp);
    REQUIRE(split_framing.has_value());
    CHECK(split_framing->kind == CartanCase::split);

    CHECK(!find_ncartan_framing(build_cartan(ctx, CartanKind::borel)).has_value());
    CHECK(is_ncartan_lift_finite(build_cartan(PrimePower(3, 2), CartanKind::nonsplit_normaliser)));
    CHECK(!is_ncartan_lift_finite(build_cartan(PrimePower(3, 2), CartanKind::borel)));
}

TEST_CASE("lift classification of constructed kernels") {
    PrimePower ctx(3, 2);
    std::uint32_t eps = least_nonresidue(3);
    MatGroup c9 = build_cartan(ctx, CartanKind::nonsplit_normaliser);

    auto r = classify_cartan_lift(c9);
    REQUIRE(r.has_value());
    CHECK(r->classification == LiftClass::normaliser_case);
    CHECK(r->g_dims == std::vector<std::uint32_t>{2});

    // full preimage of the mod-3 normaliser inside GL2(Z/9)
    std::vector<Mat2> gens = c9.generators;
    gens.push_back(Mat2(ctx, 4, 0, 0, 1));
    gens.push_back(Mat2(ctx, 1, 3, 0, 1));
    gens.push_back(Mat2(ctx, 1, 0, 3, 1));
    gens.push_back(Mat2(ctx, 4, 0, 0, 4));
    MatGroup preimage = generate(ctx, gens);
    CHECK(preimage.order() == 16 * 81);
    auto rf = classify_cartan_lift(preimage);
    REQUIRE(rf.has_value());
    CHECK(rf->classification == LiftClass::full_kernel_case);
    CHECK(rf->g_dims == std::vector<std::uint32_t>{4});

    // complement-based semidirect product with kernel V1 + V3
    MatGroup h = find_complement(c9);
    std::vector<Mat2> sgens = h.generators;
    sgens.push_back(Mat2(ctx, 4, 0, 0, 4));                    // I + 3*I
    sgens.push_back(Mat2(ctx, 4, 0, 0, 7));                    // I + 3*diag(1,-1)
    sgens.push_back(Mat2(ctx, 1, 3 * eps, 9 - 3, 1));          // I + 3*antidiag(eps,-1)
    MatGroup semi = generate(ctx, sgens);
    auto rs = classify_cartan_lift(semi);
    REQUIRE(rs.has_value());
    CHECK(rs->classification == LiftClass::semidirect_V1V3_case);
    CHECK(rs->g_dims == std::vector<std::uint32_t>{3});

    // kernel V1 alone violates the trichotomy hypotheses
    std::vector<Mat2> vgens = h.generators;
    vgens.push_back(Mat2(ctx, 4, 0, 0, 4));
    auto rv = classify_cartan_lift(generate(ctx, vgens));
    REQUIRE(rv.has_value());
    CHECK(rv->classification == LiftClass::violation);

    CHECK(!classify_cartan_lift(build_cartan(ctx, CartanKind::borel)).has_value());
}

TEST_CASE("tower census smoke run") {
    SamplerConfig sc;
    sc.samples = 10;
    sc.seed = 424242;
    std::vector<CartanLiftReport> rows = verify_cartan_tower(3, 2, sc);
    CHECK(rows.size() >= 4);
    for (const CartanLiftReport& r : rows) {
        REQUIRE(r.description.rfind("expected:", 0) == 0);
        std::string expected = r.description.substr(9, r.description.find('|') - 9);
        CHECK(expected == lift_class_name(r.classification));
    }
}
