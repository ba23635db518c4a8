#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <vector>

#include "cartan/matgroup.hpp"
#include "test_util.hpp"

using namespace cartan;

namespace {

// Brute-force element sets used as oracles below.
std::vector<std::uint64_t> all_invertible(PrimePower ctx) {
    std::vector<std::uint64_t> out;
    std::uint32_t m = ctx.modulus;
    for (std::uint32_t a = 0; a < m; ++a)
        for (std::uint32_t b = 0; b < m; ++b)
            for (std::uint32_t c = 0; c < m; ++c)
                for (std::uint32_t d = 0; d < m; ++d) {
                    Mat2 x(ctx, a, b, c, d);
                    if (is_invertible(x)) out.push_back(x.encode());
                }
    std::sort(out.begin(), out.end());
    return out;
}

bool same_elements(const MatGroup& g, const std::vector<std::uint64_t>& enc) {
    return g.elements == enc;
}

} // namespace

TEST_CASE("gl2 order formula vs exhaustive count") {
    CHECK(all_invertible(PrimePower(3, 2)).size() == gl2_order(PrimePower(3, 2)));
    CHECK(all_invertible(PrimePower(5, 1)).size() == gl2_order(PrimePower(5, 1)));
    CHECK(gl2_order(PrimePower(3, 2)) == 3888);
    CHECK(gl2_order(PrimePower(5, 1)) == 480);
    CHECK(gl2_order(PrimePower(5, 2)) == 300000);
    CHECK(full_gl2(PrimePower(3, 2)).order() == 3888);
}

TEST_CASE("nonsplit Cartan is the centralizer of a nonresidue root") {
    PrimePower ctx(5, 1);
    std::uint32_t eps = least_nonresidue(5);
    Mat2 j(ctx, 0, eps, 1, 0);
    std::vector<std::uint64_t> cent;
    for (std::uint64_t e : all_invertible(ctx)) {
        Mat2 m = Mat2::decode(ctx, e);
        if (mat_mul(m, j) == mat_mul(j, m)) cent.push_back(e);
    }
    MatGroup c = build_cartan(ctx, CartanKind::nonsplit);
    CHECK(same_elements(c, cent));
    CHECK(c.order() == 24); // p^2 - 1

    // the normaliser is exactly the set of invertible m with m^-1 C m = C
    std::vector<std::uint64_t> norm;
    for (std::uint64_t e : all_invertible(ctx)) {
        Mat2 m = Mat2::decode(ctx, e);
        Mat2 mi = inverse(m);
        bool ok = true;
        for (std::uint64_t ce : c.elements) {
            Mat2 moved = mat_mul(mat_mul(mi, Mat2::decode(ctx, ce)), m);
            if (!c.contains(moved)) {
                ok = false;
                break;
            }
        }
        if (ok) norm.push_back(e);
    }
    MatGroup cplus = build_cartan(ctx, CartanKind::nonsplit_normaliser);
    CHECK(same_elements(cplus, norm));
    CHECK(cplus.order() == 48);
    CHECK(normalizes(cplus, c));
}

TEST_CASE("split Cartan and Borel element sets") {
    PrimePower ctx(5, 1);
    std::vector<std::uint64_t> diag, upper;
    for (std::uint64_t e : all_invertible(ctx)) {
        Mat2 m = Mat2::decode(ctx, e);
        if (m.b == 0 && m.c == 0) diag.push_back(e);
        if (m.c == 0) upper.push_back(e);
    }
    CHECK(same_elements(build_cartan(ctx, CartanKind::split), diag));
    CHECK(same_elements(build_cartan(ctx, CartanKind::borel), upper));
    CHECK(build_cartan(ctx, CartanKind::split).order() == 16);
    CHECK(build_cartan(ctx, CartanKind::split_normaliser).order() == 32);
    CHECK(build_cartan(ctx, CartanKind::borel).order() == 80);
    CHECK(build_cartan(PrimePower(5, 2), CartanKind::split).order() == 400);
    CHECK(build_cartan(PrimePower(5, 2), CartanKind::borel).order() == 10000);
    CHECK(error_code_of([] { build_cartan(PrimePower(2, 1), CartanKind::split); }) == "BadPrime");
}

TEST_CASE("kind names round-trip") {
    for (CartanKind k : {CartanKind::nonsplit, CartanKind::nonsplit_normaliser, CartanKind::split,
                         CartanKind::split_normaliser, CartanKind::borel})
        CHECK(parse_cartan_kind(cartan_kind_name(k)) == k);
    CHECK(parse_cartan_kind("nonsplit+") == CartanKind::nonsplit_normaliser);
    CHECK(parse_cartan_kind("split+") == CartanKind::split_normaliser);
    CHECK(error_code_of([] { parse_cartan_kind("weird"); }) == "ParseError");
}

TEST_CASE("nonsplit normaliser index mod 25") {
    MatGroup c = build_cartan(PrimePower(5, 2), CartanKind::nonsplit_normaliser);
    CHECK(group_order(c) == 1200);
    CHECK(index_in_gl2(c) == 250);
    CHECK(group_order(c) * index_in_gl2(c) == gl2_order(PrimePower(5, 2)));
}

TEST_CASE("generated closures are subgroups") {
    PrimePower ctx(3, 2);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Mat2> gens;
        for (int k = 0; k < 2; ++k) {
            Mat2 m(ctx, std::int64_t(rng() % 9), std::int64_t(rng() % 9),
                   std::int64_t(rng() % 9), std::int64_t(rng() % 9));
            if (is_invertible(m)) gens.push_back(m);
        }
        MatGroup g = generate(ctx, gens);
        CHECK(g.contains(Mat2::identity(ctx)));
        for (int probe = 0; probe < 25; ++probe) {
            Mat2 x = g.element(rng() % g.order());
            Mat2 y = g.element(rng() % g.order());
            CHECK(g.contains(mat_mul(x, y)));
            CHECK(g.contains(inverse(x)));
        }
        CHECK(close_under(ctx, g.generators) == g.elements);
        CHECK(gl2_order(ctx) % g.order() == 0);
    }
    CHECK(generate(ctx, {}).order() == 1);
}

TEST_CASE("reduction and level kernels of the Cartan tower") {
    MatGroup c25 = build_cartan(PrimePower(5, 2), CartanKind::nonsplit_normaliser);
    MatGroup c5 = build_cartan(PrimePower(5, 1), CartanKind::nonsplit_normaliser);
    CHECK(reduce_group(c25, 1).elements == c5.elements);
    MatGroup k = level_kernel(c25, 1);
    CHECK(k.order() == c25.order() / c5.order());
    CHECK(k.order() == 25);
    for (std::uint64_t e : k.elements)
        CHECK(reduce_level(Mat2::decode(c25.ctx, e), 1).is_identity());
    CHECK(error_code_of([&] { level_kernel(c5, 1); }) == "BadLevel");
}

TEST_CASE("sl2 part") {
    MatGroup g = full_gl2(PrimePower(3, 2));
    MatGroup s = sl2_part(g);
    CHECK(s.order() == 648); // |GL2(Z/9)| / phi(9)
    for (std::uint64_t e : s.elements) CHECK(det(Mat2::decode(s.ctx, e)) == 1);
}

TEST_CASE("conjugacy search") {
    PrimePower ctx(7, 1);
    MatGroup c = build_cartan(ctx, CartanKind::split);
    Mat2 g(ctx, 1, 1, 0, 1);
    std::vector<Mat2> moved;
    for (std::uint64_t e : c.elements) moved.push_back(conjugate(Mat2::decode(ctx, e), g));
    MatGroup h = generate(ctx, find_generators(ctx, close_under(ctx, moved)));
    auto x = is_conjugate_subgroup(c, h);
    REQUIRE(x.has_value());
    for (std::uint64_t e : c.elements) CHECK(h.contains(conjugate(Mat2::decode(ctx, e), *x)));
    CHECK(!is_conjugate_subgroup(c, build_cartan(ctx, CartanKind::nonsplit)).has_value());
    CHECK(error_code_of([] {
              PrimePower big(5, 3);
              MatGroup a = build_cartan(big, CartanKind::split);
              Mat2 t(big, 1, 1, 0, 1);
              std::vector<Mat2> gens;
              for (const Mat2& gen : a.generators) gens.push_back(conjugate(gen, t));
              return is_conjugate_subgroup(a, generate(big, gens));
          }) == "SizeCap");
}

TEST_CASE("element and projective orders") {
    PrimePower ctx(5, 2);
    std::mt19937_64 rng(17);
    int seen = 0;
    while (seen < 60) {
        Mat2 m(ctx, std::int64_t(rng() % 25), std::int64_t(rng() % 25), std::int64_t(rng() % 25),
               std::int64_t(rng() % 25));
        if (!is_invertible(m)) continue;
        ++seen;
        std::uint64_t k = 1;
        Mat2 acc = m;
        while (!acc.is_identity()) {
            acc = mat_mul(acc, m);
            ++k;
        }
        CHECK(element_order(m) == k);
        std::uint64_t pk = 1;
        acc = m;
        while (!acc.is_scalar()) {
            acc = mat_mul(acc, m);
            ++pk;
        }
        CHECK(projective_order(m) == pk);
    }
}

TEST_CASE("generator selection round-trips") {
    MatGroup c = build_cartan(PrimePower(3, 2), CartanKind::nonsplit_normaliser);
    std::vector<Mat2> gens = find_generators(c.ctx, c.elements);
    CHECK(close_under(c.ctx, gens) == c.elements);
    CHECK(gens.size() <= 4);
}

TEST_CASE("closure budget cap") {
    CHECK(setenv("CARTAN_ADELIC_BUDGET", "50", 1) == 0);
    CHECK(closure_budget() == 50);
    CHECK(error_code_of([] { full_gl2(PrimePower(7, 1)); }) == "SizeCap");
    unsetenv("CARTAN_ADELIC_BUDGET");
    CHECK(closure_budget() == (std::uint64_t(1) << 24));
}

TEST_CASE("lagrange guard") {
    MatGroup bogus;
    bogus.ctx = PrimePower(5, 1);
    for (std::uint64_t i = 0; i < 7; ++i) bogus.elements.push_back(i);
    CHECK(error_code_of([&] { index_in_gl2(bogus); }) == "LagrangeViolation");
}
