#include <doctest.h>

#include <cstdint>
#include <random>
#include <vector>

#include "cartan/lifting.hpp"
#include "test_util.hpp"

using namespace cartan;

TEST_CASE("complement of a cyclic group with known answer") {
    // <diag(2,1)> mod 9 is cyclic of order 6; its level-1 kernel has order 3
    // and the unique complement is generated by diag(8,1).
    PrimePower ctx(3, 2);
    MatGroup g = generate(ctx, {Mat2(ctx, 2, 0, 0, 1)});
    CHECK(g.order() == 6);
    MatGroup h = find_complement(g);
    CHECK(h.order() == 2);
    CHECK(h.contains(Mat2::identity(ctx)));
    CHECK(h.contains(Mat2(ctx, 8, 0, 0, 1)));
    CHECK(is_complement(g, h));
    CHECK(!is_complement(g, g));
    CHECK(!is_complement(g, level_kernel(g, 1)));
}

TEST_CASE("complement of the Cartan normaliser tower") {
    MatGroup c9 = build_cartan(PrimePower(3, 2), CartanKind::nonsplit_normaliser);
    MatGroup h = find_complement(c9);
    CHECK(is_complement(c9, h));
    CHECK(h.order() * level_kernel(c9, 1).order() == c9.order());
    CHECK(reduce_group(h, 1).elements ==
          build_cartan(PrimePower(3, 1), CartanKind::nonsplit_normaliser).elements);
}

TEST_CASE("complements are conjugate") {
    PrimePower ctx(3, 2);
    std::vector<Mat2> gens = {Mat2(ctx, 0, -1, 1, 0), Mat2(ctx, 1, 3, 0, 1),
                              Mat2(ctx, 1, 0, 3, 1), Mat2(ctx, 4, 0, 0, 4),
                              Mat2(ctx, 4, 0, 0, 7)};
    MatGroup g = generate(ctx, gens);
    CHECK(g.order() == 4 * 81);
    MatGroup h1 = find_complement(g);
    MatGroup h2 = find_complement_seeded(g, 7);
    MatGroup h3 = find_complement_seeded(g, 12345);
    CHECK(is_complement(g, h1));
    CHECK(is_complement(g, h2));
    CHECK(is_complement(g, h3));
    for (MatGroup* other : {&h2, &h3}) {
        Mat2 x = complements_conjugate(g, h1, *other);
        CHECK(g.contains(x));
        for (std::uint64_t e : h1.elements)
            CHECK(other->contains(conjugate(Mat2::decode(ctx, e), x)));
    }
}

TEST_CASE("complement requires a coprime top") {
    PrimePower ctx(3, 2);
    MatGroup g = generate(ctx, {Mat2(ctx, 1, 1, 0, 1)}); // order 9, top order 3
    CHECK(error_code_of([&] { find_complement(g); }) == "NotCoprime");
}

TEST_CASE("eigenvalues of a diagonalizable matrix with rational spectrum") {
    PrimePower ctx(5, 3);
    Mat2 m(ctx, 2, 0, 0, 8);
    auto [l1, l2] = hensel_eigenvalues(m);
    CHECK(l1 == QuadResidue(ctx, 2, 0));
    CHECK(l2 == QuadResidue(ctx, 8, 0));
}

TEST_CASE("companion matrices recover their roots") {
    PrimePower ctx(5, 3);
    std::mt19937_64 rng(71);
    int done = 0;
    while (done < 80) {
        std::uint32_t r1 = rng() % 125, r2 = rng() % 125;
        if ((r1 + 125 - r2) % 5 == 0) continue; // need unit discriminant
        ++done;
        std::int64_t tr = std::int64_t(r1) + r2;
        std::int64_t dt = std::int64_t(r1) * r2;
        Mat2 companion(ctx, 0, -dt, 1, tr);
        auto [l1, l2] = hensel_eigenvalues(companion);
        QuadResidue a(ctx, r1, 0), b(ctx, r2, 0);
        CHECK(((l1 == a && l2 == b) || (l1 == b && l2 == a)));
    }
}

TEST_CASE("irrational eigenvalues square to the nonresidue") {
    PrimePower ctx(5, 3);
    std::uint32_t eps = least_nonresidue(5);
    Mat2 m(ctx, 0, eps, 1, 0); // char poly x^2 - eps
    auto [l1, l2] = hensel_eigenvalues(m);
    CHECK(!l1.is_rational());
    CHECK(qr_mul(l1, l1) == QuadResidue(ctx, eps, 0));
    CHECK(qr_mul(l2, l2) == QuadResidue(ctx, eps, 0));
    CHECK(qr_add(l1, l2) == QuadResidue(ctx, 0, 0));
}

TEST_CASE("eigenvalue lifts reduce to the residue eigenvalues") {
    PrimePower ctx(5, 3);
    std::mt19937_64 rng(3131);
    int done = 0;
    while (done < 60) {
        Mat2 m(ctx, std::int64_t(rng() % 125), std::int64_t(rng() % 125),
               std::int64_t(rng() % 125), std::int64_t(rng() % 125));
        std::uint64_t tr = trace(m), dt = det(m);
        std::uint64_t disc = (tr * tr + 4ull * 125 * 125 - 4ull * dt) % 125;
        if (disc % 5 == 0) continue;
        ++done;
        auto [l1, l2] = hensel_eigenvalues(m);
        for (const QuadResidue& l : {l1, l2}) {
            QuadResidue r = qr_reduce_level(l, 1);
            // char poly evaluated at the reduced root, mod 5
            QuadResidue v = qr_add(
                qr_sub(qr_mul(r, r), qr_mul(QuadResidue(r.ctx, std::int64_t(tr % 5), 0), r)),
                QuadResidue(r.ctx, std::int64_t(dt % 5), 0));
            CHECK(v == QuadResidue(r.ctx, 0, 0));
        }
    }
}

TEST_CASE("unit discriminant is required") {
    PrimePower ctx(5, 3);
    CHECK(error_code_of([&] { hensel_eigenvalues(Mat2::identity(ctx)); }) ==
          "NonUnitDiscriminant");
    CHECK(error_code_of([&] { hensel_eigenvalues(Mat2(ctx, 1, 1, 0, 1)); }) ==
          "NonUnitDiscriminant");
}
