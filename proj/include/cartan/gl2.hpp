#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>

#include "cartan/error.hpp"

namespace cartan {

// Residue context Z/p^n Z. The modulus is capped at 2^16 so that a 2x2 matrix
// packs into a single 64-bit word (four 16-bit lanes).
struct PrimePower {
    std::uint32_t p = 0;
    std::uint32_t n = 0;
    std::uint32_t modulus = 0;

    PrimePower() = default;
    PrimePower(std::uint32_t prime, std::uint32_t level);

    bool operator==(const PrimePower&) const = default;
};

bool is_prime_u64(std::uint64_t v);

// Parses "p^n" or a bare prime "p" (level 1).
PrimePower parse_context(const std::string& text);

std::uint32_t mod_reduce(std::int64_t v, std::uint32_t modulus);
std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t modulus); // throws NonUnit
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t modulus);

// 2x2 matrix over Z/p^n Z with entries reduced into [0, modulus).
struct Mat2 {
    PrimePower ctx;
    std::uint32_t a = 0, b = 0, c = 0, d = 0;

    Mat2() = default;
    Mat2(PrimePower context, std::int64_t a_, std::int64_t b_, std::int64_t c_, std::int64_t d_)
        : ctx(context),
          a(mod_reduce(a_, context.modulus)),
          b(mod_reduce(b_, context.modulus)),
          c(mod_reduce(c_, context.modulus)),
          d(mod_reduce(d_, context.modulus)) {}

    static Mat2 identity(PrimePower ctx) { return Mat2(ctx, 1, 0, 0, 1); }
    static Mat2 scalar(PrimePower ctx, std::int64_t s) { return Mat2(ctx, s, 0, 0, s); }

    std::uint64_t encode() const {
        return (std::uint64_t(a) << 48) | (std::uint64_t(b) << 32) |
               (std::uint64_t(c) << 16) | std::uint64_t(d);
    }
    static Mat2 decode(PrimePower ctx, std::uint64_t e) {
        Mat2 m;
        m.ctx = ctx;
        m.a = std::uint32_t(e >> 48) & 0xffff;
        m.b = std::uint32_t(e >> 32) & 0xffff;
        m.c = std::uint32_t(e >> 16) & 0xffff;
        m.d = std::uint32_t(e) & 0xffff;
        return m;
    }

    bool is_scalar() const { return b == 0 && c == 0 && a == d; }
    bool is_identity() const { return b == 0 && c == 0 && a == 1 && d == 1; }

    bool operator==(const Mat2&) const = default;
};

Mat2 mat_mul(const Mat2& x, const Mat2& y);
inline Mat2 operator*(const Mat2& x, const Mat2& y) { return mat_mul(x, y); }

Mat2 mat_add(const Mat2& x, const Mat2& y);
Mat2 mat_sub(const Mat2& x, const Mat2& y);

std::uint32_t det(const Mat2& x);
std::uint32_t trace(const Mat2& x);
std::pair<std::uint32_t, std::uint32_t> char_poly(const Mat2& x); // (trace, det)

bool is_unit(std::uint32_t v, const PrimePower& ctx);
bool is_invertible(const Mat2& x);
Mat2 inverse(const Mat2& x); // throws NonUnit

Mat2 reduce_level(const Mat2& x, std::uint32_t m);
PrimePower reduced_context(const PrimePower& ctx, std::uint32_t m);

// Conjugation g^{-1} x g; x need not be invertible, g must be.
Mat2 conjugate(const Mat2& x, const Mat2& g);

// Smallest k >= 2 that is a quadratic non-residue mod the odd prime p.
std::uint32_t least_nonresidue(std::uint32_t p);
bool is_quadratic_residue(std::uint32_t v, std::uint32_t p); // v a unit mod p

// Element re + im*sqrt(eps) of (Z/p^n Z)[x]/(x^2 - eps), with eps the least
// non-residue of the context's prime.
struct QuadResidue {
    PrimePower ctx;
    std::uint32_t re = 0, im = 0;
    std::uint32_t eps = 0;

    QuadResidue() = default;
    QuadResidue(PrimePower context, std::int64_t r, std::int64_t i);

    bool is_rational() const { return im == 0; }
    bool operator==(const QuadResidue&) const = default;
};

QuadResidue qr_add(const QuadResidue& x, const QuadResidue& y);
QuadResidue qr_sub(const QuadResidue& x, const QuadResidue& y);
QuadResidue qr_mul(const QuadResidue& x, const QuadResidue& y);
QuadResidue qr_inverse(const QuadResidue& x); // throws NonUnit
QuadResidue qr_reduce_level(const QuadResidue& x, std::uint32_t m);

// Matrix literal "a,b;c,d" used by the CLI and test fixtures.
Mat2 parse_mat(const std::string& text, PrimePower ctx);
std::string format_mat(const Mat2& m);
std::string format_quad(const QuadResidue& q); // "x + y*sqrt(eps)"

} // namespace cartan
