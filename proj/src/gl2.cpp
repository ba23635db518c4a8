#include "cartan/gl2.hpp"

#include <cctype>
#include <sstream>

namespace cartan {

bool is_prime_u64(std::uint64_t v) {
    if (v < 2) return false;
    for (std::uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

PrimePower::PrimePower(std::uint32_t prime, std::uint32_t level) : p(prime), n(level) {
    if (!is_prime_u64(p)) fail("NotPrime", "context base " + std::to_string(p) + " is not prime");
    if (n < 1) fail("BadLevel", "context level must be >= 1");
    std::uint64_t m = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        m *= p;
        if (m > 65536) fail("SizeCap", "modulus p^n exceeds 2^16");
    }
    modulus = std::uint32_t(m);
}

namespace {

std::uint32_t parse_context_part(const std::string& text) {
    unsigned long val = 0;
    std::size_t used = 0;
    try {
        val = std::stoul(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty() || val > 0xffffffffUL)
        fail("ParseError", "context literal must be \"p\" or \"p^n\"");
    return std::uint32_t(val);
}

} // namespace

PrimePower parse_context(const std::string& text) {
    auto caret = text.find('^');
    if (caret == std::string::npos)
        return PrimePower(parse_context_part(text), 1);
    return PrimePower(parse_context_part(text.substr(0, caret)),
                      parse_context_part(text.substr(caret + 1)));
}

std::uint32_t mod_reduce(std::int64_t v, std::uint32_t modulus) {
    std::int64_t r = v % std::int64_t(modulus);
    if (r < 0) r += modulus;
    return std::uint32_t(r);
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t modulus) {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = modulus, new_r = a % modulus;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) fail("NonUnit", std::to_string(a) + " is not a unit mod " + std::to_string(modulus));
    if (t < 0) t += modulus;
    return std::uint32_t(t);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t modulus) {
    std::uint64_t r = 1 % modulus;
    base %= modulus;
    while (exp > 0) {
        if (exp & 1) r = r * base % modulus;
        base = base * base % modulus;
        exp >>= 1;
    }
    return r;
}

Mat2 mat_mul(const Mat2& x, const Mat2& y) {
    if (x.ctx != y.ctx) fail("ContextMismatch", "matrix product across different contexts");
    std::uint64_t m = x.ctx.modulus;
    Mat2 r;
    r.ctx = x.ctx;
    r.a = std::uint32_t((std::uint64_t(x.a) * y.a + std::uint64_t(x.b) * y.c) % m);
    r.b = std::uint32_t((std::uint64_t(x.a) * y.b + std::uint64_t(x.b) * y.d) % m);
    r.c = std::uint32_t((std::uint64_t(x.c) * y.a + std::uint64_t(x.d) * y.c) % m);
    r.d = std::uint32_t((std::uint64_t(x.c) * y.b + std::uint64_t(x.d) * y.d) % m);
    return r;
}

Mat2 mat_add(const Mat2& x, const Mat2& y) {
    if (x.ctx != y.ctx) fail("ContextMismatch", "matrix sum across different contexts");
    std::uint32_t m = x.ctx.modulus;
    Mat2 r;
    r.ctx = x.ctx;
    r.a = (x.a + y.a) % m;
    r.b = (x.b + y.b) % m;
    r.c = (x.c + y.c) % m;
    r.d = (x.d + y.d) % m;
    return r;
}

Mat2 mat_sub(const Mat2& x, const Mat2& y) {
    if (x.ctx != y.ctx) fail("ContextMismatch", "matrix difference across different contexts");
    std::uint32_t m = x.ctx.modulus;
    Mat2 r;
    r.ctx = x.ctx;
    r.a = (x.a + m - y.a) % m;
    r.b = (x.b + m - y.b) % m;
    r.c = (x.c + m - y.c) % m;
    r.d = (x.d + m - y.d) % m;
    return r;
}

std::uint32_t det(const Mat2& x) {
    std::uint64_t m = x.ctx.modulus;
    std::uint64_t ad = std::uint64_t(x.a) * x.d % m;
    std::uint64_t bc = std::uint64_t(x.b) * x.c % m;
    return std::uint32_t((ad + m - bc) % m);
}

std::uint32_t trace(const Mat2& x) { return (x.a + x.d) % x.ctx.modulus; }

std::pair<std::uint32_t, std::uint32_t> char_poly(const Mat2& x) {
    return {trace(x), det(x)};
}

bool is_unit(std::uint32_t v, const PrimePower& ctx) { return v % ctx.p != 0; }

bool is_invertible(const Mat2& x) { return is_unit(det(x), x.ctx); }

Mat2 inverse(const Mat2& x) {
    std::uint32_t dt = det(x);
    if (!is_unit(dt, x.ctx)) fail("NonUnit", "matrix determinant is not a unit");
    std::uint64_t m = x.ctx.modulus;
    std::uint64_t di = mod_inverse(dt, x.ctx.modulus);
    Mat2 r;
    r.ctx = x.ctx;
    r.a = std::uint32_t(std::uint64_t(x.d) * di % m);
    r.b = std::uint32_t((m - x.b) % m * di % m);
    r.c = std::uint32_t((m - x.c) % m * di % m);
    r.d = std::uint32_t(std::uint64_t(x.a) * di % m);
    return r;
}

PrimePower reduced_context(const PrimePower& ctx, std::uint32_t m) {
    if (m < 1 || m > ctx.n) fail("BadLevel", "reduction level out of range");
    return PrimePower(ctx.p, m);
}

Mat2 reduce_level(const Mat2& x, std::uint32_t m) {
    PrimePower c = reduced_context(x.ctx, m);
    return Mat2(c, x.a, x.b, x.c, x.d);
}

Mat2 conjugate(const Mat2& x, const Mat2& g) { return mat_mul(mat_mul(inverse(g), x), g); }

bool is_quadratic_residue(std::uint32_t v, std::uint32_t p) {
    return pow_mod(v % p, (p - 1) / 2, p) == 1;
}

std::uint32_t least_nonresidue(std::uint32_t p) {
    if (p == 2 || !is_prime_u64(p)) fail("BadPrime", "least non-residue needs an odd prime");
    for (std::uint32_t k = 2; k < p; ++k)
        if (!is_quadratic_residue(k, p)) return k;
    fail("BadPrime", "no non-residue found");
}

QuadResidue::QuadResidue(PrimePower context, std::int64_t r, std::int64_t i)
    : ctx(context),
      re(mod_reduce(r, context.modulus)),
      im(mod_reduce(i, context.modulus)),
      eps(least_nonresidue(context.p)) {}

QuadResidue qr_add(const QuadResidue& x, const QuadResidue& y) {
    if (x.ctx != y.ctx) fail("ContextMismatch", "quadratic-ring sum across contexts");
    return QuadResidue(x.ctx, std::int64_t(x.re) + y.re, std::int64_t(x.im) + y.im);
}

QuadResidue qr_sub(const QuadResidue& x, const QuadResidue& y) {
    if (x.ctx != y.ctx) fail("ContextMismatch", "quadratic-ring difference across contexts");
    return QuadResidue(x.ctx, std::int64_t(x.re) - y.re, std::int64_t(x.im) - y.im);
}

QuadResidue qr_mul(const QuadResidue& x, const QuadResidue& y) {
    if (x.ctx != y.ctx) fail("ContextMismatch", "quadratic-ring product across contexts");
    std::uint64_t m = x.ctx.modulus;
    std::uint64_t re = (std::uint64_t(x.re) * y.re % m + std::uint64_t(x.eps) * (std::uint64_t(x.im) * y.im % m)) % m;
    std::uint64_t im = (std::uint64_t(x.re) * y.im + std::uint64_t(x.im) * y.re) % m;
    return QuadResidue(x.ctx, std::int64_t(re), std::int64_t(im));
}

QuadResidue qr_inverse(const QuadResidue& x) {
    std::uint64_t m = x.ctx.modulus;
    std::uint64_t norm = (std::uint64_t(x.re) * x.re % m +
                          m * m - std::uint64_t(x.eps) * (std::uint64_t(x.im) * x.im % m) % m) % m;
    if (norm % x.ctx.p == 0) fail("NonUnit", "quadratic-ring element has non-unit norm");
    std::uint64_t ni = mod_inverse(std::uint32_t(norm), x.ctx.modulus);
    return QuadResidue(x.ctx, std::int64_t(std::uint64_t(x.re) * ni % m),
                       std::int64_t((m - x.im) % m * ni % m));
}

QuadResidue qr_reduce_level(const QuadResidue& x, std::uint32_t m) {
    PrimePower c = reduced_context(x.ctx, m);
    return QuadResidue(c, x.re, x.im);
}

Mat2 parse_mat(const std::string& text, PrimePower ctx) {
    std::int64_t v[4];
    std::size_t idx = 0;
    std::string cur;
    auto flush = [&]() {
        if (idx >= 4 || cur.empty()) fail("ParseError", "matrix literal must be \"a,b;c,d\"");
        std::int64_t val = 0;
        std::size_t used = 0;
        try {
            val = std::stoll(cur, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != cur.size())
            fail("ParseError", "matrix entry \"" + cur + "\" is not an integer");
        v[idx++] = val;
        cur.clear();
    };
    for (char ch : text) {
        if (ch == ',' || ch == ';') {
            flush();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    flush();
    if (idx != 4) fail("ParseError", "matrix literal must have four entries");
    return Mat2(ctx, v[0], v[1], v[2], v[3]);
}

std::string format_mat(const Mat2& m) {
    std::ostringstream os;
    os << m.a << ',' << m.b << ';' << m.c << ',' << m.d;
    return os.str();
}

std::string format_quad(const QuadResidue& q) {
    std::ostringstream os;
    os << q.re << " + " << q.im << "*sqrt(" << q.eps << ")";
    return os.str();
}

} // namespace cartan
