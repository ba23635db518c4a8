#include "cartan/lifting.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <vector>

namespace cartan {

namespace {

MatGroup from_elements(PrimePower ctx, std::vector<std::uint64_t> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    MatGroup g;
    g.ctx = ctx;
    g.elements = std::move(elems);
    g.generators = find_generators(ctx, g.elements);
    return g;
}

Mat2 pow_mat(Mat2 base, std::uint64_t e) {
    Mat2 acc = Mat2::identity(base.ctx);
    while (e) {
        if (e & 1) acc = mat_mul(acc, base);
        base = mat_mul(base, base);
        e >>= 1;
    }
    return acc;
}

bool in_sorted(const std::vector<std::uint64_t>& v, std::uint64_t e) {
    return std::binary_search(v.begin(), v.end(), e);
}

// Smallest p-power t with x^t inside the subgroup k2.
std::uint64_t order_mod(const Mat2& x, std::uint32_t p, const std::vector<std::uint64_t>& k2,
                        std::uint64_t cap) {
    Mat2 y = x;
    std::uint64_t t = 1;
    while (!in_sorted(k2, y.encode())) {
        y = pow_mat(y, p);
        t *= p;
        if (t > cap) fail("ClosureMismatch", "kernel element order exceeded the group order");
    }
    return t;
}

// Complement to the level-1 congruence kernel, built stage by stage: at stage
// k the current kernel K = H cap (I + p^k M) is shrunk to K cap (I + p^{k+1} M)
// by averaging the section cocycle in the abelian quotient K/K2.
MatGroup complement_impl(const MatGroup& g, std::uint64_t seed, bool perturb) {
    if (g.ctx.n < 2) fail("BadLevel", "a complement needs level at least 2");
    const std::uint32_t p = g.ctx.p;
    MatGroup kern = level_kernel(g, 1);
    std::uint64_t quot = g.order() / kern.order();
    if (quot % p == 0)
        fail("NotCoprime", "level-1 image order is divisible by p, no complement exists");
    std::mt19937_64 rng(seed);

    std::vector<std::uint64_t> h_elems = g.elements;
    std::vector<std::uint64_t> k_elems = kern.elements;
    for (std::uint32_t k = 1; k < g.ctx.n && k_elems.size() > 1; ++k) {
        std::uint64_t pk1 = 1;
        for (std::uint32_t i = 0; i <= k; ++i) pk1 *= p;
        std::vector<std::uint64_t> k2;
        for (std::uint64_t enc : k_elems) {
            Mat2 x = Mat2::decode(g.ctx, enc);
            if (x.a % pk1 == 1 && x.b % pk1 == 0 && x.c % pk1 == 0 && x.d % pk1 == 1)
                k2.push_back(enc);
        }
        if (k2.size() == k_elems.size()) {
            k_elems = std::move(k2);
            continue;
        }

        std::map<std::uint64_t, Mat2> sigma;
        for (std::uint64_t enc : h_elems) {
            Mat2 m = Mat2::decode(g.ctx, enc);
            sigma.emplace(reduce_level(m, k).encode(), m);
        }
        std::uint64_t id_key = Mat2::identity(reduced_context(g.ctx, k)).encode();
        sigma[id_key] = Mat2::identity(g.ctx);
        if (sigma.size() != quot)
            fail("ClosureMismatch", "coset section size does not match the quotient order");
        if (perturb)
            for (auto& [key, rep] : sigma) {
                if (key == id_key) continue;
                rep = mat_mul(rep, Mat2::decode(g.ctx, k_elems[rng() % k_elems.size()]));
            }

        std::uint64_t exp_q = 1;
        for (std::uint64_t enc : k_elems)
            exp_q = std::max(exp_q, order_mod(Mat2::decode(g.ctx, enc), p, k2, k_elems.size()));
        std::uint64_t m_inv = mod_inverse(std::uint32_t(quot % exp_q), std::uint32_t(exp_q));

        std::vector<std::uint64_t> next;
        next.reserve(sigma.size() * k2.size());
        for (const auto& [key, rep] : sigma) {
            Mat2 e = Mat2::identity(g.ctx);
            for (const auto& [key2, rep2] : sigma) {
                Mat2 prod = mat_mul(rep, rep2);
                const Mat2& srep = sigma.at(reduce_level(prod, k).encode());
                e = mat_mul(e, mat_mul(prod, inverse(srep)));
            }
            Mat2 tau = mat_mul(pow_mat(inverse(e), m_inv), rep);
            for (std::uint64_t enc : k2) next.push_back(mat_mul(tau, Mat2::decode(g.ctx, enc)).encode());
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        if (next.size() != quot * k2.size())
            fail("ClosureMismatch", "averaged section did not produce a group of the right size");
        h_elems = std::move(next);
        k_elems = std::move(k2);
    }
    return from_elements(g.ctx, std::move(h_elems));
}

} // namespace

MatGroup find_complement(const MatGroup& g) { return complement_impl(g, 0, false); }

MatGroup find_complement_seeded(const MatGroup& g, std::uint64_t seed) {
    return complement_impl(g, seed, true);
}

bool is_complement(const MatGroup& g, const MatGroup& h) {
    if (g.ctx != h.ctx) fail("ContextMismatch", "complement check across different contexts");
    MatGroup kern = level_kernel(g, 1);
    if (h.order() * kern.order() != g.order()) return false;
    for (std::uint64_t enc : h.elements) {
        if (!g.contains_enc(enc)) return false;
        if (in_sorted(kern.elements, enc) && enc != Mat2::identity(g.ctx).encode()) return false;
    }
    return true;
}

Mat2 complements_conjugate(const MatGroup& g, const MatGroup& h1, const MatGroup& h2) {
    if (h1.order() != h2.order())
        fail("ClosureMismatch", "complements of different orders cannot be conjugate");
    MatGroup kern = level_kernel(g, 1);
    auto try_conj = [&](const Mat2& x) -> bool {
        for (const Mat2& gen : h1.generators)
            if (!h2.contains(conjugate(gen, x))) return false;
        return true;
    };
    for (std::uint64_t enc : kern.elements) {
        Mat2 x = Mat2::decode(g.ctx, enc);
        if (try_conj(x)) return x;
    }
    for (std::uint64_t enc : g.elements) {
        Mat2 x = Mat2::decode(g.ctx, enc);
        if (try_conj(x)) return x;
    }
    fail("SearchExhausted", "no conjugating element between the two complements was found");
}

std::pair<QuadResidue, QuadResidue> hensel_eigenvalues(const Mat2& a) {
    const PrimePower ctx = a.ctx;
    const std::uint64_t m = ctx.modulus;
    const std::uint32_t p = ctx.p;
    if (p == 2) fail("BadPrime", "eigenvalue lifting requires an odd prime");
    std::uint64_t t = trace(a);
    std::uint64_t d = det(a);
    std::uint64_t disc = (t * t % m + 4 * m - 4 * d % m) % m;
    if (disc % p == 0) fail("NonUnitDiscriminant", "tr^2 - 4 det is not a unit");

    std::uint32_t iters = 1;
    for (std::uint32_t span = 1; span < ctx.n; span *= 2) ++iters;
    std::uint64_t inv2 = mod_inverse(2, std::uint32_t(m));

    // Newton square root of w, seeded with the brute-force root mod p.
    auto lift_sqrt = [&](std::uint64_t w) {
        std::uint64_t s = 0;
        for (std::uint64_t c = 1; c < p; ++c)
            if (c * c % p == w % p) {
                s = c;
                break;
            }
        if (s == 0) fail("ClosureMismatch", "no square root modulo p for a residue input");
        for (std::uint32_t i = 0; i < iters; ++i)
            s = (s + w * mod_inverse(std::uint32_t(s), std::uint32_t(m)) % m) * inv2 % m;
        if (s * s % m != w) fail("ClosureMismatch", "square root iteration failed to converge");
        return s;
    };

    if (is_quadratic_residue(std::uint32_t(disc % p), p)) {
        std::uint64_t s = lift_sqrt(disc);
        std::uint64_t l1 = (t + s) % m * inv2 % m;
        std::uint64_t l2 = (t + m - s) % m * inv2 % m;
        if (l2 < l1) std::swap(l1, l2);
        return {QuadResidue(ctx, std::int64_t(l1), 0), QuadResidue(ctx, std::int64_t(l2), 0)};
    }
    std::uint64_t eps = least_nonresidue(p);
    std::uint64_t u = lift_sqrt(disc * mod_inverse(std::uint32_t(eps), std::uint32_t(m)) % m);
    std::uint64_t re = t * inv2 % m;
    std::uint64_t im1 = u * inv2 % m;
    std::uint64_t im2 = (m - im1) % m;
    if (im2 < im1) std::swap(im1, im2);
    return {QuadResidue(ctx, std::int64_t(re), std::int64_t(im1)),
            QuadResidue(ctx, std::int64_t(re), std::int64_t(im2))};
}

} // namespace cartan
