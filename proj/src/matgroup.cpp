#include "cartan/matgroup.hpp"

#include <algorithm>
#include <cstdlib>
#include <unordered_set>

namespace cartan {

CartanKind parse_cartan_kind(const std::string& text) {
    if (text == "nonsplit") return CartanKind::nonsplit;
    if (text == "nonsplit+") return CartanKind::nonsplit_normaliser;
    if (text == "split") return CartanKind::split;
    if (text == "split+") return CartanKind::split_normaliser;
    if (text == "borel") return CartanKind::borel;
    fail("ParseError", "unknown subgroup kind \"" + text + "\"");
}

std::string cartan_kind_name(CartanKind k) {
    switch (k) {
        case CartanKind::nonsplit: return "nonsplit";
        case CartanKind::nonsplit_normaliser: return "nonsplit+";
        case CartanKind::split: return "split";
        case CartanKind::split_normaliser: return "split+";
        case CartanKind::borel: return "borel";
    }
    return "?";
}

bool MatGroup::contains_enc(std::uint64_t e) const {
    return std::binary_search(elements.begin(), elements.end(), e);
}

std::uint64_t closure_budget() {
    if (const char* env = std::getenv("CARTAN_ADELIC_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return std::uint64_t(1) << 24;
}

namespace {

// Dense visited map is affordable up to modulus 49 (49^4 bytes ~ 5.8 MB).
constexpr std::uint32_t dense_modulus_cap = 49;

inline std::uint64_t dense_index(const Mat2& m) {
    std::uint64_t mod = m.ctx.modulus;
    return ((std::uint64_t(m.a) * mod + m.b) * mod + m.c) * mod + m.d;
}

std::vector<std::uint64_t> bfs_closure(PrimePower ctx, const std::vector<Mat2>& gens,
                                       std::uint64_t budget) {
    for (const Mat2& g : gens) {
        if (g.ctx != ctx) fail("ContextMismatch", "generator context mismatch");
        if (!is_invertible(g)) fail("NonUnit", "generator is not invertible");
    }
    std::vector<Mat2> frontier{Mat2::identity(ctx)};
    std::vector<std::uint64_t> out;
    out.push_back(frontier[0].encode());

    if (ctx.modulus <= dense_modulus_cap) {
        std::uint64_t space = 1;
        for (int i = 0; i < 4; ++i) space *= ctx.modulus;
        std::vector<std::uint8_t> seen(space, 0);
        seen[dense_index(frontier[0])] = 1;
        while (!frontier.empty()) {
            std::vector<Mat2> next;
            for (const Mat2& e : frontier) {
                for (const Mat2& g : gens) {
                    Mat2 prod = mat_mul(e, g);
                    std::uint64_t idx = dense_index(prod);
                    if (!seen[idx]) {
                        seen[idx] = 1;
                        out.push_back(prod.encode());
                        if (out.size() > budget) fail("SizeCap", "closure exceeded element budget");
                        next.push_back(prod);
                    }
                }
            }
            frontier.swap(next);
        }
    } else {
        std::unordered_set<std::uint64_t> seen;
        seen.reserve(1024);
        seen.insert(frontier[0].encode());
        while (!frontier.empty()) {
            std::vector<Mat2> next;
            for (const Mat2& e : frontier) {
                for (const Mat2& g : gens) {
                    Mat2 prod = mat_mul(e, g);
                    std::uint64_t enc = prod.encode();
                    if (seen.insert(enc).second) {
                        out.push_back(enc);
                        if (out.size() > budget) fail("SizeCap", "closure exceeded element budget");
                        next.push_back(prod);
                    }
                }
            }
            frontier.swap(next);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::vector<std::uint64_t> close_under(PrimePower ctx, const std::vector<Mat2>& gens) {
    return bfs_closure(ctx, gens, closure_budget());
}

MatGroup generate(PrimePower ctx, const std::vector<Mat2>& gens) {
    MatGroup g;
    g.ctx = ctx;
    g.generators = gens;
    g.elements = close_under(ctx, gens);
    return g;
}

std::vector<Mat2> find_generators(PrimePower ctx, const std::vector<std::uint64_t>& elements) {
    std::vector<Mat2> gens;
    std::vector<std::uint64_t> closed{Mat2::identity(ctx).encode()};
    if (elements.size() == 1) return gens;
    for (std::uint64_t enc : elements) {
        if (std::binary_search(closed.begin(), closed.end(), enc)) continue;
        gens.push_back(Mat2::decode(ctx, enc));
        closed = close_under(ctx, gens);
        if (closed.size() == elements.size()) break;
    }
    if (closed != elements)
        fail("ClosureMismatch", "element set is not closed under the group operations");
    return gens;
}

namespace {

MatGroup from_element_set(PrimePower ctx, std::vector<std::uint64_t> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    MatGroup g;
    g.ctx = ctx;
    g.elements = std::move(elements);
    g.generators = find_generators(ctx, g.elements);
    return g;
}

} // namespace

MatGroup build_cartan(PrimePower ctx, CartanKind kind) {
    if (ctx.p == 2) fail("BadPrime", "Cartan families are defined for odd primes");
    std::uint32_t m = ctx.modulus;
    std::vector<std::uint64_t> elems;
    auto push = [&](std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
        elems.push_back(Mat2(ctx, a, b, c, d).encode());
    };
    switch (kind) {
        case CartanKind::nonsplit:
        case CartanKind::nonsplit_normaliser: {
            std::uint32_t eps = least_nonresidue(ctx.p);
            for (std::uint32_t a = 0; a < m; ++a)
                for (std::uint32_t b = 0; b < m; ++b) {
                    if (a % ctx.p == 0 && b % ctx.p == 0) continue;
                    push(a, std::int64_t(eps) * b, b, a);
                    if (kind == CartanKind::nonsplit_normaliser)
                        push(a, std::int64_t(eps) * b, std::int64_t(m) - b, std::int64_t(m) - a);
                }
            break;
        }
        case CartanKind::split:
        case CartanKind::split_normaliser: {
            for (std::uint32_t a = 0; a < m; ++a) {
                if (a % ctx.p == 0) continue;
                for (std::uint32_t b = 0; b < m; ++b) {
                    if (b % ctx.p == 0) continue;
                    push(a, 0, 0, b);
                    if (kind == CartanKind::split_normaliser) push(0, a, b, 0);
                }
            }
            break;
        }
        case CartanKind::borel: {
            for (std::uint32_t a = 0; a < m; ++a) {
                if (a % ctx.p == 0) continue;
                for (std::uint32_t c = 0; c < m; ++c) {
                    if (c % ctx.p == 0) continue;
                    for (std::uint32_t b = 0; b < m; ++b) push(a, b, 0, c);
                }
            }
            break;
        }
    }
    return from_element_set(ctx, std::move(elems));
}

std::uint64_t gl2_order(PrimePower ctx) {
    std::uint64_t p = ctx.p;
    std::uint64_t order = (p * p - 1) * (p * p - p);
    for (std::uint32_t i = 1; i < ctx.n; ++i) order *= p * p * p * p;
    return order;
}

MatGroup full_gl2(PrimePower ctx) {
    std::uint64_t m = ctx.modulus;
    std::uint64_t space = m * m * m * m;
    if (space > closure_budget() * 16)
        fail("SizeCap", "full GL2 enumeration exceeds the budget at this modulus");
    std::vector<std::uint64_t> elems;
    elems.reserve(gl2_order(ctx));
    Mat2 x;
    x.ctx = ctx;
    for (std::uint32_t a = 0; a < m; ++a)
        for (std::uint32_t b = 0; b < m; ++b)
            for (std::uint32_t c = 0; c < m; ++c)
                for (std::uint32_t d = 0; d < m; ++d) {
                    x.a = a; x.b = b; x.c = c; x.d = d;
                    if (is_invertible(x)) elems.push_back(x.encode());
                }
    MatGroup g;
    g.ctx = ctx;
    g.elements = std::move(elems);
    std::sort(g.elements.begin(), g.elements.end());
    // Standard small generating set: GL2(Z/p^n) is generated by a diagonal
    // matrix carrying a unit-group generator together with the two unipotents.
    std::uint32_t u = 0;
    for (std::uint32_t cand = 2; cand < ctx.modulus; ++cand) {
        if (cand % ctx.p == 0) continue;
        std::uint64_t target = ctx.modulus / ctx.p * (ctx.p - 1); // |(Z/p^n)^x|
        std::uint64_t ord = 1, acc = cand % ctx.modulus;
        while (acc != 1) { acc = acc * cand % ctx.modulus; ++ord; }
        if (ctx.p == 2 ? ord * 2 >= target : ord == target) { u = cand; break; }
    }
    if (u == 0) u = 1;
    g.generators = {Mat2(ctx, 1, 1, 0, 1), Mat2(ctx, 1, 0, 1, 1), Mat2(ctx, u, 0, 0, 1)};
    std::vector<std::uint64_t> closed = close_under(ctx, g.generators);
    if (closed != g.elements) g.generators = find_generators(ctx, g.elements);
    return g;
}

std::uint64_t group_order(const MatGroup& g) { return g.order(); }

std::uint64_t index_in_gl2(const MatGroup& g) {
    std::uint64_t total = gl2_order(g.ctx);
    if (g.order() == 0 || total % g.order() != 0)
        fail("LagrangeViolation", "group order does not divide |GL2|");
    return total / g.order();
}

MatGroup sl2_part(const MatGroup& g) {
    std::vector<std::uint64_t> elems;
    for (std::uint64_t enc : g.elements) {
        Mat2 x = Mat2::decode(g.ctx, enc);
        if (det(x) == 1 % g.ctx.modulus) elems.push_back(enc);
    }
    return from_element_set(g.ctx, std::move(elems));
}

MatGroup reduce_group(const MatGroup& g, std::uint32_t m) {
    PrimePower rctx = reduced_context(g.ctx, m);
    std::vector<std::uint64_t> elems;
    elems.reserve(g.elements.size());
    for (std::uint64_t enc : g.elements)
        elems.push_back(reduce_level(Mat2::decode(g.ctx, enc), m).encode());
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    MatGroup r;
    r.ctx = rctx;
    r.elements = std::move(elems);
    r.generators.reserve(g.generators.size());
    for (const Mat2& gen : g.generators) r.generators.push_back(reduce_level(gen, m));
    return r;
}

MatGroup level_kernel(const MatGroup& g, std::uint32_t i) {
    if (i < 1 || i >= g.ctx.n) fail("BadLevel", "kernel level must satisfy 1 <= i < n");
    std::uint64_t pi = 1;
    for (std::uint32_t k = 0; k < i; ++k) pi *= g.ctx.p;
    std::vector<std::uint64_t> elems;
    for (std::uint64_t enc : g.elements) {
        Mat2 x = Mat2::decode(g.ctx, enc);
        if (x.a % pi == 1 && x.b % pi == 0 && x.c % pi == 0 && x.d % pi == 1)
            elems.push_back(enc);
    }
    return from_element_set(g.ctx, std::move(elems));
}

std::optional<Mat2> is_conjugate_subgroup(const MatGroup& g, const MatGroup& h) {
    if (g.ctx != h.ctx) fail("ContextMismatch", "conjugacy across different contexts");
    if (g.order() != h.order()) return std::nullopt;
    if (g.elements == h.elements) return Mat2::identity(g.ctx);
    if (g.ctx.modulus > 49) fail("SizeCap", "conjugacy search supported up to modulus 49");
    std::uint32_t m = g.ctx.modulus;
    Mat2 x;
    x.ctx = g.ctx;
    for (std::uint32_t a = 0; a < m; ++a)
        for (std::uint32_t b = 0; b < m; ++b)
            for (std::uint32_t c = 0; c < m; ++c)
                for (std::uint32_t d = 0; d < m; ++d) {
                    x.a = a; x.b = b; x.c = c; x.d = d;
                    if (!is_invertible(x)) continue;
                    Mat2 xi = inverse(x);
                    bool ok = true;
                    for (const Mat2& gen : g.generators) {
                        Mat2 conj = mat_mul(mat_mul(xi, gen), x);
                        if (!h.contains(conj)) { ok = false; break; }
                    }
                    if (ok) return x;
                }
    return std::nullopt;
}

bool normalizes(const MatGroup& n, const MatGroup& c) {
    for (std::uint64_t ge : n.elements) {
        Mat2 g = Mat2::decode(n.ctx, ge);
        Mat2 gi = inverse(g);
        for (std::uint64_t ce : c.elements) {
            Mat2 x = mat_mul(mat_mul(gi, Mat2::decode(c.ctx, ce)), g);
            if (!c.contains(x)) return false;
        }
    }
    return true;
}

std::uint64_t element_order(const Mat2& m) {
    if (!is_invertible(m)) fail("NonUnit", "order of a non-invertible matrix");
    Mat2 acc = m;
    std::uint64_t ord = 1;
    while (!acc.is_identity()) {
        acc = mat_mul(acc, m);
        ++ord;
    }
    return ord;
}

std::uint64_t projective_order(const Mat2& m) {
    if (!is_invertible(m)) fail("NonUnit", "projective order of a non-invertible matrix");
    Mat2 acc = m;
    std::uint64_t ord = 1;
    while (!acc.is_scalar()) {
        acc = mat_mul(acc, m);
        ++ord;
    }
    return ord;
}

} // namespace cartan
