#include "cartan/lie.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "cartan/lifting.hpp"

namespace cartan {

namespace {

using Vec4 = std::array<std::uint32_t, 4>;

std::vector<Vec4> rref(std::uint32_t p, std::vector<Vec4> rows) {
    for (auto& r : rows)
        for (auto& x : r) x %= p;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < 4 && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        std::uint32_t inv = mod_inverse(rows[rank][col], p);
        for (auto& x : rows[rank]) x = std::uint32_t(std::uint64_t(x) * inv % p);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][col] == 0) continue;
            std::uint64_t f = p - rows[i][col];
            for (std::size_t j = 0; j < 4; ++j)
                rows[i][j] = std::uint32_t((rows[i][j] + f * rows[rank][j]) % p);
        }
        ++rank;
    }
    rows.resize(rank);
    return rows;
}

// Reduces w against the basis in place; true when w lands on zero.
bool reduce_vec(const LieSubspace& v, Vec4& w) {
    for (auto& x : w) x %= v.p;
    for (const Vec4& row : v.basis) {
        std::size_t piv = 0;
        while (piv < 4 && row[piv] == 0) ++piv;
        if (piv == 4) continue;
        std::uint64_t f = w[piv] % v.p;
        if (f == 0) continue;
        std::uint64_t nf = v.p - f;
        for (std::size_t j = 0; j < 4; ++j)
            w[j] = std::uint32_t((w[j] + nf * row[j]) % v.p);
    }
    return w[0] == 0 && w[1] == 0 && w[2] == 0 && w[3] == 0;
}

Mat2 mat_of(std::uint32_t p, const Vec4& v) {
    return Mat2(PrimePower(p, 1), v[0], v[1], v[2], v[3]);
}

Vec4 vec_of(const Mat2& m) { return {m.a, m.b, m.c, m.d}; }

LieSubspace transport(const LieSubspace& v, const Mat2& x) {
    std::vector<Vec4> rows;
    rows.reserve(v.basis.size());
    for (const Vec4& r : v.basis) rows.push_back(vec_of(conjugate(mat_of(v.p, r), x)));
    return span_of(v.p, rows);
}

bool det_image_full(const MatGroup& g) {
    std::vector<std::uint8_t> seen(g.ctx.modulus, 0);
    std::uint64_t distinct = 0;
    for (std::uint64_t enc : g.elements) {
        std::uint32_t d = det(Mat2::decode(g.ctx, enc));
        if (!seen[d]) {
            seen[d] = 1;
            ++distinct;
        }
    }
    std::uint64_t units = std::uint64_t(g.ctx.modulus) / g.ctx.p * (g.ctx.p - 1);
    return distinct == units;
}

bool unit_scalars_present(const MatGroup& g) {
    std::uint64_t count = g.ctx.modulus / g.ctx.p;
    for (std::uint64_t t = 0; t < count; ++t)
        if (!g.contains(Mat2::scalar(g.ctx, std::int64_t(1 + g.ctx.p * t)))) return false;
    return true;
}

CartanKind plus_kind(CartanCase c) {
    return c == CartanCase::nonsplit ? CartanKind::nonsplit_normaliser
                                     : CartanKind::split_normaliser;
}

CartanKind plain_kind(CartanCase c) {
    return c == CartanCase::nonsplit ? CartanKind::nonsplit : CartanKind::split;
}

std::string case_name(CartanCase c) { return c == CartanCase::nonsplit ? "nonsplit" : "split"; }

struct KindFrames {
    CartanCase kind;
    MatGroup cartan;
    MatGroup normaliser;
    std::vector<Mat2> conjugators; // all x with x^{-1} G(p) x inside the normaliser
};

std::vector<KindFrames> collect_frames(const MatGroup& gbar) {
    PrimePower c1(gbar.ctx.p, 1);
    std::vector<KindFrames> out;
    for (CartanCase kind : {CartanCase::nonsplit, CartanCase::split}) {
        KindFrames kf;
        kf.kind = kind;
        kf.cartan = build_cartan(c1, plain_kind(kind));
        kf.normaliser = build_cartan(c1, plus_kind(kind));
        std::uint32_t p = c1.p;
        Mat2 x;
        x.ctx = c1;
        for (std::uint32_t a = 0; a < p; ++a)
            for (std::uint32_t b = 0; b < p; ++b)
                for (std::uint32_t c = 0; c < p; ++c)
                    for (std::uint32_t d = 0; d < p; ++d) {
                        x.a = a; x.b = b; x.c = c; x.d = d;
                        if (!is_invertible(x)) continue;
                        bool ok = true;
                        for (const Mat2& gen : gbar.generators)
                            if (!kf.normaliser.contains(conjugate(gen, x))) {
                                ok = false;
                                break;
                            }
                        if (ok) kf.conjugators.push_back(x);
                    }
        out.push_back(std::move(kf));
    }
    return out;
}

struct LiftQualification {
    std::optional<CartanFraming> framing;
    bool proj_order_ok = false;
};

LiftQualification qualify(const MatGroup& gbar, const std::vector<KindFrames>& frames) {
    LiftQualification q;
    for (const KindFrames& kf : frames) {
        for (const Mat2& x : kf.conjugators) {
            bool escapes = false;
            for (const Mat2& gen : gbar.generators)
                if (!kf.cartan.contains(conjugate(gen, x))) {
                    escapes = true;
                    break;
                }
            if (!escapes) continue; // lands inside the Cartan itself
            bool meets = false;
            bool proj = false;
            for (std::uint64_t enc : gbar.elements) {
                Mat2 e = Mat2::decode(gbar.ctx, enc);
                Mat2 c = conjugate(e, x);
                if (!kf.cartan.contains(c) || c.is_scalar()) continue;
                meets = true;
                if (!proj && projective_order(e) > 2) proj = true;
                if (proj) break;
            }
            if (!meets) continue;
            if (!q.framing) q.framing = CartanFraming{kf.kind, x};
            if (proj) {
                q.framing = CartanFraming{kf.kind, x};
                q.proj_order_ok = true;
                return q;
            }
        }
    }
    return q;
}

std::uint64_t cartan_plus_order(CartanCase kind, std::uint32_t p, std::uint32_t k) {
    std::uint64_t base = kind == CartanCase::nonsplit ? std::uint64_t(p) * p - 1
                                                      : std::uint64_t(p - 1) * (p - 1);
    std::uint64_t r = 2 * base;
    for (std::uint32_t i = 1; i < k; ++i) r *= std::uint64_t(p) * p;
    return r;
}

// All y at the target level with y^{-1} G(p^target) y inside the Cartan
// normaliser, found stage by stage: a valid conjugator at level k reduces to
// a valid one at level k-1, and the fibre over x is x + p^{k-1} B.
std::vector<Mat2> staged_conjugators(const MatGroup& g, CartanCase kind, std::uint32_t target) {
    std::uint32_t p = g.ctx.p;
    PrimePower c1(p, 1);
    MatGroup g1 = g.ctx.n == 1 ? g : reduce_group(g, 1);
    MatGroup cp1 = build_cartan(c1, plus_kind(kind));
    std::vector<Mat2> conjs;
    {
        Mat2 x;
        x.ctx = c1;
        for (std::uint32_t a = 0; a < p; ++a)
            for (std::uint32_t b = 0; b < p; ++b)
                for (std::uint32_t c = 0; c < p; ++c)
                    for (std::uint32_t d = 0; d < p; ++d) {
                        x.a = a; x.b = b; x.c = c; x.d = d;
                        if (!is_invertible(x)) continue;
                        bool ok = true;
                        for (const Mat2& gen : g1.generators)
                            if (!cp1.contains(conjugate(gen, x))) {
                                ok = false;
                                break;
                            }
                        if (ok) conjs.push_back(x);
                    }
    }
    for (std::uint32_t k = 2; k <= target && !conjs.empty(); ++k) {
        PrimePower ck(p, k);
        MatGroup gk = g.ctx.n == k ? g : reduce_group(g, k);
        MatGroup cpk = build_cartan(ck, plus_kind(kind));
        std::uint64_t step = ck.modulus / p;
        std::vector<Mat2> next;
        for (const Mat2& x : conjs) {
            Mat2 y;
            y.ctx = ck;
            for (std::uint32_t ba = 0; ba < p; ++ba)
                for (std::uint32_t bb = 0; bb < p; ++bb)
                    for (std::uint32_t bc = 0; bc < p; ++bc)
                        for (std::uint32_t bd = 0; bd < p; ++bd) {
                            y.a = std::uint32_t(x.a + step * ba);
                            y.b = std::uint32_t(x.b + step * bb);
                            y.c = std::uint32_t(x.c + step * bc);
                            y.d = std::uint32_t(x.d + step * bd);
                            bool ok = true;
                            for (const Mat2& gen : gk.generators)
                                if (!cpk.contains(conjugate(gen, y))) {
                                    ok = false;
                                    break;
                                }
                            if (ok) next.push_back(y);
                        }
        }
        conjs = std::move(next);
        if (conjs.size() > 200000) fail("SizeCap", "conjugator frontier exceeded the search cap");
    }
    return conjs;
}

MatGroup conjugate_group(const MatGroup& g, const Mat2& y) {
    Mat2 yi = inverse(y);
    MatGroup r;
    r.ctx = g.ctx;
    r.elements.reserve(g.elements.size());
    for (std::uint64_t enc : g.elements)
        r.elements.push_back(mat_mul(mat_mul(yi, Mat2::decode(g.ctx, enc)), y).encode());
    std::sort(r.elements.begin(), r.elements.end());
    r.generators.reserve(g.generators.size());
    for (const Mat2& gen : g.generators) r.generators.push_back(mat_mul(mat_mul(yi, gen), y));
    return r;
}

// Full preimage of a level-k group under reduction from level n.
MatGroup preimage_to_level(const MatGroup& base, std::uint32_t n) {
    PrimePower ctxn(base.ctx.p, n);
    std::uint64_t pk = base.ctx.modulus;
    std::vector<Mat2> gens = base.generators;
    for (Mat2& gen : gens) gen = Mat2(ctxn, gen.a, gen.b, gen.c, gen.d);
    gens.push_back(Mat2(ctxn, 1 + pk, 0, 0, 1));
    gens.push_back(Mat2(ctxn, 1, pk, 0, 1));
    gens.push_back(Mat2(ctxn, 1, 0, pk, 1));
    gens.push_back(Mat2(ctxn, 1, 0, 0, 1 + pk));
    MatGroup g = generate(ctxn, gens);
    std::uint64_t q = ctxn.modulus / pk;
    std::uint64_t expected = base.order() * q * q * q * q;
    if (g.order() != expected)
        fail("ClosureMismatch", "preimage closure size does not match the fibre count");
    return g;
}

Mat2 random_invertible(PrimePower ctx, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> dist(0, ctx.modulus - 1);
    for (;;) {
        Mat2 m(ctx, dist(rng), dist(rng), dist(rng), dist(rng));
        if (is_invertible(m)) return m;
    }
}

bool kernel_full_from(const MatGroup& g, std::uint32_t level) {
    if (level >= g.ctx.n) return true;
    MatGroup k = level_kernel(g, level);
    std::uint64_t expected = 1;
    for (std::uint32_t i = 0; i < 4 * (g.ctx.n - level); ++i) expected *= g.ctx.p;
    return k.order() == expected;
}

std::string dims_text(const std::vector<std::uint32_t>& dims) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
    os << "]";
    return os.str();
}

} // namespace

LieSubspace span_of(std::uint32_t p, const std::vector<Vec4>& vectors) {
    LieSubspace v;
    v.p = p;
    v.basis = rref(p, vectors);
    return v;
}

bool subspace_contains(const LieSubspace& v, const Vec4& vec) {
    Vec4 w = vec;
    return reduce_vec(v, w);
}

bool subspace_subset(const LieSubspace& inner, const LieSubspace& outer) {
    for (const Vec4& r : inner.basis)
        if (!subspace_contains(outer, r)) return false;
    return true;
}

LieSubspace subspace_sum(const LieSubspace& x, const LieSubspace& y) {
    std::vector<Vec4> rows = x.basis;
    rows.insert(rows.end(), y.basis.begin(), y.basis.end());
    return span_of(x.p, rows);
}

LieSubspace build_V(std::uint32_t p, VPiece which, CartanCase kind) {
    if (p == 2) fail("BadPrime", "the decomposition needs an odd prime");
    std::uint32_t eps = least_nonresidue(p);
    std::vector<Vec4> rows;
    if (kind == CartanCase::nonsplit) {
        switch (which) {
            case VPiece::V1: rows = {{1, 0, 0, 1}}; break;
            case VPiece::V2: rows = {{0, eps, 1, 0}}; break;
            case VPiece::V3: rows = {{1, 0, 0, p - 1}, {0, eps, p - 1, 0}}; break;
        }
    } else {
        switch (which) {
            case VPiece::V1: rows = {{1, 0, 0, 1}}; break;
            case VPiece::V2: rows = {{1, 0, 0, p - 1}}; break;
            case VPiece::V3: rows = {{0, 1, 1, 0}, {0, 1, p - 1, 0}}; break;
        }
    }
    return span_of(p, rows);
}

LieSubspace full_gl2_space(std::uint32_t p) {
    return span_of(p, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
}

LieSubspace full_sl2_space(std::uint32_t p) {
    return span_of(p, {{1, 0, 0, p - 1}, {0, 1, 0, 0}, {0, 0, 1, 0}});
}

LieSubspace sl_part(const LieSubspace& v) {
    std::uint32_t p = v.p;
    std::size_t hot = v.basis.size();
    for (std::size_t i = 0; i < v.basis.size(); ++i)
        if ((v.basis[i][0] + v.basis[i][3]) % p != 0) {
            hot = i;
            break;
        }
    if (hot == v.basis.size()) return v;
    std::uint32_t t0 = (v.basis[hot][0] + v.basis[hot][3]) % p;
    std::uint32_t inv = mod_inverse(t0, p);
    std::vector<Vec4> rows;
    for (std::size_t i = 0; i < v.basis.size(); ++i) {
        if (i == hot) continue;
        std::uint64_t t = (v.basis[i][0] + v.basis[i][3]) % p;
        std::uint64_t f = (p - t * inv % p) % p;
        Vec4 r;
        for (std::size_t j = 0; j < 4; ++j)
            r[j] = std::uint32_t((v.basis[i][j] + f * v.basis[hot][j]) % p);
        rows.push_back(r);
    }
    return span_of(p, rows);
}

LieSubspace lie_image(const MatGroup& g, std::uint32_t i) {
    if (i < 1 || i >= g.ctx.n) fail("BadLevel", "graded piece index must satisfy 1 <= i < n");
    std::uint64_t pi = 1;
    for (std::uint32_t k = 0; k < i; ++k) pi *= g.ctx.p;
    std::uint64_t pi1 = pi * g.ctx.p;
    std::vector<Vec4> rows;
    for (std::uint64_t enc : g.elements) {
        Mat2 x = Mat2::decode(g.ctx, enc);
        std::uint64_t a = x.a % pi1, b = x.b % pi1, c = x.c % pi1, d = x.d % pi1;
        if (a % pi != 1 || b % pi != 0 || c % pi != 0 || d % pi != 1) continue;
        rows.push_back({std::uint32_t((a - 1) / pi % g.ctx.p), std::uint32_t(b / pi % g.ctx.p),
                        std::uint32_t(c / pi % g.ctx.p), std::uint32_t((d - 1) / pi % g.ctx.p)});
    }
    return span_of(g.ctx.p, rows);
}

bool is_stable_under(const LieSubspace& v, const MatGroup& g) {
    if (g.ctx.n != 1) fail("BadLevel", "stability is checked against a level-1 group");
    if (g.ctx.p != v.p) fail("ContextMismatch", "prime mismatch between space and group");
    for (const Mat2& gen : g.generators)
        for (const Vec4& r : v.basis)
            if (!subspace_contains(v, vec_of(conjugate(mat_of(v.p, r), gen)))) return false;
    return true;
}

bool is_irreducible_under(const LieSubspace& v, const MatGroup& g) {
    if (g.ctx.n != 1) fail("BadLevel", "irreducibility is checked against a level-1 group");
    if (g.ctx.p != v.p) fail("ContextMismatch", "prime mismatch between space and group");
    if (v.dim() == 0) return false;
    std::uint32_t p = v.p;
    std::uint32_t d = v.dim();
    // One representative per line: coefficient tuples whose first nonzero
    // coordinate is 1.
    std::vector<std::uint32_t> coef(d, 0);
    for (std::uint32_t lead = 0; lead < d; ++lead) {
        std::fill(coef.begin(), coef.end(), 0);
        coef[lead] = 1;
        std::uint64_t tail = 1;
        for (std::uint32_t i = lead + 1; i < d; ++i) tail *= p;
        for (std::uint64_t t = 0; t < tail; ++t) {
            std::uint64_t tt = t;
            for (std::uint32_t i = lead + 1; i < d; ++i) {
                coef[i] = std::uint32_t(tt % p);
                tt /= p;
            }
            Vec4 w = {0, 0, 0, 0};
            for (std::uint32_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < 4; ++j)
                    w[j] = std::uint32_t((w[j] + std::uint64_t(coef[i]) * v.basis[i][j]) % p);
            LieSubspace orbit = span_of(p, {w});
            bool grew = true;
            while (grew && orbit.dim() < v.dim()) {
                grew = false;
                for (const Mat2& gen : g.generators)
                    for (const Vec4& r : orbit.basis) {
                        Vec4 cr = vec_of(conjugate(mat_of(p, r), gen));
                        if (!subspace_contains(orbit, cr)) {
                            orbit = subspace_sum(orbit, span_of(p, {cr}));
                            grew = true;
                        }
                    }
            }
            if (orbit.dim() < v.dim()) return false;
        }
    }
    return true;
}

bool bracket_closed(const LieSubspace& v) {
    std::uint32_t p = v.p;
    for (std::size_t i = 0; i < v.basis.size(); ++i)
        for (std::size_t j = i + 1; j < v.basis.size(); ++j) {
            Mat2 a = mat_of(p, v.basis[i]);
            Mat2 b = mat_of(p, v.basis[j]);
            Mat2 br = mat_sub(mat_mul(a, b), mat_mul(b, a));
            if (!subspace_contains(v, vec_of(br))) return false;
        }
    return true;
}

std::optional<CartanFraming> find_ncartan_framing(const MatGroup& g) {
    if (g.ctx.p == 2) fail("BadPrime", "framings are defined for odd primes");
    MatGroup gbar = g.ctx.n == 1 ? g : reduce_group(g, 1);
    auto frames = collect_frames(gbar);
    auto q = qualify(gbar, frames);
    return q.framing;
}

bool is_ncartan_lift_finite(const MatGroup& g) {
    if (!det_image_full(g)) return false;
    return find_ncartan_framing(g).has_value();
}

std::string lift_class_name(LiftClass c) {
    switch (c) {
        case LiftClass::normaliser_case: return "normaliser";
        case LiftClass::semidirect_V1V3_case: return "semidirect-V1V3";
        case LiftClass::full_kernel_case: return "full-kernel";
        case LiftClass::violation: return "violation";
    }
    return "?";
}

std::optional<CartanLiftReport> classify_cartan_lift(const MatGroup& g) {
    if (g.ctx.p == 2) fail("BadPrime", "classification requires an odd prime");
    if (g.ctx.n < 2) fail("BadLevel", "classification requires level at least 2");
    const std::uint32_t p = g.ctx.p;
    const std::uint32_t n = g.ctx.n;

    if (!det_image_full(g)) return std::nullopt;
    if (!unit_scalars_present(g)) return std::nullopt;

    MatGroup gbar = reduce_group(g, 1);
    auto frames = collect_frames(gbar);
    auto qual = qualify(gbar, frames);
    if (!qual.framing) return std::nullopt;

    CartanLiftReport rep;
    rep.level = n;
    for (std::uint32_t i = 1; i < n; ++i) rep.g_dims.push_back(lie_image(g, i).dim());
    const auto& dims = rep.g_dims;

    if (dims[0] <= 1) {
        rep.classification = LiftClass::violation;
        rep.description = "first graded piece has dimension " + std::to_string(dims[0]) +
                          "; the classification needs dimension at least 2";
        return rep;
    }
    if (!qual.proj_order_ok) {
        rep.classification = LiftClass::violation;
        rep.description =
            "every Cartan element of the level-1 image has projective order at most 2";
        return rep;
    }

    bool pattern_ok = true;
    std::uint32_t first4 = 0; // 1-based grade of the first 4, 0 when absent
    for (std::size_t i = 0; i < dims.size(); ++i) {
        std::uint32_t d = dims[i];
        if ((d != 2 && d != 3 && d != 4) || (d == 3 && i != 0) ||
            (first4 != 0 && d != 4) || (i > 0 && dims[0] == 3 && d != 4)) {
            pattern_ok = false;
            break;
        }
        if (d == 4 && first4 == 0) first4 = std::uint32_t(i + 1);
    }
    if (!pattern_ok) {
        rep.classification = LiftClass::violation;
        rep.description = "graded dimension pattern " + dims_text(dims) +
                          " is outside the rigid shapes 2..2, 2..2 4..4, 3 4..4, 4..4";
        return rep;
    }

    if (dims[0] == 2 && first4 == 0) {
        for (const KindFrames& kf : frames) {
            if (kf.conjugators.empty()) continue;
            auto ys = staged_conjugators(g, kf.kind, n);
            if (ys.empty()) continue;
            std::uint64_t cp_n = cartan_plus_order(kf.kind, p, n);
            std::uint64_t cp_1 = cartan_plus_order(kf.kind, p, 1);
            if (cp_n % g.order() != 0 || cp_1 % gbar.order() != 0 ||
                cp_n / g.order() != cp_1 / gbar.order()) {
                rep.classification = LiftClass::violation;
                rep.description = "normaliser containment at level " + std::to_string(n) +
                                  " without index preservation";
                return rep;
            }
            rep.classification = LiftClass::normaliser_case;
            rep.description = "conjugates into the " + case_name(kf.kind) +
                              " Cartan normaliser at level " + std::to_string(n) + " with index " +
                              std::to_string(cp_n / g.order()) +
                              " preserved from level 1 (witness " + format_mat(ys.front()) + ")";
            return rep;
        }
        rep.classification = LiftClass::violation;
        rep.description =
            "graded dimensions stay at 2 but no conjugation into a Cartan normaliser exists";
        return rep;
    }

    if (dims[0] == 2) {
        std::uint32_t lvl = first4;
        if (!kernel_full_from(g, lvl)) {
            rep.classification = LiftClass::violation;
            rep.description = "graded dimension 4 at grade " + std::to_string(lvl) +
                              " without the full congruence kernel from that level";
            return rep;
        }
        MatGroup glvl = reduce_group(g, lvl);
        for (const KindFrames& kf : frames) {
            if (kf.conjugators.empty()) continue;
            auto ys = staged_conjugators(g, kf.kind, lvl);
            if (ys.empty()) continue;
            std::uint64_t cp_l = cartan_plus_order(kf.kind, p, lvl);
            std::uint64_t cp_1 = cartan_plus_order(kf.kind, p, 1);
            std::uint64_t idx_l = cp_l / glvl.order();
            rep.classification = LiftClass::full_kernel_case;
            rep.description = "contains the full congruence kernel from level " +
                              std::to_string(lvl) + "; the level-" + std::to_string(lvl) +
                              " image conjugates into the " + case_name(kf.kind) +
                              " Cartan normaliser with index " + std::to_string(idx_l) +
                              (cp_1 / gbar.order() == idx_l ? " preserved from level 1" : "");
            return rep;
        }
        rep.classification = LiftClass::violation;
        rep.description = "full kernel from level " + std::to_string(lvl) +
                          " but the image there has no Cartan normaliser containment";
        return rep;
    }

    if (dims[0] == 3) {
        if (n >= 3 && !kernel_full_from(g, 2)) {
            rep.classification = LiftClass::violation;
            rep.description =
                "three-dimensional first graded piece without the full kernel from level 2";
            return rep;
        }
        LieSubspace g1 = lie_image(g, 1);
        std::optional<CartanCase> hit;
        for (const KindFrames& kf : frames) {
            LieSubspace v13 =
                subspace_sum(build_V(p, VPiece::V1, kf.kind), build_V(p, VPiece::V3, kf.kind));
            for (const Mat2& x : kf.conjugators)
                if (transport(g1, x) == v13) {
                    hit = kf.kind;
                    break;
                }
            if (hit) break;
        }
        if (!hit) {
            rep.classification = LiftClass::violation;
            rep.description =
                "three-dimensional first graded piece is not V1+V3 in any Cartan framing";
            return rep;
        }
        MatGroup g2 = n == 2 ? g : reduce_group(g, 2);
        try {
            (void)find_complement(g2);
        } catch (const DomainError& e) {
            rep.classification = LiftClass::violation;
            rep.description = std::string("level-2 image has no complement to its kernel (") +
                              e.what() + ")";
            return rep;
        }
        rep.classification = LiftClass::semidirect_V1V3_case;
        rep.description = "level-1 kernel piece is V1+V3 in a " + case_name(*hit) +
                          " framing; the level-2 image splits as a semidirect product of the "
                          "level-1 image against that kernel";
        return rep;
    }

    if (!kernel_full_from(g, 1)) {
        rep.classification = LiftClass::violation;
        rep.description =
            "four-dimensional first graded piece without the full level-1 congruence kernel";
        return rep;
    }
    {
        CartanCase kind = qual.framing->kind;
        std::uint64_t cp_1 = cartan_plus_order(kind, p, 1);
        rep.classification = LiftClass::full_kernel_case;
        rep.description = "contains the full level-1 congruence kernel; the index " +
                          std::to_string(cp_1 / gbar.order()) + " inside the " + case_name(kind) +
                          " Cartan normaliser is preserved at level 1";
    }
    return rep;
}

std::vector<CartanLiftReport> verify_cartan_tower(std::uint32_t p, std::uint32_t n_max,
                                                  const SamplerConfig& config) {
    if (p == 2) fail("BadPrime", "the tower battery requires an odd prime");
    if (n_max < 2) fail("BadLevel", "the tower battery starts at level 2");
    std::mt19937_64 rng(config.seed);
    std::vector<CartanLiftReport> reports;

    auto push_expected = [&](const MatGroup& grp, const std::string& expected) {
        Mat2 y = random_invertible(grp.ctx, rng);
        MatGroup twisted = conjugate_group(grp, y);
        auto rep = classify_cartan_lift(twisted);
        if (!rep) {
            CartanLiftReport r;
            r.level = grp.ctx.n;
            r.classification = LiftClass::violation;
            r.description = "expected:" + expected + "|sample did not qualify as a Cartan lift";
            reports.push_back(std::move(r));
            return;
        }
        rep->description = "expected:" + expected + "|" + rep->description;
        reports.push_back(std::move(*rep));
    };

    LieSubspace v1 = build_V(p, VPiece::V1, CartanCase::nonsplit);
    LieSubspace v2 = build_V(p, VPiece::V2, CartanCase::nonsplit);
    LieSubspace v3 = build_V(p, VPiece::V3, CartanCase::nonsplit);

    for (std::uint32_t n = 2; n <= n_max; ++n) {
        PrimePower ctxn(p, n);
        MatGroup cpn = build_cartan(ctxn, CartanKind::nonsplit_normaliser);
        push_expected(cpn, "normaliser");

        if (n <= 3) {
            PrimePower ctx2(p, 2);
            MatGroup cp2 = n == 2 ? cpn : build_cartan(ctx2, CartanKind::nonsplit_normaliser);
            MatGroup h2 = find_complement(cp2);
            auto kernel_row = [&](const LieSubspace& w) {
                std::vector<Mat2> gens = h2.generators;
                for (const Vec4& r : w.basis)
                    gens.push_back(Mat2(ctx2, 1 + std::int64_t(p) * r[0], std::int64_t(p) * r[1],
                                        std::int64_t(p) * r[2], 1 + std::int64_t(p) * r[3]));
                MatGroup grp = generate(ctx2, gens);
                std::uint64_t expect = h2.order();
                for (std::uint32_t i = 0; i < w.dim(); ++i) expect *= p;
                if (grp.order() != expect)
                    fail("ClosureMismatch", "kernel battery row has unexpected order");
                return grp;
            };
            MatGroup b1 = kernel_row(v1);
            MatGroup b3 = kernel_row(subspace_sum(v1, v3));
            MatGroup b4base = build_cartan(PrimePower(p, 1), CartanKind::nonsplit_normaliser);
            if (n == 2) {
                push_expected(b1, "violation");
                push_expected(b3, "semidirect-V1V3");
                push_expected(preimage_to_level(b4base, 2), "full-kernel");
            } else {
                push_expected(preimage_to_level(b1, 3), "violation");
                push_expected(preimage_to_level(cp2, 3), "full-kernel");
                push_expected(preimage_to_level(b3, 3), "semidirect-V1V3");
                push_expected(preimage_to_level(b4base, 3), "full-kernel");
            }
        }

        MatGroup hn = find_complement(cpn);
        MatGroup cn = build_cartan(ctxn, CartanKind::nonsplit);
        Mat2 g0;
        bool got = false;
        std::uint64_t unit_count = std::uint64_t(ctxn.modulus) / p * (p - 1);
        for (std::uint64_t enc : hn.elements) {
            Mat2 m = Mat2::decode(ctxn, enc);
            if (!cn.contains(m) || projective_order(m) <= 2) continue;
            std::uint64_t d = det(m), acc = d, ord = 1;
            while (acc != 1) {
                acc = acc * d % ctxn.modulus;
                ++ord;
                if (ord > unit_count) break;
            }
            if (ord == p - 1) {
                g0 = m;
                got = true;
                break;
            }
        }
        if (!got) fail("SearchExhausted", "no determinant-spanning Cartan element found");
        Mat2 w = Mat2(ctxn, 1, 0, 0, -1);

        for (std::uint64_t s = 0; s < config.samples; ++s) {
            std::uint32_t which = std::uint32_t(rng() % (n >= 3 ? 4 : 3));
            std::vector<Mat2> gens = {g0, Mat2::scalar(ctxn, 1 + p), w,
                                      hn.element(std::size_t(rng() % hn.order()))};
            auto add_kernel = [&](const LieSubspace& ws) {
                for (const Vec4& r : ws.basis)
                    gens.push_back(Mat2(ctxn, 1 + std::int64_t(p) * r[0], std::int64_t(p) * r[1],
                                        std::int64_t(p) * r[2], 1 + std::int64_t(p) * r[3]));
            };
            auto add_grade2_full = [&]() {
                std::int64_t pp = std::int64_t(p) * p;
                gens.push_back(Mat2(ctxn, 1 + pp, 0, 0, 1));
                gens.push_back(Mat2(ctxn, 1, pp, 0, 1));
                gens.push_back(Mat2(ctxn, 1, 0, pp, 1));
                gens.push_back(Mat2(ctxn, 1, 0, 0, 1 + pp));
            };
            std::string expected;
            if (which == 0) {
                add_kernel(v2);
                expected = "normaliser";
            } else if (which == 1) {
                add_kernel(v3);
                if (n >= 3) add_grade2_full();
                expected = "semidirect-V1V3";
            } else if (which == 2) {
                add_kernel(full_gl2_space(p));
                if (n >= 3) add_grade2_full();
                expected = "full-kernel";
            } else {
                add_kernel(v2);
                add_grade2_full();
                expected = "full-kernel";
            }
            push_expected(generate(ctxn, gens), expected);
        }
    }
    return reports;
}

} // namespace cartan
