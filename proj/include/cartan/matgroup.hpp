#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cartan/gl2.hpp"

namespace cartan {

enum class CartanKind { nonsplit, nonsplit_normaliser, split, split_normaliser, borel };

CartanKind parse_cartan_kind(const std::string& text); // "nonsplit+", "split", "borel", ...
std::string cartan_kind_name(CartanKind k);

// A finite subgroup of GL2(Z/p^n Z): a generating set plus the fully
// enumerated element set as sorted packed encodings.
struct MatGroup {
    PrimePower ctx;
    std::vector<Mat2> generators;
    std::vector<std::uint64_t> elements; // sorted, unique

    std::uint64_t order() const { return elements.size(); }
    bool contains_enc(std::uint64_t e) const;
    bool contains(const Mat2& m) const { return contains_enc(m.encode()); }
    Mat2 element(std::size_t i) const { return Mat2::decode(ctx, elements[i]); }
};

// Element budget for closures and exhaustive scans; reads CARTAN_ADELIC_BUDGET
// (default 2^24).
std::uint64_t closure_budget();

// Smallest subgroup containing gens (BFS closure from the identity).
MatGroup generate(PrimePower ctx, const std::vector<Mat2>& gens);

// Closure as a raw sorted encoding vector, without picking generators.
std::vector<std::uint64_t> close_under(PrimePower ctx, const std::vector<Mat2>& gens);

// Named subgroups of Definition-style element sets, built by parametrization
// and equipped with a small verified generating set.
MatGroup build_cartan(PrimePower ctx, CartanKind kind);

// All of GL2(Z/p^n Z) by determinant scan (budget-guarded).
MatGroup full_gl2(PrimePower ctx);

// |GL2(Z/p^n Z)| = p^{4(n-1)} (p^2-1)(p^2-p), as a closed form.
std::uint64_t gl2_order(PrimePower ctx);

std::uint64_t group_order(const MatGroup& g);
std::uint64_t index_in_gl2(const MatGroup& g); // throws LagrangeViolation on non-divisibility

MatGroup sl2_part(const MatGroup& g);

// Image of the group under entrywise reduction to level m.
MatGroup reduce_group(const MatGroup& g, std::uint32_t m);

// Subgroup of elements congruent to I mod p^i (1 <= i < n).
MatGroup level_kernel(const MatGroup& g, std::uint32_t i);

// Some x with x^{-1} G x = H, or nullopt. Exhaustive over unit-determinant
// matrices; guarded to modulus <= 49.
std::optional<Mat2> is_conjugate_subgroup(const MatGroup& g, const MatGroup& h);

// True when g^{-1} c g lies in C for every g in N, c in C.
bool normalizes(const MatGroup& n, const MatGroup& c);

// Multiplicative order of m in its context group.
std::uint64_t element_order(const Mat2& m);

// Order of the image of m in PGL2 (smallest k with m^k scalar).
std::uint64_t projective_order(const Mat2& m);

// Picks a small generating set for an explicitly given element set
// (greedy; validates closure(gens) == elements).
std::vector<Mat2> find_generators(PrimePower ctx, const std::vector<std::uint64_t>& elements);

} // namespace cartan
