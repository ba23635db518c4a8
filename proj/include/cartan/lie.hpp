#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cartan/matgroup.hpp"

namespace cartan {

// F_p-linear subspace of gl2(F_p), stored as a reduced row echelon basis in
// coordinate order (a, b, c, d). The basis is canonical, so subspaces compare
// by value.
struct LieSubspace {
    std::uint32_t p = 0;
    std::vector<std::array<std::uint32_t, 4>> basis;

    std::uint32_t dim() const { return std::uint32_t(basis.size()); }
    bool operator==(const LieSubspace&) const = default;
};

LieSubspace span_of(std::uint32_t p, const std::vector<std::array<std::uint32_t, 4>>& vectors);
bool subspace_contains(const LieSubspace& v, const std::array<std::uint32_t, 4>& vec);
bool subspace_subset(const LieSubspace& inner, const LieSubspace& outer);
LieSubspace subspace_sum(const LieSubspace& x, const LieSubspace& y);

enum class VPiece { V1, V2, V3 };
enum class CartanCase { split, nonsplit };

// The irreducible pieces of gl2 under Cartan-normaliser conjugation.
LieSubspace build_V(std::uint32_t p, VPiece which, CartanCase kind);
LieSubspace full_gl2_space(std::uint32_t p);
LieSubspace full_sl2_space(std::uint32_t p);

// Intersection with the trace-zero subspace.
LieSubspace sl_part(const LieSubspace& v);

// g_i: the span of {(g - I)/p^i mod p} over the level-i kernel of G.
LieSubspace lie_image(const MatGroup& g, std::uint32_t i);

// Stability and irreducibility of V under conjugation by a level-1 group.
bool is_stable_under(const LieSubspace& v, const MatGroup& g);
bool is_irreducible_under(const LieSubspace& v, const MatGroup& g);

bool bracket_closed(const LieSubspace& v);

// Framing witness: G(p) lands in C_kind^+ via conjugator x, not inside the
// Cartan itself, and meets the Cartan non-scalarly.
struct CartanFraming {
    CartanCase kind;
    Mat2 conjugator;
};

std::optional<CartanFraming> find_ncartan_framing(const MatGroup& g);

// Finite-level N-Cartan lift predicate: full determinant image plus a framing.
bool is_ncartan_lift_finite(const MatGroup& g);

enum class LiftClass { normaliser_case, semidirect_V1V3_case, full_kernel_case, violation };

struct CartanLiftReport {
    std::uint32_t level = 0;
    std::vector<std::uint32_t> g_dims;
    LiftClass classification = LiftClass::violation;
    std::string description;
};

std::string lift_class_name(LiftClass c);

struct SamplerConfig {
    std::uint64_t samples = 100;
    std::uint64_t seed = 0;
};

// Classifies one group against the lift trichotomy; nullopt when the group
// does not satisfy the qualification hypotheses.
std::optional<CartanLiftReport> classify_cartan_lift(const MatGroup& g);

// Deterministic kernel battery (V1, V1+V2, V1+V3, gl2) plus seeded random
// lifts of the Cartan normaliser; returns reports for qualifying samples.
std::vector<CartanLiftReport> verify_cartan_tower(std::uint32_t p, std::uint32_t n_max,
                                                  const SamplerConfig& config);

} // namespace cartan
