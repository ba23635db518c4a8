#pragma once

#include <cstdint>
#include <utility>

#include "cartan/matgroup.hpp"

namespace cartan {

// Schur-Zassenhaus complement of the level-1 congruence kernel N in G:
// H <= G with |H| = |G|/|N|, H meeting N trivially, reduction mod p a
// bijection H -> G(p). Requires p not dividing |G(p)|.
MatGroup find_complement(const MatGroup& g);

// As above but with a seeded perturbation of the internal section, so that
// repeated calls can produce distinct complements.
MatGroup find_complement_seeded(const MatGroup& g, std::uint64_t seed);

bool is_complement(const MatGroup& g, const MatGroup& h);

// Some x in G with x^{-1} H1 x = H2; existence is a theorem, so failure throws.
Mat2 complements_conjugate(const MatGroup& g, const MatGroup& h1, const MatGroup& h2);

// The two roots of the characteristic polynomial of A in Z/p^n Z or its
// unramified quadratic extension, lifted by Newton iteration from mod p.
// Requires unit discriminant tr^2 - 4 det; output pair in canonical order.
std::pair<QuadResidue, QuadResidue> hensel_eigenvalues(const Mat2& a);

} // namespace cartan
