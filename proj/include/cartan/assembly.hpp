#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cartan/bounds.hpp"
#include "cartan/real.hpp"

namespace cartan {

// Candidate p-adic index set at Cartan level n, plus the corollary's upper
// bound (p-1)/(2p) * p^{3n}.
struct PAdicIndexFact {
    std::uint64_t p = 0;
    std::uint32_t n = 0;
    std::vector<std::uint64_t> candidates;
    std::uint64_t upper = 0;
    std::string note; // carries the p = 3 equality caveat
};

PAdicIndexFact padic_index(std::uint64_t p, std::uint32_t n);

std::uint64_t two_adic_upper();             // 32
std::uint64_t three_adic_surjective_upper(); // 27
std::uint64_t five_exceptional();            // 5

// ---- Known rational points with tabulated adelic indices ----------------------

struct KnownPoint {
    std::optional<BigRational> j;
    std::string source;
    std::uint64_t adelic_index = 0;
    bool exact = true; // false marks an upper bound
};

const std::vector<KnownPoint>& known_points();
std::optional<KnownPoint> known_point_lookup(const BigRational& j);

// Exceptional adelic indices attested without tabulated j-invariants.
const std::vector<KnownPoint>& exceptional_index_entries(); // 224, 200, 300

// ---- Case composition ----------------------------------------------------------

enum class Delta7 { one, eight_thirds, eight };

std::string delta7_name(Delta7 d);
BigRational delta7_value(Delta7 d);

// 2488320 * Delta7 * 3^beta * Lambda^3 (exact rational product); with
// `absorbed`, Delta7 is first replaced by min(Delta7, 8/3).
BoundReport compose_case_A(const BigRational& lambda, std::uint32_t beta, Delta7 d7,
                           bool absorbed = false);
BoundReport compose_case_A(const Ival& lambda, std::uint32_t beta, Delta7 d7,
                           bool absorbed = false);

// 4.3e12 * Lambda^2.
BoundReport compose_case_B(const BigRational& lambda);
BoundReport compose_case_B(const Ival& lambda);

// 1536 * 6^alpha.
mpz_class entanglement_ratio_bound(std::uint32_t alpha);

// ---- Full pipeline in the height parameter -------------------------------------

struct PipelineScenario {
    enum class Case { A, B } kind = Case::B;
    bool j_integral = true;                 // case A only
    std::optional<std::uint32_t> beta;      // explicit (beta, Delta7) chain, reported only
    std::optional<Delta7> d7;
};

// Composes the selected case bound with the height-parameter Lambda bound.
// The proof-default chains (case B; case A integral via the powered Lambda
// bound; case A non-integral via the linear Lambda bound) are asserted to
// stay below adelic_bound_height(F) * (1 + 1e-9); explicit (beta, Delta7)
// compositions are reported without assertion.
BoundReport full_pipeline_height(double f, const PipelineScenario& scenario);
BoundReport full_pipeline_height(const Ival& f, const PipelineScenario& scenario);

} // namespace cartan
