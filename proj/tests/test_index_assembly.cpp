#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include <json.hpp>

#include "cartan/assembly.hpp"
#include "cartan/bounds.hpp"
#include "cartan/error.hpp"
#include "test_util.hpp"

using namespace cartan;

TEST_CASE("p-adic index candidates") {
    auto f7 = padic_index(7, 1);
    CHECK(f7.candidates == std::vector<std::uint64_t>{21, 147});
    CHECK(f7.upper == 3 * 49); // (p-1)/(2p) * p^3
    CHECK(f7.note.empty());

    auto f5 = padic_index(5, 1);
    CHECK(f5.candidates == std::vector<std::uint64_t>{10, 50, 30});
    CHECK(f5.upper == 50);

    auto f32 = padic_index(3, 2);
    CHECK(f32.candidates == std::vector<std::uint64_t>{27});
    CHECK(f32.upper == 243);
    CHECK(!f32.note.empty());

    auto f11 = padic_index(11, 3);
    CHECK(f11.candidates == std::vector<std::uint64_t>{5 * 161051}); // (p-1)/2 * p^5
    CHECK(f11.upper == 5ull * 11 * 11 * 11 * 11 * 11 * 11 * 11 * 11);

    SUBCASE("every candidate divides into the stated upper bound region") {
        for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull}) {
            for (std::uint32_t n = 1; n <= 3; ++n) {
                auto fact = padic_index(p, n);
                CHECK(!fact.candidates.empty());
                for (std::uint64_t c : fact.candidates) CHECK(c <= fact.upper);
            }
        }
    }

    SUBCASE("guards") {
        CHECK(error_code_of([] { padic_index(2, 1); }) == "BadPrime");
        CHECK(error_code_of([] { padic_index(9, 1); }) == "NotPrime");
        CHECK(error_code_of([] { padic_index(5, 0); }) == "BadLevel");
    }
}

TEST_CASE("small-prime constants") {
    CHECK(two_adic_upper() == 32);
    CHECK(three_adic_surjective_upper() == 27);
    CHECK(five_exceptional() == 5);
}

TEST_CASE("case A composition") {
    BoundReport base = compose_case_A(BigRational(1), 0, Delta7::one);
    CHECK(base.result.enclosure.contains(2488320.0));
    CHECK(base.result.enclosure.width_d() == 0.0);

    BoundReport r = compose_case_A(BigRational(11), 1, Delta7::one);
    CHECK(r.result.enclosure.contains(9935861760.0));
    CHECK(r.formula_id == "case-a-index");
    CHECK(r.inputs.at("beta") == "1");

    SUBCASE("scales exactly like Delta7 * 3^beta * Lambda^3") {
        for (long lam : {1, 2, 7, 100}) {
            for (std::uint32_t beta = 0; beta <= 2; ++beta) {
                BigRational expected = BigRational(2488320) * BigRational(8, 3);
                for (std::uint32_t i = 0; i < beta; ++i) expected *= 3;
                expected *= BigRational(lam) * lam * lam;
                BoundReport b = compose_case_A(BigRational(lam), beta, Delta7::eight_thirds);
                CHECK(b.result.enclosure.contains(Ival::of_mpq(expected)));
                CHECK(Ival::of_mpq(expected).contains(b.result.enclosure));
            }
        }
    }

    SUBCASE("absorption caps Delta7 at 8/3") {
        BoundReport absorbed = compose_case_A(BigRational(5), 2, Delta7::eight, true);
        BoundReport capped = compose_case_A(BigRational(5), 2, Delta7::eight_thirds, false);
        CHECK(absorbed.result.enclosure.contains(capped.result.enclosure));
        CHECK(capped.result.enclosure.contains(absorbed.result.enclosure));
        CHECK(absorbed.inputs.at("delta7") == "8/3");
        BoundReport plain = compose_case_A(BigRational(5), 2, Delta7::eight, false);
        CHECK(capped.result.enclosure.certified_less(plain.result.enclosure));
    }

    SUBCASE("interval overload agrees with the exact one") {
        BoundReport exact = compose_case_A(BigRational(9), 1, Delta7::one);
        BoundReport ival = compose_case_A(Ival::exact_int(9), 1, Delta7::one);
        CHECK(ival.result.enclosure.contains(exact.result.enclosure));
    }

    CHECK(error_code_of([] { compose_case_A(BigRational(1, 2), 0, Delta7::one); }) ==
          "ExcludedCase");
}

TEST_CASE("case B composition") {
    BoundReport one = compose_case_B(BigRational(1));
    CHECK(one.result.enclosure.contains(4.3e12));
    CHECK(one.result.enclosure.width_d() == 0.0);
    CHECK(one.formula_id == "case-b-index");

    BoundReport r = compose_case_B(BigRational(1000));
    CHECK(r.result.enclosure.contains(4.3e18));

    BoundReport half = compose_case_B(Ival::of_mpq(BigRational(3, 2)));
    CHECK(half.result.enclosure.contains(4.3e12 * 2.25));

    CHECK(error_code_of([] { compose_case_B(BigRational(0)); }) == "ExcludedCase");
}

TEST_CASE("entanglement ratio bound") {
    CHECK(entanglement_ratio_bound(0) == 1536);
    CHECK(entanglement_ratio_bound(1) == 9216);
    CHECK(entanglement_ratio_bound(2) == 55296);
    mpz_class v = entanglement_ratio_bound(10);
    CHECK(v == mpz_class(1536) * 60466176); // 6^10
}

TEST_CASE("delta7 values") {
    CHECK(delta7_value(Delta7::one) == BigRational(1));
    CHECK(delta7_value(Delta7::eight_thirds) == BigRational(8, 3));
    CHECK(delta7_value(Delta7::eight) == BigRational(8));
    CHECK(delta7_name(Delta7::eight_thirds) == "8/3");
}

TEST_CASE("tabulated points") {
    SUBCASE("lookup hits") {
        BigRational j1 = BigRational(550731776); // 2^15 * 7^5
        auto kp1 = known_point_lookup(j1);
        REQUIRE(kp1.has_value());
        CHECK(kp1->adelic_index == 84);
        CHECK(kp1->exact);

        mpz_class lvl9 = mpz_class(27) * 68921 * 226981 * 3307949; // 3^3 41^3 61^3 149^3
        auto kp2 = known_point_lookup(BigRational(lvl9));
        REQUIRE(kp2.has_value());
        CHECK(kp2->adelic_index == 108);

        auto kp3 = known_point_lookup(BigRational(-24729001)); // -11 * 131^3
        REQUIRE(kp3.has_value());
        CHECK(kp3->adelic_index == 2736);
        CHECK(!kp3->exact);

        auto kp4 = known_point_lookup(BigRational(-121));
        REQUIRE(kp4.has_value());
        CHECK(kp4->adelic_index == 2736);
    }

    SUBCASE("lookup misses") {
        CHECK(!known_point_lookup(BigRational(0)).has_value());
        CHECK(!known_point_lookup(BigRational(1728)).has_value());
    }

    SUBCASE("table shape") {
        const auto& pts = known_points();
        CHECK(pts.size() == 16);
        std::size_t idx84 = 0, idx504 = 0, idx182 = 0, idx128 = 0, inexact = 0;
        for (const auto& kp : pts) {
            REQUIRE(kp.j.has_value());
            if (kp.adelic_index == 84) ++idx84;
            if (kp.adelic_index == 504) ++idx504;
            if (kp.adelic_index == 182) ++idx182;
            if (kp.adelic_index == 128) ++idx128;
            if (!kp.exact) ++inexact;
        }
        CHECK(idx84 == 2);
        CHECK(idx504 == 2);
        CHECK(idx182 == 3);
        CHECK(idx128 == 2);
        CHECK(inexact == 6);
    }

    SUBCASE("exceptional entries carry no j-invariant") {
        const auto& exc = exceptional_index_entries();
        REQUIRE(exc.size() == 3);
        std::vector<std::uint64_t> idx;
        for (const auto& kp : exc) {
            CHECK(!kp.j.has_value());
            CHECK(kp.exact);
            idx.push_back(kp.adelic_index);
        }
        CHECK(idx == std::vector<std::uint64_t>{224, 200, 300});
    }
}

TEST_CASE("height pipeline dominance") {
    SUBCASE("surjective case stays under the curve") {
        PipelineScenario sc;
        sc.kind = PipelineScenario::Case::B;
        BoundReport r = full_pipeline_height(0.0, sc);
        CHECK(r.formula_id == "pipeline-height-case-b");
        Ival curve = adelic_bound_height(Ival::exact_int(0)).result.enclosure;
        CHECK(r.result.enclosure.certified_leq(curve *
                                               (Ival::exact_int(1) + Ival::of_decimal("2e-9"))));
        double lam = 21000.0 * std::pow(40.0, 1.308);
        CHECK(std::abs(r.result.enclosure.mid_d() - 4.3e12 * lam * lam) <
              1e-6 * 4.3e12 * lam * lam);
    }

    SUBCASE("nonsplit case, integral j") {
        PipelineScenario sc;
        sc.kind = PipelineScenario::Case::A;
        sc.j_integral = true;
        BoundReport r = full_pipeline_height(0.0, sc);
        CHECK(r.formula_id == "pipeline-height-case-a");
        CHECK(r.inputs.at("j_integral") == "true");
        double lam = 21000.0 * std::pow(40.0, 1.308);
        double expo = 3.0 + std::log(3.0) / std::log(19.0);
        double oracle = 2488320.0 * std::pow(lam, expo);
        CHECK(std::abs(r.result.enclosure.mid_d() - oracle) < 1e-6 * oracle);
    }

    SUBCASE("nonsplit case, non-integral j") {
        PipelineScenario sc;
        sc.kind = PipelineScenario::Case::A;
        sc.j_integral = false;
        BoundReport r = full_pipeline_height(0.0, sc);
        CHECK(r.inputs.at("j_integral") == "false");
        double expo = 3.0 + std::log(3.0) / std::log(19.0);
        double oracle = 6635520.0 * std::pow(3.0, 0.525) * std::pow(25.0, expo);
        CHECK(std::abs(r.result.enclosure.mid_d() - oracle) < 1e-6 * oracle);
    }

    SUBCASE("edge of the height domain") {
        PipelineScenario sc;
        BoundReport r = full_pipeline_height(-0.75 + 1e-6, sc);
        CHECK(r.result.enclosure.is_positive());
        CHECK(error_code_of([&] { full_pipeline_height(-0.75, sc); }) == "ExcludedCase");
        CHECK(error_code_of([&] { full_pipeline_height(-0.8, sc); }) == "ExcludedCase");
    }

    SUBCASE("explicit composition is reported without the dominance assertion") {
        PipelineScenario sc;
        sc.kind = PipelineScenario::Case::A;
        sc.beta = 1;
        sc.d7 = Delta7::eight;
        BoundReport r = full_pipeline_height(0.0, sc);
        CHECK(r.anchor.find("reported") != std::string::npos);
        CHECK(r.inputs.at("beta") == "1");
        CHECK(r.inputs.at("delta7") == "8");
        double lam = 21000.0 * std::pow(40.0, 1.308);
        double oracle = 2488320.0 * 8.0 * 3.0 * lam * lam * lam;
        CHECK(std::abs(r.result.enclosure.mid_d() - oracle) < 1e-6 * oracle);
    }

    SUBCASE("half-specified explicit composition is rejected") {
        PipelineScenario sc;
        sc.kind = PipelineScenario::Case::A;
        sc.beta = 1;
        CHECK(error_code_of([&] { full_pipeline_height(0.0, sc); }) == "ExcludedCase");
        PipelineScenario sc2;
        sc2.kind = PipelineScenario::Case::A;
        sc2.d7 = Delta7::one;
        CHECK(error_code_of([&] { full_pipeline_height(0.0, sc2); }) == "ExcludedCase");
    }

    SUBCASE("dominance holds across a height grid") {
        PipelineScenario b;
        PipelineScenario a_int;
        a_int.kind = PipelineScenario::Case::A;
        PipelineScenario a_non;
        a_non.kind = PipelineScenario::Case::A;
        a_non.j_integral = false;
        for (double f : {-0.7, 0.0, 1.0, 100.0, 1e6, 1e12}) {
            Ival curve = adelic_bound_height(require_f_domain(f)).result.enclosure *
                         (Ival::exact_int(1) + Ival::of_decimal("2e-9"));
            CHECK(full_pipeline_height(f, b).result.enclosure.certified_leq(curve));
            CHECK(full_pipeline_height(f, a_int).result.enclosure.certified_leq(curve));
            CHECK(full_pipeline_height(f, a_non).result.enclosure.certified_leq(curve));
        }
    }
}

TEST_CASE("bound report serialization") {
    BoundReport r = compose_case_B(BigRational(2));
    auto j = nlohmann::json::parse(bound_report_json(r));
    CHECK(j.at("formula_id") == "case-b-index");
    CHECK(j.at("value_double").get<double>() == 4.3e12 * 4);
    CHECK(j.at("rounding") == "up");
    CHECK(j.at("inputs").at("lambda") == "2");
    CHECK(j.at("enclosure").contains("lo"));
    CHECK(j.at("enclosure").contains("hi"));
    CHECK(!j.at("anchor").get<std::string>().empty());

    auto pretty = bound_report_json(r, true);
    CHECK(nlohmann::json::parse(pretty) == j);
    CHECK(pretty.find('\n') != std::string::npos);
}
