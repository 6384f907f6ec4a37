#include "semichar/gl2.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace semichar;

TEST_CASE("cyclic subgroup counts") {
    const auto c34 = gl2_cyclic_subgroup_count(3, 4);
    CHECK(c34.subgroup_count == 3);
    CHECK(c34.element_count == 6);

    CHECK(gl2_cyclic_subgroup_count(4, 5).subgroup_count == 6);
    CHECK(gl2_cyclic_subgroup_count(5, 3).subgroup_count == 10);
    CHECK(gl2_cyclic_subgroup_count(5, 6).subgroup_count == 10);

    CHECK_THROWS_AS(gl2_cyclic_subgroup_count(5, 2), InputError);
    CHECK_THROWS_AS(gl2_cyclic_subgroup_count(5, 4), InputError); // 4 does not divide 6
}

TEST_CASE("sylow facts") {
    const auto f3 = gl2_sylow_facts(3);
    CHECK(f3.monomial_two_part == 8);
    CHECK(f3.two_part_of_group == 16);
    CHECK_FALSE(f3.monomial_matches_sylow);
    CHECK(f3.constructed_sylow_order == 16);

    const auto f5 = gl2_sylow_facts(5);
    CHECK(f5.two_part_of_group == 32); // 2(val_2(q-1)) + 1 = 5
    CHECK(f5.monomial_matches_sylow);

    const auto f4 = gl2_sylow_facts(4);
    REQUIRE(f4.odd_l_checks.size() == 1);
    CHECK(f4.odd_l_checks[0].l == 3);
    CHECK(f4.odd_l_checks[0].actual == 2);

    const auto f7 = gl2_sylow_facts(7);
    CHECK(f7.two_part_of_group == 32); // val_2(48 * 42) = 5
    CHECK(f7.constructed_sylow_order == 32);
    REQUIRE(f7.odd_l_checks.size() == 1);
    CHECK(f7.odd_l_checks[0].l == 3);
    CHECK(f7.odd_l_checks[0].actual == 2);
}

TEST_CASE("p-part functionals") {
    const auto g32 = gl_p_part_semichars(3, 2);
    CHECK(g32.report.domain_size == 64);
    CHECK(g32.report.independence_rank == 6);
    CHECK(g32.report.claimed_lower_bound == 2 * g32.report.target_valuation);
    CHECK(g32.report.all_verified);

    const auto g33 = gl_p_part_semichars(3, 3);
    CHECK(g33.report.domain_size == 729);
    CHECK(g33.report.independence_rank == 6);
    CHECK(g33.report.all_verified);

    CHECK_THROWS_AS(gl_p_part_semichars(3, 5), CapExceeded);
}

TEST_CASE("full suite for q up to 5") {
    for (std::int64_t q : {2, 3, 4, 5}) {
        const Gl2Suite suite = gl2_suite(q);
        INFO("q = " << q);
        CHECK(suite.all_bounds_met);
        REQUIRE(suite.exact.has_value());
        // |G| divides |Ghat|.
        CHECK(Factored::of(suite.order).divides(suite.exact->order));
        for (const auto& [l, rep] : suite.by_prime) {
            INFO("l = " << l);
            CHECK(rep.all_verified);
            // Constructions never overcount the exact valuation.
            CHECK(rep.claimed_lower_bound <= suite.exact->val(l));
            if (!(q == 3 && l == 2)) CHECK(rep.claimed_lower_bound >= rep.target_valuation);
        }
    }
}

TEST_CASE("suite pinpoints") {
    const Gl2Suite s4 = gl2_suite(4);
    REQUIRE(s4.by_prime.count(3));
    CHECK(s4.by_prime.at(3).claimed_lower_bound == 10); // val_3(q-1) * q(q+1)/2
    CHECK(s4.by_prime.at(3).target_valuation == 2);

    const Gl2Suite s5 = gl2_suite(5);
    REQUIRE(s5.by_prime.count(2));
    CHECK(s5.by_prime.at(2).claimed_lower_bound == 15); // (r-1) * q(q+1)/2 with r = 2
    CHECK(s5.by_prime.at(2).target_valuation == 5);
    REQUIRE(s5.by_prime.count(3));
    CHECK(s5.by_prime.at(3).claimed_lower_bound == 10); // cyclic Sylows, q(q-1)/2

    // q = 3, l = 2: the maximal-cyclic count (3) cannot reach val_2 = 4; the
    // exact computation covers the gap.
    const Gl2Suite s3 = gl2_suite(3);
    REQUIRE(s3.by_prime.count(2));
    CHECK(s3.by_prime.at(2).claimed_lower_bound == 3);
    CHECK(s3.by_prime.at(2).target_valuation == 4);
    REQUIRE(s3.exact.has_value());
    CHECK(s3.exact->val(2) >= 4);
    CHECK(s3.all_bounds_met);
}
