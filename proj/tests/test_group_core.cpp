#include "semichar/families.hpp"
#include "semichar/group_table.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <set>

using namespace semichar;

TEST_CASE("element orders") {
    const auto c6 = make_cyclic(6);
    CHECK(c6.table.element_order(1) == 6);
    CHECK(c6.table.element_order(c6.table.identity()) == 1);

    const auto s5 = make_symmetric(5);
    const int g = s5.index_of_perm(perm_parse("(1 2 3)(4 5)", 5));
    CHECK(s5.table.element_order(g) == 6);

    // Lagrange: every order divides |G|.
    for (const auto* grp : {&c6, &s5})
        for (int x = 0; x < grp->order(); ++x)
            CHECK(grp->order() % grp->table.element_order(x) == 0);
}

TEST_CASE("powers") {
    const auto c4 = make_cyclic(4);
    CHECK(c4.table.power(1, 0) == c4.table.identity());
    CHECK(c4.table.power(1, 4) == c4.table.identity());
    CHECK(c4.table.power(1, -1) == c4.table.power(1, 3));
    const auto s4 = make_symmetric(4);
    for (int x = 0; x < s4.order(); x += 5)
        CHECK(s4.table.power(x, s4.table.element_order(x)) == s4.table.identity());
}

TEST_CASE("commuting pair counts") {
    CHECK(make_cyclic(7).table.commuting_pair_count() == 49);
    CHECK(make_abelian({2, 4}).table.commuting_pair_count() == 64);
    CHECK(make_symmetric(3).table.commuting_pair_count() == 18);
    CHECK(make_dicyclic(2).table.commuting_pair_count() == 40);

    // Count equals the sum of centralizer sizes.
    for (const auto& g : {make_symmetric(4), make_dihedral(5)}) {
        std::int64_t centralizers = 0;
        for (int x = 0; x < g.order(); ++x)
            for (int y = 0; y < g.order(); ++y)
                if (g.table.commutes(x, y)) ++centralizers;
        CHECK(g.table.commuting_pair_count() == centralizers);
    }
}

TEST_CASE("l-part subsets") {
    const auto a4 = make_alternating(4);
    CHECK(l_part(a4.table, 2).members.size() == 4);

    const auto c6 = make_cyclic(6);
    const auto part3 = l_part(c6.table, 3);
    CHECK(part3.members == std::vector<int>{0, 2, 4});

    const auto s4 = make_symmetric(4);
    CHECK(l_part(s4.table, 2).members.size() == 16);

    // l not dividing |G|: only the identity.
    const auto part5 = l_part(s4.table, 5);
    REQUIRE(part5.members.size() == 1);
    CHECK(part5.members[0] == s4.table.identity());

    // Closure: identity present, closed under inverses and powers.
    for (std::int64_t l : {2, 3}) {
        const auto part = l_part(s4.table, l);
        std::set<int> members(part.members.begin(), part.members.end());
        CHECK(members.count(s4.table.identity()) == 1);
        for (int x : part.members) {
            CHECK(members.count(s4.table.inv(x)) == 1);
            for (std::int64_t k = 0; k <= 4; ++k)
                CHECK(members.count(s4.table.power(x, k)) == 1);
        }
    }

    // Membership matches the power criterion g^(l^ceil(log_l n)) = id.
    for (std::int64_t l : {2, 3}) {
        std::int64_t lk = 1;
        while (lk < s4.order()) lk *= l;
        const auto part = l_part(s4.table, l);
        std::set<int> members(part.members.begin(), part.members.end());
        for (int x = 0; x < s4.order(); ++x)
            CHECK(members.count(x) == (s4.table.power(x, lk) == s4.table.identity() ? 1 : 0));
    }
}

TEST_CASE("imported table validation") {
    // No inverse for element 1.
    CHECK_THROWS_AS(GroupTable::from_mul(2, {0, 1, 1, 1}), InputError);
    // Valid C2.
    const GroupTable c2 = GroupTable::from_mul(2, {0, 1, 1, 0});
    CHECK(c2.identity() == 0);
    CHECK(c2.inv(1) == 1);
    // Entry out of range.
    CHECK_THROWS_AS(GroupTable::from_mul(2, {0, 1, 1, 2}), InputError);
    // Latin square with identity and inverses but not associative:
    // this 5x5 quasigroup has mul(i,j) picked to break associativity.
    std::vector<int> mul = {
        0, 1, 2, 3, 4,
        1, 0, 3, 4, 2,
        2, 4, 0, 1, 3,
        3, 2, 4, 0, 1,
        4, 3, 1, 2, 0,
    };
    CHECK_THROWS_AS(GroupTable::from_mul(5, mul, std::nullopt, AssocCheck::always), InputError);
    // The same table passes when the check is disabled, by design.
    CHECK_NOTHROW(GroupTable::from_mul(5, mul, std::nullopt, AssocCheck::never));
}

TEST_CASE("associativity policy above the default cap") {
    const auto big = make_cyclic(520);
    std::string warning;
    const GroupTable t = GroupTable::from_mul(big.order(), big.table.mul_data(), std::nullopt,
                                              AssocCheck::automatic, &warning);
    CHECK(t.order() == 520);
    CHECK(warning.find("skipped") != std::string::npos);
}
