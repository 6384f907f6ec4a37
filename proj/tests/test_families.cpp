#include "semichar/corpus.hpp"
#include "semichar/families.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>

using namespace semichar;

namespace {

std::map<std::int64_t, int> order_census(const GroupTable& t) {
    std::map<std::int64_t, int> census;
    for (int x = 0; x < t.order(); ++x) ++census[t.element_order(x)];
    return census;
}

void check_realization(const RealizedGroup& g) {
    if (g.order() <= 200) {
        for (int i = 0; i < g.order(); ++i)
            for (int j = 0; j < g.order(); ++j) REQUIRE(g.realized_mul(i, j) == g.table.mul(i, j));
    } else {
        std::mt19937_64 rng(42);
        for (int trial = 0; trial < 300; ++trial) {
            const int i = static_cast<int>(rng() % g.order());
            const int j = static_cast<int>(rng() % g.order());
            REQUIRE(g.realized_mul(i, j) == g.table.mul(i, j));
        }
    }
}

} // namespace

TEST_CASE("cyclic and abelian") {
    CHECK(make_cyclic(6).order() == 6);
    CHECK(make_cyclic(6).table.element_order(1) == 6);
    CHECK(make_abelian({2, 3}).abelian_factors == std::vector<std::int64_t>{6});
    CHECK(make_abelian({2, 4, 3}).abelian_factors == std::vector<std::int64_t>{2, 12});
    CHECK(make_abelian({2, 2}).abelian_factors == std::vector<std::int64_t>{2, 2});
    CHECK(invariant_factor_chain({8, 4, 9, 3, 5}) == std::vector<std::int64_t>{12, 360});
    CHECK_THROWS_AS(make_cyclic(5000), CapExceeded);
}

TEST_CASE("dihedral and dicyclic") {
    const auto d4 = make_dihedral(4);
    CHECK(d4.order() == 8);
    auto census = order_census(d4.table);
    CHECK(census[2] == 5);
    CHECK(census[4] == 2);

    const auto q8 = make_dicyclic(2);
    CHECK(q8.order() == 8);
    census = order_census(q8.table);
    CHECK(census[2] == 1);
    CHECK(census[4] == 6);

    const auto dic3 = make_dicyclic(3);
    CHECK(dic3.order() == 12);
}

TEST_CASE("symmetric and alternating") {
    const auto s3 = make_symmetric(3);
    CHECK(s3.order() == 6);
    CHECK(s3.table.identity() == 0); // lexicographically first
    const auto a4 = make_alternating(4);
    CHECK(a4.order() == 12);
    const auto s4 = make_symmetric(4);
    CHECK(s4.order() == 24);
    CHECK(order_census(s4.table)[2] == 9);
    check_realization(s3);
    check_realization(s4);
    CHECK_THROWS_AS(make_symmetric(8), CapExceeded);
}

TEST_CASE("matrix families") {
    CHECK(make_gl2(2).order() == 6);
    CHECK(make_gl2(3).order() == 48);
    CHECK(make_gl2(4).order() == 180);
    CHECK(make_heisenberg(3).order() == 27);
    CHECK(make_unitriangular(3, 5).order() == 125);
    CHECK(make_unitriangular(4, 2).order() == 64);
    CHECK(make_sl2(3).order() == 24);
    check_realization(make_gl2(3));
    check_realization(make_heisenberg(5));
    check_realization(make_gl2(4));   // exhaustive (|G| = 180)
    check_realization(make_gl2(5));   // sampled (|G| = 480)

    // Elements of order k for k > 2, k | q+1 number q(q-1)/2 * phi(k).
    for (std::int64_t q : {3, 4, 5}) {
        const auto g = make_gl2(q);
        const auto census = order_census(g.table);
        for (std::int64_t k = 3; k <= q + 1; ++k) {
            if ((q + 1) % k != 0) continue;
            const auto it = census.find(k);
            REQUIRE(it != census.end());
            CHECK(it->second == q * (q - 1) / 2 * euler_phi(k));
        }
    }
}

TEST_CASE("direct products") {
    const auto v4 = direct_product(make_cyclic(2), make_cyclic(2));
    CHECK(v4.order() == 4);
    for (int x = 0; x < 4; ++x) CHECK(v4.table.element_order(x) <= 2);

    const auto s3c2 = direct_product(make_symmetric(3), make_cyclic(2));
    CHECK(s3c2.order() == 12);
    CHECK(order_census(s3c2.table)[2] == 7);

    CHECK_THROWS_AS(direct_product(make_symmetric(6), make_symmetric(4)), CapExceeded);
}

TEST_CASE("closures") {
    const auto s3 = closure_from_generators({perm_parse("(1 2)"), perm_parse("(1 2 3)")});
    CHECK(s3.order() == 6);
    CHECK(s3.table.identity() == 0);

    auto F3 = std::make_shared<const FiniteField>(3, 1);
    MatrixFq shear(2, 2);
    shear.at(0, 0) = 1;
    shear.at(0, 1) = 1;
    shear.at(1, 1) = 1;
    CHECK(closure_from_generators(F3, {shear}).order() == 3);

    MatrixFq s(2, 2), t(2, 2);
    s.at(0, 1) = F3->neg(1);
    s.at(1, 0) = 1;
    t.at(0, 0) = 1;
    t.at(0, 1) = 1;
    t.at(1, 1) = 1;
    CHECK(closure_from_generators(F3, {s, t}).order() == 24); // SL(2,3)

    CHECK_THROWS_AS(closure_from_generators({perm_parse("(1 2 3 4 5 6 7)")}, 5), CapExceeded);
}

TEST_CASE("family registry") {
    CHECK(family_order("q8") == 8);
    CHECK(family_order("s6") == 720);
    CHECK(family_order("gl2q5") == 480);
    CHECK(family_order("s3xc2") == 12);
    CHECK(family_order("u3q5") == 125);
    CHECK(build_family("dic2").order() == 8);
    CHECK(build_family("c2xc4xc8").order() == 64);
    CHECK_THROWS_AS(build_family("nosuch"), InputError);
    CHECK_THROWS_AS(family_order("sx"), InputError);

    const auto corpus = builtin_corpus_names();
    CHECK(corpus.size() > 180);
    // Every corpus family builds at its declared order (spot check a stride).
    for (std::size_t i = 0; i < corpus.size(); i += 17) {
        if (family_order(corpus[i]) > 300) continue;
        CHECK(build_family(corpus[i]).order() == family_order(corpus[i]));
    }
}
