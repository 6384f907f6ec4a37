#include "semichar/engine.hpp"
#include "semichar/families.hpp"
#include "semichar/nullspace.hpp"
#include "semichar/smith.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace semichar;

namespace {

// Product of the first k invariant factors must equal the gcd of all k x k
// minors (the determinant-divisor characterization).
void check_against_minor_gcds(const IntMatrix& m) {
    const SmithForm s = smith_normal_form(m);
    const auto gcds = oracles::determinant_divisors(m, 6);
    cpp_int product = 1;
    for (std::size_t k = 0; k < gcds.size(); ++k) {
        if (k < s.invariant_factors.size()) {
            product *= s.invariant_factors[k];
            REQUIRE(product == gcds[k]);
        } else {
            REQUIRE(gcds[k] == 0);
        }
    }
}

IntMatrix random_matrix(std::mt19937_64& rng, int rows, int cols, int bound) {
    std::uniform_int_distribution<int> dist(-bound, bound);
    std::vector<std::int64_t> entries(static_cast<std::size_t>(rows) * cols);
    for (auto& e : entries) e = dist(rng);
    return IntMatrix::from_dense(rows, cols, entries);
}

} // namespace

TEST_CASE("smith normal form on pinned examples") {
    auto s = smith_normal_form(IntMatrix::from_dense(2, 2, {2, 0, 0, 3}));
    CHECK(s.invariant_factors == std::vector<cpp_int>{1, 6});

    s = smith_normal_form(IntMatrix::from_dense(3, 3, std::vector<std::int64_t>(9, 0)));
    CHECK(s.rank == 0);
    CHECK(s.invariant_factors.empty());

    const auto m = IntMatrix::from_dense(2, 2, {2, 4, 6, 8});
    s = smith_normal_form(m);
    CHECK(s.invariant_factors == std::vector<cpp_int>{2, 4});
    check_against_minor_gcds(m);

    s = smith_normal_form(IntMatrix(0, 0));
    CHECK(s.invariant_factors.empty());
}

TEST_CASE("determinant divisor oracle on random matrices") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const int rows = 1 + static_cast<int>(rng() % 6);
        const int cols = 1 + static_cast<int>(rng() % 6);
        check_against_minor_gcds(random_matrix(rng, rows, cols, 20));
    }
}

TEST_CASE("transforms multiply back to the diagonal") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        IntMatrix m(20, 20);
        for (int i = 0; i < 20; ++i) {
            SparseRow row;
            for (int j = 0; j < 20; ++j)
                if (rng() % 5 == 0) row.emplace_back(j, cpp_int(static_cast<int>(rng() % 19) - 9));
            m.set_row(i, std::move(row));
        }
        const SmithForm s = smith_normal_form(m, Transforms::both);
        REQUIRE(s.left);
        REQUIRE(s.right);
        const IntMatrix d = s.left->multiply(m).multiply(*s.right);
        for (int i = 0; i < 20; ++i)
            for (int j = 0; j < 20; ++j) {
                const cpp_int want =
                    (i == j && i < static_cast<int>(s.rank)) ? s.invariant_factors[i] : 0;
                REQUIRE(d.at(i, j) == want);
            }
        // Unimodular transforms.
        auto to_dense = [](const IntMatrix& x) {
            std::vector<std::vector<cpp_int>> out(x.rows(), std::vector<cpp_int>(x.cols(), 0));
            for (int i = 0; i < x.rows(); ++i)
                for (const auto& [c, v] : x.row(i)) out[i][c] = v;
            return out;
        };
        REQUIRE(abs(oracles::int_det(to_dense(*s.left))) == 1);
        REQUIRE(abs(oracles::int_det(to_dense(*s.right))) == 1);
    }
}

TEST_CASE("invariance under permutation and zero rows") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const int rows = 2 + static_cast<int>(rng() % 5);
        const int cols = 2 + static_cast<int>(rng() % 5);
        const IntMatrix m = random_matrix(rng, rows, cols, 12);
        const auto base = smith_normal_form(m).invariant_factors;

        std::vector<int> rperm(rows), cperm(cols);
        std::iota(rperm.begin(), rperm.end(), 0);
        std::iota(cperm.begin(), cperm.end(), 0);
        std::shuffle(rperm.begin(), rperm.end(), rng);
        std::shuffle(cperm.begin(), cperm.end(), rng);
        IntMatrix shuffled(rows + 2, cols); // also append two zero rows
        for (int i = 0; i < rows; ++i) {
            SparseRow row;
            for (const auto& [c, v] : m.row(rperm[i])) row.emplace_back(cperm[c], v);
            shuffled.set_row(i, std::move(row));
        }
        CHECK(smith_normal_form(shuffled).invariant_factors == base);
    }
}

TEST_CASE("nullspace mod p") {
    CHECK(nullspace_mod_p(IntMatrix::identity(4), 5).dimension == 0);

    const auto row = IntMatrix::from_dense(1, 3, {1, 1, 1});
    const auto ns = nullspace_mod_p(row, 2);
    CHECK(ns.dimension == 2);
    // Echelonized: each basis vector is 1 on its own free column.
    for (const auto& v : ns.basis) {
        std::int64_t dot = 0;
        for (auto x : v) dot += x;
        CHECK(dot % 2 == 0);
    }

    // Relation matrix of S3 mod 2: dimension 3. Independent count: functions
    // into {0, 1/2} additive on commuting pairs, enumerated directly.
    const auto s3 = make_symmetric(3);
    const RelationLattice lat = build_relations(s3.table);
    CHECK(nullspace_mod_p(lat.rows, 2).dimension == 3);
    int count = 0;
    for (int mask = 0; mask < 64; ++mask) {
        Semicharacter f;
        for (int x = 0; x < 6; ++x) f.values.push_back(Residue((mask >> x) & 1, 2));
        if (!verify_semicharacter(s3.table, f)) ++count;
    }
    CHECK(count == 8); // 2^3
}

TEST_CASE("quotient generators") {
    auto m = IntMatrix::from_dense(1, 1, {2});
    auto s = smith_normal_form(m, Transforms::right);
    auto gens = quotient_group_generators(m, s);
    REQUIRE(gens.size() == 1);
    CHECK(gens[0].second == 2);
    CHECK(gens[0].first[0] == Residue(1, 2));

    s = smith_normal_form(IntMatrix::identity(3), Transforms::right);
    CHECK(quotient_group_generators(IntMatrix::identity(3), s).empty());

    // Relation matrix of C6: a single generator of order 6 whose entries are
    // multiples of 1/6 and annihilate every lattice row.
    const auto c6 = make_cyclic(6);
    const RelationLattice lat = build_relations(c6.table);
    s = smith_normal_form(lat.rows, Transforms::right);
    gens = quotient_group_generators(lat.rows, s);
    REQUIRE(gens.size() == 1);
    CHECK(gens[0].second == 6);
    for (const auto& v : gens[0].first) CHECK(6 % v.den() == 0);
    for (int r = 0; r < lat.rows.rows(); ++r) {
        Residue acc;
        for (const auto& [c, coeff] : lat.rows.row(r))
            acc = acc + gens[0].first[c].times(static_cast<std::int64_t>(coeff));
        CHECK(acc.is_zero());
    }

    CHECK_THROWS_AS(quotient_group_generators(m, smith_normal_form(m)), InputError);
}
