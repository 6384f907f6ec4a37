// Constructors for the group families the toolkit analyzes. Each returns a
// RealizedGroup: a multiplication table plus, where the constructions need
// it, a per-element realization as a permutation or a matrix over a finite
// field. Element orderings are deterministic (documented per constructor) so
// tables are reproducible across runs.
#pragma once

#include "semichar/group_table.hpp"
#include "semichar/matrix_fq.hpp"
#include "semichar/numeric.hpp"
#include "semichar/permutation.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace semichar {

constexpr int kDefaultOrderCap = 2048;

enum class RealizationKind { abstract_table, permutation, matrix };

struct RealizedGroup {
    GroupTable table;
    std::string family;
    RealizationKind kind = RealizationKind::abstract_table;

    RealizedGroup() = default;
    RealizedGroup(GroupTable t, std::string fam) : table(std::move(t)), family(std::move(fam)) {}

    std::vector<Permutation> perms; // kind == permutation
    std::shared_ptr<const FiniteField> field;
    std::vector<MatrixFq> mats;     // kind == matrix

    std::vector<int> generators;              // indices of a generating set, if known
    std::vector<std::int64_t> abelian_factors; // invariant factors, abelian constructors only

    int order() const { return table.order(); }

    int index_of_perm(const Permutation& p) const {
        auto it = perm_index_.find(p.images());
        if (it == perm_index_.end()) throw InputError("permutation not in group");
        return it->second;
    }

    int index_of_mat(const MatrixFq& m) const {
        auto it = mat_index_.find(m.entries);
        if (it == mat_index_.end()) throw InputError("matrix not in group");
        return it->second;
    }

    // Product of two elements computed through the realization, not the
    // table; used to cross-check that the two agree.
    int realized_mul(int i, int j) const {
        switch (kind) {
            case RealizationKind::permutation:
                return index_of_perm(perms[i] * perms[j]);
            case RealizationKind::matrix:
                return index_of_mat(mat_mul(*field, mats[i], mats[j]));
            default:
                return table.mul(i, j);
        }
    }

    void finalize_indexes() {
        if (kind == RealizationKind::permutation) {
            for (std::size_t i = 0; i < perms.size(); ++i)
                perm_index_[perms[i].images()] = static_cast<int>(i);
        } else if (kind == RealizationKind::matrix) {
            for (std::size_t i = 0; i < mats.size(); ++i)
                mat_index_[mats[i].entries] = static_cast<int>(i);
        }
    }

private:
    std::map<std::vector<int>, int> perm_index_;
    std::map<std::vector<int>, int> mat_index_;
};

namespace detail {

inline void check_cap(std::int64_t order, int cap, const std::string& what) {
    if (order > cap)
        throw CapExceeded(what + ": order " + std::to_string(order) + " exceeds cap " +
                          std::to_string(cap));
}

inline GroupTable table_from_op(int n, const std::vector<std::string>* labels,
                                const std::function<int(int, int)>& op) {
    std::vector<int> mul(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) mul[static_cast<std::size_t>(i) * n + j] = op(i, j);
    std::optional<std::vector<std::string>> lab;
    if (labels) lab = *labels;
    return GroupTable::trusted(n, std::move(mul), std::move(lab));
}

} // namespace detail

// The divisibility-chain form d_1 | d_2 | ... of a product of cyclic groups.
inline std::vector<std::int64_t> invariant_factor_chain(std::vector<std::int64_t> factors) {
    std::map<std::int64_t, std::vector<std::int64_t>> powers; // prime -> descending exponents
    for (std::int64_t f : factors) {
        if (f < 1) throw InputError("cyclic factor must be >= 1");
        const Factored fac = Factored::of(f);
        for (const auto& [p, e] : fac.exponents()) powers[p].push_back(e);
    }
    std::size_t depth = 0;
    for (auto& [p, es] : powers) {
        std::sort(es.rbegin(), es.rend());
        depth = std::max(depth, es.size());
    }
    std::vector<std::int64_t> chain;
    for (std::size_t i = 0; i < depth; ++i) {
        std::int64_t d = 1;
        for (const auto& [p, es] : powers)
            if (i < es.size()) d *= ipow(p, es[i]);
        chain.push_back(d);
    }
    std::reverse(chain.begin(), chain.end()); // ascending: d_1 | d_2 | ...
    return chain;
}

inline RealizedGroup make_cyclic(std::int64_t n, int cap = kDefaultOrderCap) {
    if (n < 1) throw InputError("make_cyclic: n must be >= 1");
    detail::check_cap(n, cap, "make_cyclic");
    const int nn = static_cast<int>(n);
    RealizedGroup g{detail::table_from_op(nn, nullptr,
                                          [nn](int i, int j) { return (i + j) % nn; }),
                    "c" + std::to_string(n)};
    if (n > 1) g.generators = {1};
    g.abelian_factors = n > 1 ? std::vector<std::int64_t>{n} : std::vector<std::int64_t>{};
    g.finalize_indexes();
    return g;
}

// Direct product of cyclic groups of the given orders, elements in mixed
// radix with the first factor varying slowest.
inline RealizedGroup make_abelian(const std::vector<std::int64_t>& factors,
                                  int cap = kDefaultOrderCap) {
    std::int64_t order = 1;
    for (std::int64_t f : factors) {
        if (f < 1) throw InputError("make_abelian: factors must be >= 1");
        order *= f;
        detail::check_cap(order, cap, "make_abelian");
    }
    const int n = static_cast<int>(order);
    const int k = static_cast<int>(factors.size());
    auto op = [&](int i, int j) {
        int out = 0;
        for (int t = 0; t < k; ++t) {
            std::int64_t radix = 1;
            for (int s = t + 1; s < k; ++s) radix *= factors[s];
            const int a = static_cast<int>((i / radix) % factors[t]);
            const int b = static_cast<int>((j / radix) % factors[t]);
            out += static_cast<int>(((a + b) % factors[t]) * radix);
        }
        return out;
    };
    std::string name;
    for (std::size_t t = 0; t < factors.size(); ++t) {
        if (t) name += "x";
        name += "c" + std::to_string(factors[t]);
    }
    if (name.empty()) name = "c1";
    RealizedGroup g{detail::table_from_op(n, nullptr, op), name};
    g.abelian_factors = invariant_factor_chain(factors);
    std::int64_t radix = 1;
    for (int t = k - 1; t >= 0; --t) {
        if (factors[t] > 1) g.generators.push_back(static_cast<int>(radix));
        radix *= factors[t];
    }
    std::sort(g.generators.begin(), g.generators.end());
    g.finalize_indexes();
    return g;
}

// Dihedral group of order 2n: indices [0, n) are rotations r^i, indices
// [n, 2n) are reflections r^i s.
inline RealizedGroup make_dihedral(std::int64_t n, int cap = kDefaultOrderCap) {
    if (n < 1) throw InputError("make_dihedral: n must be >= 1");
    detail::check_cap(2 * n, cap, "make_dihedral");
    const int nn = static_cast<int>(n);
    auto op = [nn](int x, int y) {
        const bool xr = x >= nn, yr = y >= nn;
        const int i = xr ? x - nn : x, j = yr ? y - nn : y;
        if (!xr && !yr) return (i + j) % nn;
        if (!xr && yr) return nn + (i + j) % nn;
        if (xr && !yr) return nn + ((i - j) % nn + nn) % nn;
        return ((i - j) % nn + nn) % nn;
    };
    RealizedGroup g{detail::table_from_op(2 * nn, nullptr, op), "d" + std::to_string(n)};
    g.generators = n > 1 ? std::vector<int>{1, nn} : std::vector<int>{nn};
    g.finalize_indexes();
    return g;
}

// Dicyclic group of order 4n: indices [0, 2n) are a^i, [2n, 4n) are a^i b,
// with b^2 = a^n and b a b^-1 = a^-1. n = 2 gives the quaternion group.
inline RealizedGroup make_dicyclic(std::int64_t n, int cap = kDefaultOrderCap) {
    if (n < 1) throw InputError("make_dicyclic: n must be >= 1");
    detail::check_cap(4 * n, cap, "make_dicyclic");
    const int m = static_cast<int>(2 * n);
    auto op = [m, n](int x, int y) {
        const bool xb = x >= m, yb = y >= m;
        const int i = xb ? x - m : x, j = yb ? y - m : y;
        if (!xb && !yb) return (i + j) % m;
        if (!xb && yb) return m + (i + j) % m;
        if (xb && !yb) return m + ((i - j) % m + m) % m;
        return static_cast<int>((((i - j + n) % m) + m) % m);
    };
    RealizedGroup g{detail::table_from_op(2 * m, nullptr, op), "dic" + std::to_string(n)};
    g.generators = {1, m};
    g.finalize_indexes();
    return g;
}

namespace detail {

inline RealizedGroup from_perms(std::vector<Permutation> perms, std::string family) {
    const int n = static_cast<int>(perms.size());
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < n; ++i) index[perms[i].images()] = i;
    std::vector<int> mul(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            mul[static_cast<std::size_t>(i) * n + j] = index.at((perms[i] * perms[j]).images());
    std::vector<std::string> labels;
    labels.reserve(n);
    for (const auto& p : perms) labels.push_back(perm_print(p));
    RealizedGroup g{GroupTable::trusted(n, std::move(mul), std::move(labels)), std::move(family)};
    g.kind = RealizationKind::permutation;
    g.perms = std::move(perms);
    g.finalize_indexes();
    return g;
}

inline RealizedGroup from_mats(std::shared_ptr<const FiniteField> F, std::vector<MatrixFq> mats,
                               std::string family) {
    const int n = static_cast<int>(mats.size());
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < n; ++i) index[mats[i].entries] = i;
    std::vector<int> mul(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            mul[static_cast<std::size_t>(i) * n + j] = index.at(mat_mul(*F, mats[i], mats[j]).entries);
    RealizedGroup g{GroupTable::trusted(n, std::move(mul)), std::move(family)};
    g.kind = RealizationKind::matrix;
    g.field = std::move(F);
    g.mats = std::move(mats);
    g.finalize_indexes();
    return g;
}

} // namespace detail

// Symmetric group on n points, elements enumerated in lexicographic one-line
// order (so the identity has index 0). Full tables stop at n = 7.
inline RealizedGroup make_symmetric(int n) {
    if (n < 1) throw InputError("make_symmetric: n must be >= 1");
    if (n > 7)
        throw CapExceeded("make_symmetric: full table capped at n = 7 (5040 elements); "
                          "larger n only through l-part constructions");
    std::vector<Permutation> perms;
    std::vector<int> images(n);
    std::iota(images.begin(), images.end(), 0);
    do {
        perms.emplace_back(images);
    } while (std::next_permutation(images.begin(), images.end()));
    RealizedGroup g = detail::from_perms(std::move(perms), "s" + std::to_string(n));
    if (n >= 2) {
        std::vector<int> cyc(n);
        for (int i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
        std::vector<int> swap01(n);
        std::iota(swap01.begin(), swap01.end(), 0);
        std::swap(swap01[0], swap01[1]);
        g.generators = {g.index_of_perm(Permutation(swap01))};
        if (n >= 3) g.generators.push_back(g.index_of_perm(Permutation(cyc)));
    }
    return g;
}

// Alternating group on n points, even permutations in lexicographic order.
inline RealizedGroup make_alternating(int n) {
    if (n < 1) throw InputError("make_alternating: n must be >= 1");
    if (n > 7)
        throw CapExceeded("make_alternating: full table capped at n = 7; "
                          "larger n only through l-part constructions");
    std::vector<Permutation> perms;
    std::vector<int> images(n);
    std::iota(images.begin(), images.end(), 0);
    do {
        Permutation p(images);
        if (p.is_even()) perms.push_back(std::move(p));
    } while (std::next_permutation(images.begin(), images.end()));
    RealizedGroup g = detail::from_perms(std::move(perms), "a" + std::to_string(n));
    if (n >= 3) {
        g.generators = {g.index_of_perm(perm_parse("(1 2 3)", n))};
        if (n >= 4) {
            // (1 ... n) for odd n, (2 ... n) for even n.
            std::string cyc = "(";
            for (int i = n % 2 == 1 ? 1 : 2; i <= n; ++i) {
                if (cyc.size() > 1) cyc += ' ';
                cyc += std::to_string(i);
            }
            cyc += ')';
            g.generators.push_back(g.index_of_perm(perm_parse(cyc, n)));
        }
    }
    return g;
}

namespace detail {

inline std::pair<std::int64_t, int> prime_power_split(std::int64_t q) {
    for (std::int64_t p = 2; p * p <= q; ++p) {
        if (q % p == 0) {
            int e = 0;
            std::int64_t r = q;
            while (r % p == 0) {
                r /= p;
                ++e;
            }
            if (r != 1) throw InputError("q = " + std::to_string(q) + " is not a prime power");
            return {p, e};
        }
    }
    return {q, 1};
}

// All dim x dim matrices over F passing the filter, in lexicographic order
// of their row-major entry codes.
template <typename Filter>
std::vector<MatrixFq> enumerate_matrices(const FiniteField& F, int dim, Filter&& keep) {
    std::vector<MatrixFq> out;
    MatrixFq m(dim, dim);
    const int cells = dim * dim;
    std::vector<int> code(cells, 0);
    while (true) {
        m.entries = code;
        if (keep(m)) out.push_back(m);
        int i = cells - 1;
        while (i >= 0 && code[i] == F.q() - 1) code[i--] = 0;
        if (i < 0) break;
        ++code[i];
    }
    return out;
}

} // namespace detail

// GL(2, q), all invertible 2x2 matrices in lexicographic entry order.
inline RealizedGroup make_gl2(std::int64_t q, int cap = kDefaultOrderCap) {
    const auto [p, e] = detail::prime_power_split(q);
    const std::int64_t order = (q * q - 1) * (q * q - q);
    detail::check_cap(order, cap, "make_gl2");
    auto F = std::make_shared<const FiniteField>(p, e);
    auto mats = detail::enumerate_matrices(*F, 2, [&](const MatrixFq& m) { return mat_det(*F, m) != 0; });
    return detail::from_mats(std::move(F), std::move(mats), "gl2q" + std::to_string(q));
}

// SL(2, q): determinant-one subgroup, same enumeration order.
inline RealizedGroup make_sl2(std::int64_t q, int cap = kDefaultOrderCap) {
    const auto [p, e] = detail::prime_power_split(q);
    const std::int64_t order = q * (q * q - 1);
    detail::check_cap(order, cap, "make_sl2");
    auto F = std::make_shared<const FiniteField>(p, e);
    auto mats = detail::enumerate_matrices(*F, 2, [&](const MatrixFq& m) { return mat_det(*F, m) == F.get()->one(); });
    return detail::from_mats(std::move(F), std::move(mats), "sl2q" + std::to_string(q));
}

// Upper triangular unipotent n x n matrices over GF(q), order q^{n(n-1)/2}.
// Elements enumerate the strictly-upper entries (row-major position order)
// lexicographically, so the identity has index 0.
inline RealizedGroup make_unitriangular(int dim, std::int64_t q, int cap = kDefaultOrderCap,
                                        std::string family = "") {
    if (dim < 2 || dim > 6) throw InputError("make_unitriangular: dimension must be in [2, 6]");
    const auto [p, e] = detail::prime_power_split(q);
    std::int64_t order = 1;
    for (int i = 0; i < dim * (dim - 1) / 2; ++i) {
        order *= q;
        detail::check_cap(order, cap, "make_unitriangular");
    }
    auto F = std::make_shared<const FiniteField>(p, e);
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) slots.emplace_back(i, j);
    std::vector<MatrixFq> mats;
    std::vector<int> code(slots.size(), 0);
    while (true) {
        MatrixFq m = MatrixFq::identity(*F, dim);
        for (std::size_t t = 0; t < slots.size(); ++t) m.at(slots[t].first, slots[t].second) = code[t];
        mats.push_back(std::move(m));
        int i = static_cast<int>(slots.size()) - 1;
        while (i >= 0 && code[i] == F->q() - 1) code[i--] = 0;
        if (i < 0) break;
        ++code[i];
    }
    if (family.empty()) family = "u" + std::to_string(dim) + "q" + std::to_string(q);
    return detail::from_mats(std::move(F), std::move(mats), std::move(family));
}

// Heisenberg group over GF(q): unitriangular 3 x 3, order q^3.
inline RealizedGroup make_heisenberg(std::int64_t q, int cap = kDefaultOrderCap) {
    return make_unitriangular(3, q, cap, "heis" + std::to_string(q));
}

// Componentwise product; realization is dropped (the constructions in this
// toolkit never need realized products).
inline RealizedGroup direct_product(const RealizedGroup& a, const RealizedGroup& b,
                                    int cap = kDefaultOrderCap) {
    const std::int64_t order = static_cast<std::int64_t>(a.order()) * b.order();
    detail::check_cap(order, cap, "direct_product");
    const int nb = b.order();
    auto op = [&](int x, int y) {
        const int xa = x / nb, xb = x % nb;
        const int ya = y / nb, yb = y % nb;
        return a.table.mul(xa, ya) * nb + b.table.mul(xb, yb);
    };
    RealizedGroup g{detail::table_from_op(static_cast<int>(order), nullptr, op),
                    a.family + "x" + b.family};
    if (!a.generators.empty() || !b.generators.empty()) {
        for (int ga : a.generators) g.generators.push_back(ga * nb + b.table.identity());
        for (int gb : b.generators) g.generators.push_back(a.table.identity() * nb + gb);
        std::sort(g.generators.begin(), g.generators.end());
        g.generators.erase(std::unique(g.generators.begin(), g.generators.end()),
                           g.generators.end());
    }
    if (!a.abelian_factors.empty() || !b.abelian_factors.empty()) {
        if ((a.abelian_factors.empty() && a.order() > 1) ||
            (b.abelian_factors.empty() && b.order() > 1)) {
            // one side is not known abelian; leave metadata empty
        } else {
            std::vector<std::int64_t> fs = a.abelian_factors;
            fs.insert(fs.end(), b.abelian_factors.begin(), b.abelian_factors.end());
            g.abelian_factors = invariant_factor_chain(fs);
        }
    }
    g.finalize_indexes();
    return g;
}

// Breadth-first closure of permutation generators. Element order is
// deterministic: identity first, then discovery order (queue order, scanning
// generators in the order given).
inline RealizedGroup closure_from_generators(const std::vector<Permutation>& gens,
                                             int cap = kDefaultOrderCap,
                                             std::string family = "closure") {
    if (gens.empty()) throw InputError("closure_from_generators: need at least one generator");
    int degree = 0;
    for (const auto& g : gens) degree = std::max(degree, g.degree());
    std::vector<Permutation> padded;
    for (const auto& g : gens) {
        std::vector<int> im(degree);
        std::iota(im.begin(), im.end(), 0);
        for (int x = 0; x < g.degree(); ++x) im[x] = g(x);
        padded.emplace_back(std::move(im));
    }
    std::vector<Permutation> elems{Permutation::identity(degree)};
    std::map<std::vector<int>, int> seen{{elems[0].images(), 0}};
    for (std::size_t head = 0; head < elems.size(); ++head) {
        for (const auto& g : padded) {
            Permutation next = elems[head] * g;
            if (seen.emplace(next.images(), static_cast<int>(elems.size())).second) {
                if (static_cast<int>(elems.size()) >= cap)
                    throw CapExceeded("closure_from_generators: closure exceeds cap " +
                                      std::to_string(cap));
                elems.push_back(std::move(next));
            }
        }
    }
    RealizedGroup g = detail::from_perms(std::move(elems), std::move(family));
    for (const auto& gen : padded) g.generators.push_back(g.index_of_perm(gen));
    std::sort(g.generators.begin(), g.generators.end());
    g.generators.erase(std::unique(g.generators.begin(), g.generators.end()), g.generators.end());
    return g;
}

inline RealizedGroup closure_from_generators(std::shared_ptr<const FiniteField> F,
                                             const std::vector<MatrixFq>& gens,
                                             int cap = kDefaultOrderCap,
                                             std::string family = "closure") {
    if (gens.empty()) throw InputError("closure_from_generators: need at least one generator");
    const int dim = gens.front().rows;
    for (const auto& g : gens) {
        if (g.rows != dim || g.cols != dim)
            throw InputError("closure_from_generators: generators must share one dimension");
        if (mat_det(*F, g) == 0) throw InputError("closure_from_generators: singular generator");
    }
    std::vector<MatrixFq> elems{MatrixFq::identity(*F, dim)};
    std::map<std::vector<int>, int> seen{{elems[0].entries, 0}};
    for (std::size_t head = 0; head < elems.size(); ++head) {
        for (const auto& g : gens) {
            MatrixFq next = mat_mul(*F, elems[head], g);
            if (seen.emplace(next.entries, static_cast<int>(elems.size())).second) {
                if (static_cast<int>(elems.size()) >= cap)
                    throw CapExceeded("closure_from_generators: closure exceeds cap " +
                                      std::to_string(cap));
                elems.push_back(std::move(next));
            }
        }
    }
    RealizedGroup g = detail::from_mats(std::move(F), std::move(elems), std::move(family));
    for (const auto& gen : gens) g.generators.push_back(g.index_of_mat(gen));
    std::sort(g.generators.begin(), g.generators.end());
    g.generators.erase(std::unique(g.generators.begin(), g.generators.end()), g.generators.end());
    return g;
}

// A small generating set found greedily in index order; used when exporting
// a realized group in generator form.
inline std::vector<int> greedy_generators(const GroupTable& t) {
    std::vector<int> gens;
    std::vector<char> reached(t.order(), 0);
    reached[t.identity()] = 1;
    int reached_count = 1;
    auto close_over = [&](int start) {
        std::vector<int> queue{start};
        while (!queue.empty()) {
            const int x = queue.back();
            queue.pop_back();
            for (int g : gens) {
                for (int y : {t.mul(x, g), t.mul(g, x)}) {
                    if (!reached[y]) {
                        reached[y] = 1;
                        ++reached_count;
                        queue.push_back(y);
                    }
                }
            }
        }
    };
    for (int x = 0; x < t.order() && reached_count < t.order(); ++x) {
        if (reached[x]) continue;
        gens.push_back(x);
        // Re-close from every reached element with the enlarged set.
        std::vector<int> seeds;
        for (int y = 0; y < t.order(); ++y)
            if (reached[y]) seeds.push_back(y);
        for (int s : seeds) close_over(s);
    }
    return gens;
}

} // namespace semichar
