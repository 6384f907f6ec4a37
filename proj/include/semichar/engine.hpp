// The semicharacter engine: relation lattices over commuting pairs, exact
// computation of the semicharacter group, verification, and localization at
// a prime.
//
// A semicharacter is stored additively: one exact residue in Q/Z per element,
// with f(identity) = 0 and f(gh) = f(g) + f(h) whenever g and h commute. The
// multiplicative function into the unit circle is exp(2*pi*i*f) and is never
// evaluated in floating point.
#pragma once

#include "semichar/group_table.hpp"
#include "semichar/int_matrix.hpp"
#include "semichar/nullspace.hpp"
#include "semichar/numeric.hpp"
#include "semichar/smith.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace semichar {

struct EngineOptions {
    int snf_cap = 1500;        // largest group order for a full Smith form
    int transforms_cap = 1024; // largest order when generators are requested
    int torsion_cap = 6000;    // largest order for mod-l torsion ranks
};

struct Semicharacter {
    std::vector<Residue> values;

    bool is_trivial() const {
        for (const auto& v : values)
            if (!v.is_zero()) return false;
        return true;
    }

    // Order under pointwise addition: lcm of the value orders.
    std::int64_t order() const {
        std::int64_t o = 1;
        for (const auto& v : values) o = std::lcm(o, v.order());
        return o;
    }

    Semicharacter plus(const Semicharacter& other) const {
        Semicharacter out;
        out.values.reserve(values.size());
        for (std::size_t i = 0; i < values.size(); ++i)
            out.values.push_back(values[i] + other.values[i]);
        return out;
    }

    Semicharacter times(std::int64_t k) const {
        Semicharacter out;
        out.values.reserve(values.size());
        for (const auto& v : values) out.values.push_back(v.times(k));
        return out;
    }

    // The vector over F_l when every value is a multiple of 1/l after
    // scaling; values of order coprime to l contribute 0.
    std::vector<std::int64_t> fl_vector(std::int64_t l) const {
        std::vector<std::int64_t> out(values.size(), 0);
        for (std::size_t i = 0; i < values.size(); ++i) {
            const Residue& v = values[i];
            if (v.den() == l) out[i] = v.num();
            else if (v.den() != 1)
                throw InputError("value " + v.str() + " is not l-torsion for l = " + std::to_string(l));
        }
        return out;
    }
};

// Rank over F_l of a family of dense vectors; plain Gaussian elimination.
inline std::int64_t rank_mod_p(std::vector<std::vector<std::int64_t>> vectors, std::int64_t l) {
    std::int64_t rank = 0;
    std::size_t cols = 0;
    for (auto& v : vectors) {
        cols = std::max(cols, v.size());
        for (auto& x : v) x = ((x % l) + l) % l;
    }
    std::vector<std::vector<std::int64_t>> pivots;
    std::vector<std::size_t> pivot_cols;
    for (auto& v : vectors) {
        for (std::size_t t = 0; t < pivots.size(); ++t) {
            const std::int64_t c = v[pivot_cols[t]];
            if (c == 0) continue;
            for (std::size_t j = 0; j < cols; ++j)
                v[j] = ((v[j] - c * pivots[t][j]) % l + l) % l;
        }
        std::size_t lead = cols;
        for (std::size_t j = 0; j < cols; ++j)
            if (v[j] != 0) {
                lead = j;
                break;
            }
        if (lead == cols) continue;
        const std::int64_t inv = mod_inverse(v[lead], l);
        for (std::size_t j = 0; j < cols; ++j) v[j] = v[j] * inv % l;
        pivots.push_back(v);
        pivot_cols.push_back(lead);
        ++rank;
    }
    return rank;
}

// ---------------------------------------------------------------------------
// Relation lattice

struct RelationLattice {
    int n = 0;
    IntMatrix rows; // e_i + e_j - e_{ij} per ordered commuting pair, i-major
};

inline RelationLattice build_relations(const GroupTable& g) {
    RelationLattice out;
    out.n = g.order();
    IntMatrix m(0, g.order());
    g.commuting_pairs([&](int i, int j) {
        m.append_row({{i, cpp_int(1)}, {j, cpp_int(1)}, {g.mul(i, j), cpp_int(-1)}});
    });
    out.rows = std::move(m);
    return out;
}

// ---------------------------------------------------------------------------
// The semicharacter group

struct SemicharGroupDesc {
    std::int64_t source_order = 1;
    std::vector<std::int64_t> invariant_factors; // nontrivial only, ascending
    Factored order;                              // product of the factors

    std::int64_t val(std::int64_t l) const { return order.val(l); }
};

namespace detail {

inline SemicharGroupDesc desc_from_chain(std::int64_t source_order,
                                         const std::vector<cpp_int>& chain, int expected_rank) {
    if (static_cast<int>(chain.size()) != expected_rank)
        throw std::logic_error("relation lattice rank " + std::to_string(chain.size()) +
                               " != " + std::to_string(expected_rank) +
                               "; the quotient would have a free part");
    SemicharGroupDesc out;
    out.source_order = source_order;
    for (const auto& d : chain) {
        if (d == 1) continue;
        if (d > cpp_int(std::int64_t(1) << 62)) throw CapExceeded("invariant factor exceeds 2^62");
        const std::int64_t dd = static_cast<std::int64_t>(d);
        out.invariant_factors.push_back(dd);
        out.order.multiply_by(dd);
    }
    return out;
}

} // namespace detail

inline SemicharGroupDesc semichar_group(const GroupTable& g, const EngineOptions& opt = {}) {
    if (g.order() > opt.snf_cap)
        throw CapExceeded("semichar_group: order " + std::to_string(g.order()) +
                          " exceeds the Smith form cap " + std::to_string(opt.snf_cap) +
                          "; use l_torsion_rank or localized_semichar_group instead");
    const RelationLattice lat = build_relations(g);
    const SmithForm smith = smith_normal_form(lat.rows, Transforms::none);
    return detail::desc_from_chain(g.order(), smith.invariant_factors, g.order());
}

struct ValuationRow {
    std::int64_t prime = 2;
    std::int64_t val_group = 0;
    std::int64_t val_dual = 0;
};

struct ConjectureVerdict {
    bool holds = false;
    std::int64_t group_order = 1;
    SemicharGroupDesc dual;
    std::vector<ValuationRow> valuations; // one row per prime dividing |G| or |Ghat|
};

inline ConjectureVerdict conjecture_check(const GroupTable& g, const EngineOptions& opt = {}) {
    ConjectureVerdict out;
    out.group_order = g.order();
    out.dual = semichar_group(g, opt);
    const Factored group_f = Factored::of(g.order());
    std::map<std::int64_t, bool> primes;
    for (std::int64_t p : group_f.primes()) primes[p] = true;
    for (std::int64_t p : out.dual.order.primes()) primes[p] = true;
    out.holds = true;
    for (const auto& [p, unused] : primes) {
        ValuationRow row{p, group_f.val(p), out.dual.order.val(p)};
        if (row.val_dual < row.val_group) out.holds = false;
        out.valuations.push_back(row);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Verification

// Exhaustive check of f(gh) = f(g) + f(h) over all ordered commuting pairs.
// Returns the first violating pair, or nullopt on a pass.
inline std::optional<std::pair<int, int>> verify_semicharacter(const GroupTable& g,
                                                               const Semicharacter& f) {
    if (static_cast<int>(f.values.size()) != g.order())
        throw InputError("verify_semicharacter: value count does not match group order");
    std::optional<std::pair<int, int>> violation;
    for (int i = 0; i < g.order() && !violation; ++i)
        for (int j = 0; j < g.order(); ++j) {
            const int k = g.mul(i, j);
            if (g.mul(j, i) != k) continue;
            if (f.values[i] + f.values[j] != f.values[k]) {
                violation = {i, j};
                break;
            }
        }
    return violation;
}

// Full homomorphism check over all pairs, commuting or not. Returns a
// counterexample pair if one exists.
inline std::optional<std::pair<int, int>> verify_homomorphism(const GroupTable& g,
                                                              const Semicharacter& f) {
    for (int i = 0; i < g.order(); ++i)
        for (int j = 0; j < g.order(); ++j)
            if (f.values[i] + f.values[j] != f.values[g.mul(i, j)]) return {{i, j}};
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Multiplication domains for subsets (used by the l-part machinery)

// A finite partial-multiplication domain: elements 0..size-1 and the list of
// ordered commuting pairs whose product stays inside, as (i, j, product).
struct CommutingDomain {
    int size = 0;
    std::vector<std::int64_t> orders;
    std::vector<std::array<int, 3>> triples;
    std::vector<std::string> labels;

    std::optional<std::pair<int, int>> verify(const Semicharacter& f) const {
        if (static_cast<int>(f.values.size()) != size)
            throw InputError("domain verify: value count does not match domain size");
        for (const auto& [i, j, k] : triples)
            if (f.values[i] + f.values[j] != f.values[k]) return {{i, j}};
        return std::nullopt;
    }
};

// The domain of a subset closed under commuting products (e.g. G[l^inf]).
inline CommutingDomain domain_from_subset(const GroupTable& g, const std::vector<int>& members) {
    CommutingDomain d;
    d.size = static_cast<int>(members.size());
    std::map<int, int> index;
    for (int t = 0; t < d.size; ++t) index[members[t]] = t;
    for (int t = 0; t < d.size; ++t) {
        d.orders.push_back(g.element_order(members[t]));
        d.labels.push_back(g.label(members[t]));
    }
    for (int a = 0; a < d.size; ++a)
        for (int b = 0; b < d.size; ++b) {
            const int x = members[a], y = members[b];
            const int xy = g.mul(x, y);
            if (g.mul(y, x) != xy) continue;
            auto it = index.find(xy);
            if (it == index.end())
                throw std::logic_error("subset is not closed under commuting products");
            d.triples.push_back({a, b, it->second});
        }
    return d;
}

// ---------------------------------------------------------------------------
// Localization at a prime

// The semicharacter group of the subset G[l^inf] (functions multiplicative on
// commuting pairs inside the subset). By restriction this is the l-primary
// part of the full semicharacter group.
inline SemicharGroupDesc localized_semichar_group(const GroupTable& g, std::int64_t l,
                                                  const EngineOptions& opt = {}) {
    const LPartSubset part = l_part(g, l);
    const int m = static_cast<int>(part.members.size());
    if (m > opt.snf_cap)
        throw CapExceeded("localized_semichar_group: l-part size " + std::to_string(m) +
                          " exceeds the Smith form cap");
    std::map<int, int> index;
    for (int t = 0; t < m; ++t) index[part.members[t]] = t;
    IntMatrix rows(0, m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            const int x = part.members[a], y = part.members[b];
            const int xy = g.mul(x, y);
            if (g.mul(y, x) != xy) continue;
            auto it = index.find(xy);
            if (it == index.end())
                throw std::logic_error("product of commuting l-elements left the l-part");
            rows.append_row({{a, cpp_int(1)}, {b, cpp_int(1)}, {it->second, cpp_int(-1)}});
        }
    const SmithForm smith = smith_normal_form(rows, Transforms::none);
    SemicharGroupDesc desc = detail::desc_from_chain(g.order(), smith.invariant_factors, m);
    for (std::int64_t d : desc.invariant_factors)
        if (!is_power_of(d, l))
            throw std::logic_error("localized invariant factor " + std::to_string(d) +
                                   " is not a power of " + std::to_string(l));
    return desc;
}

// dim over F_l of the l-torsion of the semicharacter group, computed as the
// nullspace of the relation matrix mod l. Works far beyond the Smith cap.
inline std::int64_t l_torsion_rank(const GroupTable& g, std::int64_t l,
                                   const EngineOptions& opt = {}) {
    if (g.order() > opt.torsion_cap)
        throw CapExceeded("l_torsion_rank: order exceeds the torsion cap");
    const RelationLattice lat = build_relations(g);
    return nullspace_mod_p(lat.rows, l).dimension;
}

// Extension of a semicharacter of G[l^inf] to all of G: with |G| = m * l^a,
// l not dividing m, and b the inverse of m mod l^a, the extension is
// g -> b * f(g^m). Restricting it to the l-part gives back f.
inline Semicharacter extend_from_l_part(const GroupTable& g, std::int64_t l,
                                        const LPartSubset& part, const Semicharacter& f) {
    if (part.prime != l) throw InputError("extend_from_l_part: subset prime mismatch");
    if (f.values.size() != part.members.size())
        throw InputError("extend_from_l_part: value count does not match the l-part");
    const CommutingDomain dom = domain_from_subset(g, part.members);
    if (auto bad = dom.verify(f))
        throw InputError("extend_from_l_part: input is not multiplicative on the l-part "
                         "(first violation at subset pair " +
                         std::to_string(bad->first) + ", " + std::to_string(bad->second) + ")");
    const std::int64_t a = valuation(g.order(), l);
    Semicharacter out;
    out.values.assign(g.order(), Residue());
    if (a == 0) return out; // the l-part is {identity}; only the zero function extends
    const std::int64_t la = ipow(l, a);
    const std::int64_t m = g.order() / la;
    const std::int64_t b = mod_inverse(m % la, la);
    std::map<int, int> index;
    for (std::size_t t = 0; t < part.members.size(); ++t) index[part.members[t]] = static_cast<int>(t);
    for (int x = 0; x < g.order(); ++x) {
        const int xm = g.power(x, m);
        auto it = index.find(xm);
        if (it == index.end()) throw std::logic_error("g^m is not an l-element");
        out.values[x] = f.values[it->second].times(b);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Generator enumeration

struct SemicharGenerators {
    SemicharGroupDesc desc;
    std::vector<Semicharacter> generators; // one per nontrivial invariant factor
    std::vector<std::int64_t> orders;      // matching the invariant factors
};

inline SemicharGenerators enumerate_semichar_generators(const GroupTable& g,
                                                        const EngineOptions& opt = {}) {
    if (g.order() > opt.transforms_cap)
        throw CapExceeded("enumerate_semichar_generators: order " + std::to_string(g.order()) +
                          " exceeds the transforms cap " + std::to_string(opt.transforms_cap));
    const RelationLattice lat = build_relations(g);
    const SmithForm smith = smith_normal_form(lat.rows, Transforms::right);
    SemicharGenerators out;
    out.desc = detail::desc_from_chain(g.order(), smith.invariant_factors, g.order());
    for (auto& [vec, d] : quotient_group_generators(lat.rows, smith)) {
        Semicharacter f;
        f.values = std::move(vec);
        if (auto bad = verify_semicharacter(g, f))
            throw std::logic_error("generator fails verification at pair (" +
                                   std::to_string(bad->first) + ", " + std::to_string(bad->second) + ")");
        if (f.order() != d) throw std::logic_error("generator order mismatch");
        out.generators.push_back(std::move(f));
        out.orders.push_back(d);
    }
    // Independence at every prime: scaling each generator into its l-torsion
    // must stay full rank over F_l; then the generated group has order equal
    // to the product of the invariant factors.
    std::map<std::int64_t, int> expected;
    for (std::int64_t d : out.orders)
        for (std::int64_t p : Factored::of(d).primes()) expected[p] += 1;
    for (const auto& [p, count] : expected) {
        std::vector<std::vector<std::int64_t>> vecs;
        for (std::size_t i = 0; i < out.generators.size(); ++i) {
            if (out.orders[i] % p != 0) continue;
            vecs.push_back(out.generators[i].times(out.orders[i] / p).fl_vector(p));
        }
        if (rank_mod_p(vecs, p) != count)
            throw std::logic_error("generators are not independent at prime " + std::to_string(p));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Primary decomposition

struct PrimaryDecomposition {
    Factored global;
    std::map<std::int64_t, Factored> local_parts; // prime -> |dual of G[l^inf]|
    bool consistent = false;
};

inline PrimaryDecomposition primary_decomposition_check(const GroupTable& g,
                                                        const EngineOptions& opt = {}) {
    PrimaryDecomposition out;
    out.global = semichar_group(g, opt).order;
    Factored product;
    out.consistent = true;
    for (std::int64_t l : Factored::of(g.order()).primes()) {
        const Factored part = localized_semichar_group(g, l, opt).order;
        product.multiply_by(part);
        if (part.val(l) != out.global.val(l)) out.consistent = false;
        out.local_parts[l] = part;
    }
    if (!(product == out.global)) out.consistent = false;
    return out;
}

} // namespace semichar
