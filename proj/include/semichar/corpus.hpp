// Family names, the parser that turns them into groups, and the builtin
// verification corpus.
//
// Family grammar (atoms joined by 'x' for direct products):
//   c<n>       cyclic of order n
//   d<n>       dihedral of order 2n
//   dic<n>     dicyclic of order 4n (dic2 = q8)
//   q8         quaternion group
//   s<n>, a<n> symmetric / alternating on n points (full tables up to n = 7)
//   heis<q>    Heisenberg group over GF(q), order q^3
//   u<n>q<q>   unitriangular n x n over GF(q)
//   gl2q<q>    GL(2, q)
//   sl2q<q>    SL(2, q)
#pragma once

#include "semichar/families.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace semichar {

namespace detail {

inline bool parse_int_suffix(const std::string& s, std::size_t pos, std::int64_t& out) {
    if (pos >= s.size()) return false;
    std::int64_t v = 0;
    for (std::size_t i = pos; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
        v = v * 10 + (s[i] - '0');
        if (v > 100'000'000) return false;
    }
    out = v;
    return true;
}

} // namespace detail

// Order of the named atom without building it; throws InputError on an
// unknown name. Used to refuse infeasible requests cheaply.
inline std::int64_t family_atom_order(const std::string& name) {
    std::int64_t v = 0;
    if (name == "q8") return 8;
    if (name.rfind("dic", 0) == 0 && detail::parse_int_suffix(name, 3, v)) return 4 * v;
    if (name.rfind("heis", 0) == 0 && detail::parse_int_suffix(name, 4, v)) return v * v * v;
    if (name.rfind("gl2q", 0) == 0 && detail::parse_int_suffix(name, 4, v))
        return (v * v - 1) * (v * v - v);
    if (name.rfind("sl2q", 0) == 0 && detail::parse_int_suffix(name, 4, v)) return v * (v * v - 1);
    if (name.size() >= 4 && name[0] == 'u' && name[1] >= '2' && name[1] <= '6' && name[2] == 'q' &&
        detail::parse_int_suffix(name, 3, v)) {
        const int dim = name[1] - '0';
        std::int64_t order = 1;
        for (int i = 0; i < dim * (dim - 1) / 2; ++i) order *= v;
        return order;
    }
    if (name.size() >= 2) {
        switch (name[0]) {
            case 'c':
                if (detail::parse_int_suffix(name, 1, v)) return v;
                break;
            case 'd':
                if (detail::parse_int_suffix(name, 1, v)) return 2 * v;
                break;
            case 's':
                if (detail::parse_int_suffix(name, 1, v)) return factorial(v);
                break;
            case 'a':
                if (detail::parse_int_suffix(name, 1, v)) return v <= 2 ? 1 : factorial(v) / 2;
                break;
            default:
                break;
        }
    }
    throw InputError("unknown family atom '" + name + "'");
}

inline RealizedGroup build_family_atom(const std::string& name, int cap = kDefaultOrderCap) {
    std::int64_t v = 0;
    if (name == "q8") return make_dicyclic(2, cap);
    if (name.rfind("dic", 0) == 0 && detail::parse_int_suffix(name, 3, v))
        return make_dicyclic(v, cap);
    if (name.rfind("heis", 0) == 0 && detail::parse_int_suffix(name, 4, v))
        return make_heisenberg(v, cap);
    if (name.rfind("gl2q", 0) == 0 && detail::parse_int_suffix(name, 4, v)) return make_gl2(v, cap);
    if (name.rfind("sl2q", 0) == 0 && detail::parse_int_suffix(name, 4, v)) return make_sl2(v, cap);
    if (name.size() >= 4 && name[0] == 'u' && name[1] >= '2' && name[1] <= '6' && name[2] == 'q' &&
        detail::parse_int_suffix(name, 3, v))
        return make_unitriangular(name[1] - '0', v, cap);
    if (name.size() >= 2) {
        switch (name[0]) {
            case 'c':
                if (detail::parse_int_suffix(name, 1, v)) return make_cyclic(v, cap);
                break;
            case 'd':
                if (detail::parse_int_suffix(name, 1, v)) return make_dihedral(v, cap);
                break;
            case 's':
                if (detail::parse_int_suffix(name, 1, v)) return make_symmetric(static_cast<int>(v));
                break;
            case 'a':
                if (detail::parse_int_suffix(name, 1, v)) return make_alternating(static_cast<int>(v));
                break;
            default:
                break;
        }
    }
    throw InputError("unknown family atom '" + name + "'");
}

inline std::vector<std::string> split_family(const std::string& name) {
    std::vector<std::string> atoms;
    std::string cur;
    for (char ch : name) {
        if (ch == 'x') {
            if (cur.empty()) throw InputError("malformed family name '" + name + "'");
            atoms.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (cur.empty()) throw InputError("malformed family name '" + name + "'");
    atoms.push_back(cur);
    return atoms;
}

inline std::int64_t family_order(const std::string& name) {
    std::int64_t order = 1;
    for (const auto& atom : split_family(name)) order *= family_atom_order(atom);
    return order;
}

// Builds "atom[xatom...]" as an iterated direct product.
inline RealizedGroup build_family(const std::string& name, int cap = kDefaultOrderCap) {
    const auto atoms = split_family(name);
    RealizedGroup g = build_family_atom(atoms[0], cap);
    for (std::size_t i = 1; i < atoms.size(); ++i)
        g = direct_product(g, build_family_atom(atoms[i], cap), cap);
    g.family = name;
    return g;
}

// The builtin verification corpus: every abelian isomorphism type of order
// <= 64, dihedral and dicyclic groups up to order 64, S_n and A_n up to
// n = 6, the matrix families at desk-scale parameters, and a few direct
// products. Deterministic order.
inline std::vector<std::string> builtin_corpus_names() {
    std::vector<std::string> names;
    // Abelian types: for each order, one name per multiset of prime-power
    // cyclic factors.
    for (int m = 1; m <= 64; ++m) {
        std::vector<std::vector<std::int64_t>> types{{}};
        const Factored fac = Factored::of(m);
        for (const auto& [p, e] : fac.exponents()) {
            // partitions of e, descending parts
            std::vector<std::vector<int>> parts;
            std::vector<int> cur;
            std::function<void(int, int)> rec = [&](int left, int maxpart) {
                if (left == 0) {
                    parts.push_back(cur);
                    return;
                }
                for (int next = std::min(left, maxpart); next >= 1; --next) {
                    cur.push_back(next);
                    rec(left - next, next);
                    cur.pop_back();
                }
            };
            rec(static_cast<int>(e), static_cast<int>(e));
            std::vector<std::vector<std::int64_t>> grown;
            for (const auto& base : types)
                for (const auto& part : parts) {
                    auto t = base;
                    for (int exp : part) t.push_back(ipow(p, exp));
                    grown.push_back(std::move(t));
                }
            types = std::move(grown);
        }
        for (auto& t : types) {
            std::sort(t.begin(), t.end());
            std::string name;
            if (t.empty()) name = "c1";
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (i) name += "x";
                name += "c" + std::to_string(t[i]);
            }
            names.push_back(std::move(name));
        }
    }
    for (int n = 3; n <= 32; ++n) names.push_back("d" + std::to_string(n));
    for (int n = 2; n <= 16; ++n) names.push_back("dic" + std::to_string(n));
    for (int n = 3; n <= 6; ++n) names.push_back("s" + std::to_string(n));
    for (int n = 4; n <= 6; ++n) names.push_back("a" + std::to_string(n));
    names.insert(names.end(), {"heis3", "heis5", "u3q3", "u3q5", "gl2q2", "gl2q3", "gl2q4",
                               "gl2q5", "sl2q3", "s3xc2", "s3xc4", "s3xs3", "a4xc2", "q8xc3",
                               "d4xc2", "s4xc2"});
    return names;
}

} // namespace semichar
