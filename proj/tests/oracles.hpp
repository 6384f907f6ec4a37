// Test-only oracles, independent of the implementation paths they check.
#pragma once

#include "semichar/engine.hpp"
#include "semichar/int_matrix.hpp"
#include "semichar/numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace oracles {

using semichar::cpp_int;
using semichar::IntMatrix;

// Fraction-free Bareiss determinant of a dense integer matrix.
inline cpp_int int_det(std::vector<std::vector<cpp_int>> a) {
    const int n = static_cast<int>(a.size());
    if (n == 0) return 1;
    cpp_int sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int swap_row = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i][k] != 0) {
                    swap_row = i;
                    break;
                }
            if (swap_row < 0) return 0;
            std::swap(a[k], a[swap_row]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

// gcd of all k x k minors, for k = 1..maxk; 0 means every minor vanishes.
// The product d_1 ... d_k of the invariant factors must equal this gcd.
inline std::vector<cpp_int> determinant_divisors(const IntMatrix& m, int maxk) {
    std::vector<cpp_int> out;
    const int r = m.rows(), c = m.cols();
    std::vector<std::vector<cpp_int>> dense(r, std::vector<cpp_int>(c, 0));
    for (int i = 0; i < r; ++i)
        for (const auto& [col, v] : m.row(i)) dense[i][col] = v;
    for (int k = 1; k <= std::min({maxk, r, c}); ++k) {
        cpp_int g = 0;
        std::vector<int> rows(k), cols(k);
        std::function<void(int, int)> pick_rows = [&](int pos, int start) {
            if (pos == k) {
                std::function<void(int, int)> pick_cols = [&](int cpos, int cstart) {
                    if (cpos == k) {
                        std::vector<std::vector<cpp_int>> minor(k, std::vector<cpp_int>(k));
                        for (int i = 0; i < k; ++i)
                            for (int j = 0; j < k; ++j) minor[i][j] = dense[rows[i]][cols[j]];
                        g = boost::multiprecision::gcd(g, abs(int_det(minor)));
                        return;
                    }
                    for (int j = cstart; j < c; ++j) {
                        cols[cpos] = j;
                        pick_cols(cpos + 1, j + 1);
                    }
                };
                pick_cols(0, 0);
                return;
            }
            for (int i = start; i < r; ++i) {
                rows[pos] = i;
                pick_rows(pos + 1, i + 1);
            }
        };
        pick_rows(0, 0);
        out.push_back(g);
    }
    return out;
}

// Brute-force semicharacter group: enumerate every function with
// f(g) in (1/ord(g)) Z / Z and keep those additive on all commuting pairs.
// Feasible for |G| <= 12 (search space is the product of element orders).
struct BruteForceDual {
    cpp_int order = 1;
    std::vector<std::int64_t> invariant_factors; // nontrivial chain
    std::vector<semichar::Semicharacter> functions;
};

inline BruteForceDual brute_force_dual(const semichar::GroupTable& g) {
    using semichar::Residue;
    const int n = g.order();
    if (n > 12) throw std::logic_error("brute_force_dual: group too large for enumeration");
    std::vector<std::int64_t> ord(n);
    cpp_int space = 1;
    for (int x = 0; x < n; ++x) {
        ord[x] = g.element_order(x);
        space *= ord[x];
    }
    if (space > 100'000'000) throw std::logic_error("brute_force_dual: search space too large");

    std::vector<std::pair<int, int>> pairs;
    g.commuting_pairs([&](int i, int j) { pairs.emplace_back(i, j); });

    BruteForceDual out;
    std::vector<std::int64_t> digits(n, 0);
    while (true) {
        semichar::Semicharacter f;
        f.values.reserve(n);
        for (int x = 0; x < n; ++x) f.values.push_back(Residue(digits[x], ord[x]));
        bool ok = true;
        for (const auto& [i, j] : pairs)
            if (f.values[i] + f.values[j] != f.values[g.mul(i, j)]) {
                ok = false;
                break;
            }
        if (ok) out.functions.push_back(std::move(f));
        int x = n - 1;
        while (x >= 0 && digits[x] == ord[x] - 1) digits[x--] = 0;
        if (x < 0) break;
        ++digits[x];
    }
    out.order = out.functions.size();

    // Structure from torsion counts: within the l-part, the count of
    // functions killed by l^j determines the multiset of cyclic factors.
    std::map<std::int64_t, std::vector<std::int64_t>> primary; // prime -> exponents, desc
    semichar::Factored total = semichar::Factored::of(static_cast<std::int64_t>(out.order));
    for (std::int64_t l : total.primes()) {
        std::vector<std::int64_t> m; // m[j] = #{factors with exponent >= j+1}
        std::int64_t prev = 0;
        for (std::int64_t j = 1;; ++j) {
            const std::int64_t lj = semichar::ipow(l, j);
            std::int64_t count = 0;
            for (const auto& f : out.functions) {
                bool killed = true;
                for (const auto& v : f.values)
                    if (!v.times(lj).is_zero()) {
                        killed = false;
                        break;
                    }
                if (killed) ++count;
            }
            const std::int64_t logc = semichar::valuation(count, l);
            m.push_back(logc - prev);
            if (logc == total.val(l)) break;
            prev = logc;
        }
        std::vector<std::int64_t> exps;
        for (std::size_t j = 0; j < m.size(); ++j) {
            const std::int64_t next = j + 1 < m.size() ? m[j + 1] : 0;
            for (std::int64_t t = 0; t < m[j] - next; ++t)
                exps.push_back(static_cast<std::int64_t>(j) + 1);
        }
        std::sort(exps.rbegin(), exps.rend());
        primary[l] = exps;
    }
    std::size_t depth = 0;
    for (const auto& [l, exps] : primary) depth = std::max(depth, exps.size());
    for (std::size_t i = 0; i < depth; ++i) {
        std::int64_t d = 1;
        for (const auto& [l, exps] : primary)
            if (i < exps.size()) d *= semichar::ipow(l, exps[i]);
        out.invariant_factors.push_back(d);
    }
    std::reverse(out.invariant_factors.begin(), out.invariant_factors.end());
    return out;
}

} // namespace oracles
