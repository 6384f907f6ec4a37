// Right nullspace of an integer matrix over Z/l, l prime.
#pragma once

#include "semichar/int_matrix.hpp"
#include "semichar/numeric.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace semichar {

struct NullspaceModP {
    std::int64_t prime = 2;
    std::int64_t dimension = 0;
    // Echelonized: basis[i] has a 1 in its own free column and 0 in the free
    // columns of the other basis vectors.
    std::vector<std::vector<std::int64_t>> basis;
};

inline NullspaceModP nullspace_mod_p(const IntMatrix& m, std::int64_t l) {
    if (!is_prime(l)) throw InputError("nullspace_mod_p: modulus must be prime");
    using Row = std::map<int, std::int64_t>; // col -> value in [1, l)
    std::map<int, Row> pivots;               // leading col -> normalized row

    auto reduce_insert = [&](Row r) {
        while (!r.empty()) {
            const int lead = r.begin()->first;
            const std::int64_t c = r.begin()->second;
            auto it = pivots.find(lead);
            if (it == pivots.end()) {
                const std::int64_t inv = mod_inverse(c, l);
                for (auto& [col, v] : r) v = v * inv % l;
                pivots.emplace(lead, std::move(r));
                return;
            }
            // r -= c * pivot row (pivot rows are normalized to lead 1)
            for (const auto& [col, v] : it->second) {
                std::int64_t nv = ((r.count(col) ? r[col] : 0) - c * v) % l;
                nv = (nv % l + l) % l;
                if (nv == 0)
                    r.erase(col);
                else
                    r[col] = nv;
            }
        }
    };

    for (int i = 0; i < m.rows(); ++i) {
        Row r;
        for (const auto& [c, v] : m.row(i)) {
            std::int64_t red = static_cast<std::int64_t>(v % l);
            red = (red % l + l) % l;
            if (red != 0) r[c] = red;
        }
        if (!r.empty()) reduce_insert(std::move(r));
    }

    // Back-substitute to reduced echelon form, highest pivot first.
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
        Row& row = it->second;
        std::vector<std::pair<int, std::int64_t>> tail(std::next(row.begin()), row.end());
        for (const auto& [col, coeff] : tail) {
            auto pit = pivots.find(col);
            if (pit == pivots.end()) continue;
            for (const auto& [c2, v2] : pit->second) {
                std::int64_t nv = ((row.count(c2) ? row[c2] : 0) - coeff * v2) % l;
                nv = (nv % l + l) % l;
                if (nv == 0)
                    row.erase(c2);
                else
                    row[c2] = nv;
            }
        }
    }

    NullspaceModP out;
    out.prime = l;
    const int n = m.cols();
    for (int f = 0; f < n; ++f) {
        if (pivots.count(f)) continue;
        std::vector<std::int64_t> v(n, 0);
        v[f] = 1;
        for (const auto& [lead, row] : pivots) {
            auto it = row.find(f);
            if (it != row.end()) v[lead] = (l - it->second) % l;
        }
        out.basis.push_back(std::move(v));
    }
    out.dimension = static_cast<std::int64_t>(out.basis.size());
    return out;
}

} // namespace semichar
