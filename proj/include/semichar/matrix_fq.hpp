// Small exact matrices over a finite field. Entries are element codes of the
// owning FiniteField, which is passed to every operation.
#pragma once

#include "semichar/finite_field.hpp"

#include <cstdint>
#include <vector>

namespace semichar {

struct MatrixFq {
    int rows = 0;
    int cols = 0;
    std::vector<int> entries; // row-major field element codes

    MatrixFq() = default;
    MatrixFq(int r, int c) : rows(r), cols(c), entries(static_cast<std::size_t>(r) * c, 0) {}

    int at(int i, int j) const { return entries[static_cast<std::size_t>(i) * cols + j]; }
    int& at(int i, int j) { return entries[static_cast<std::size_t>(i) * cols + j]; }

    bool operator==(const MatrixFq& o) const {
        return rows == o.rows && cols == o.cols && entries == o.entries;
    }
    bool operator<(const MatrixFq& o) const { return entries < o.entries; }

    static MatrixFq identity(const FiniteField& F, int n) {
        MatrixFq m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = F.one();
        return m;
    }
};

inline MatrixFq mat_mul(const FiniteField& F, const MatrixFq& a, const MatrixFq& b) {
    if (a.cols != b.rows) throw InputError("mat_mul: dimension mismatch");
    MatrixFq c(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            const int aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols; ++j)
                c.at(i, j) = F.add(c.at(i, j), F.mul(aik, b.at(k, j)));
        }
    return c;
}

inline MatrixFq mat_add(const FiniteField& F, const MatrixFq& a, const MatrixFq& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw InputError("mat_add: dimension mismatch");
    MatrixFq c(a.rows, a.cols);
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        c.entries[i] = F.add(a.entries[i], b.entries[i]);
    return c;
}

inline MatrixFq mat_sub(const FiniteField& F, const MatrixFq& a, const MatrixFq& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw InputError("mat_sub: dimension mismatch");
    MatrixFq c(a.rows, a.cols);
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        c.entries[i] = F.sub(a.entries[i], b.entries[i]);
    return c;
}

inline MatrixFq mat_scale(const FiniteField& F, int s, const MatrixFq& a) {
    MatrixFq c(a.rows, a.cols);
    for (std::size_t i = 0; i < a.entries.size(); ++i) c.entries[i] = F.mul(s, a.entries[i]);
    return c;
}

inline int mat_trace(const FiniteField& F, const MatrixFq& a) {
    if (a.rows != a.cols) throw InputError("mat_trace: matrix not square");
    int t = F.zero();
    for (int i = 0; i < a.rows; ++i) t = F.add(t, a.at(i, i));
    return t;
}

// Determinant by fraction-free elimination over the field.
inline int mat_det(const FiniteField& F, MatrixFq a) {
    if (a.rows != a.cols) throw InputError("mat_det: matrix not square");
    const int n = a.rows;
    int det = F.one();
    for (int c = 0; c < n; ++c) {
        int pivot = -1;
        for (int r = c; r < n; ++r)
            if (a.at(r, c) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return F.zero();
        if (pivot != c) {
            for (int j = 0; j < n; ++j) std::swap(a.at(pivot, j), a.at(c, j));
            det = F.neg(det);
        }
        det = F.mul(det, a.at(c, c));
        const int pinv = F.inv(a.at(c, c));
        for (int r = c + 1; r < n; ++r) {
            const int factor = F.mul(a.at(r, c), pinv);
            if (factor == 0) continue;
            for (int j = c; j < n; ++j)
                a.at(r, j) = F.sub(a.at(r, j), F.mul(factor, a.at(c, j)));
        }
    }
    return det;
}

inline MatrixFq mat_inv(const FiniteField& F, MatrixFq a) {
    if (a.rows != a.cols) throw InputError("mat_inv: matrix not square");
    const int n = a.rows;
    MatrixFq inv = MatrixFq::identity(F, n);
    for (int c = 0; c < n; ++c) {
        int pivot = -1;
        for (int r = c; r < n; ++r)
            if (a.at(r, c) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw InputError("mat_inv: singular matrix");
        if (pivot != c)
            for (int j = 0; j < n; ++j) {
                std::swap(a.at(pivot, j), a.at(c, j));
                std::swap(inv.at(pivot, j), inv.at(c, j));
            }
        const int pinv = F.inv(a.at(c, c));
        for (int j = 0; j < n; ++j) {
            a.at(c, j) = F.mul(a.at(c, j), pinv);
            inv.at(c, j) = F.mul(inv.at(c, j), pinv);
        }
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            const int factor = a.at(r, c);
            if (factor == 0) continue;
            for (int j = 0; j < n; ++j) {
                a.at(r, j) = F.sub(a.at(r, j), F.mul(factor, a.at(c, j)));
                inv.at(r, j) = F.sub(inv.at(r, j), F.mul(factor, inv.at(c, j)));
            }
        }
    }
    return inv;
}

inline MatrixFq mat_pow(const FiniteField& F, const MatrixFq& a, std::int64_t k) {
    if (a.rows != a.cols) throw InputError("mat_pow: matrix not square");
    if (k < 0) return mat_pow(F, mat_inv(F, a), -k);
    MatrixFq result = MatrixFq::identity(F, a.rows);
    MatrixFq base = a;
    while (k > 0) {
        if (k & 1) result = mat_mul(F, result, base);
        base = mat_mul(F, base, base);
        k >>= 1;
    }
    return result;
}

inline bool mat_is_zero(const MatrixFq& a) {
    for (int v : a.entries)
        if (v != 0) return false;
    return true;
}

inline std::int64_t mat_order(const FiniteField& F, const MatrixFq& a) {
    MatrixFq x = a;
    const MatrixFq id = MatrixFq::identity(F, a.rows);
    std::int64_t ord = 1;
    while (!(x == id)) {
        x = mat_mul(F, x, a);
        ++ord;
        if (ord > (1 << 24)) throw std::logic_error("mat_order: element order runaway");
    }
    return ord;
}

// Dense integer code of a matrix, used for deterministic ordering and hashing.
inline std::uint64_t mat_code(const FiniteField& F, const MatrixFq& a) {
    std::uint64_t code = 0;
    for (int v : a.entries) code = code * static_cast<std::uint64_t>(F.q()) + static_cast<std::uint64_t>(v);
    return code;
}

} // namespace semichar
