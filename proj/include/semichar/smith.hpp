// Smith normal form over the integers with unbounded-precision entries.
//
// Pivoting picks the nonzero entry of minimal absolute value, ties broken by
// lowest row then lowest column. Unit pivots are eliminated in a sparse pass
// first (relation lattices have <= 3 nonzeros per row and are riddled with
// +-1 entries); whatever survives is finished by the classical dense
// algorithm. Entries are cpp_int throughout, so correctness never depends on
// the pivoting strategy.
#pragma once

#include "semichar/int_matrix.hpp"
#include "semichar/numeric.hpp"

#include <map>
#include <optional>
#include <set>
#include <vector>

namespace semichar {

enum class Transforms {
    none,  // invariant factors only
    right, // also V (cols x cols); enough to read off quotient generators
    both,  // also U (rows x rows); memory-hungry for tall matrices
};

struct SmithForm {
    // Full divisibility chain d_1 | d_2 | ... | d_rank, including leading 1s.
    std::vector<cpp_int> invariant_factors;
    std::size_t rank = 0;
    std::optional<IntMatrix> left;  // U with U * M * V = diag(d_1, ..., d_rank)
    std::optional<IntMatrix> right; // V

    std::vector<cpp_int> nontrivial_factors() const {
        std::vector<cpp_int> out;
        for (const auto& d : invariant_factors)
            if (d != 1) out.push_back(d);
        return out;
    }
};

namespace detail {

class SmithWorker {
public:
    SmithWorker(const IntMatrix& m, Transforms want)
        : nrows_(m.rows()), ncols_(m.cols()), want_(want) {
        rows_.resize(nrows_);
        col_rows_.resize(ncols_);
        for (int i = 0; i < nrows_; ++i)
            for (const auto& [c, v] : m.row(i)) rows_[i][c] = v;
        if (want_ == Transforms::both) {
            u_.assign(nrows_, {});
            for (int i = 0; i < nrows_; ++i) u_[i][i] = 1;
        }
        if (want_ != Transforms::none) {
            v_.assign(ncols_, {});
            for (int j = 0; j < ncols_; ++j) v_[j][j] = 1;
        }
    }

    SmithForm run() {
        if (want_ != Transforms::both) drop_duplicate_rows();
        index_all();
        sparse_unit_phase();
        dense_phase();
        return assemble();
    }

private:
    using Row = std::map<int, cpp_int>;
    using SparseCol = std::map<int, cpp_int>; // row -> value, for transforms

    void drop_duplicate_rows() {
        // Duplicate or negated rows reduce to zero against each other; these
        // are row operations, so U-free modes can discard them up front.
        std::map<std::vector<std::pair<int, cpp_int>>, int> seen;
        for (int i = 0; i < nrows_; ++i) {
            if (rows_[i].empty()) continue;
            std::vector<std::pair<int, cpp_int>> key(rows_[i].begin(), rows_[i].end());
            if (key.front().second < 0)
                for (auto& [c, v] : key) v = -v;
            auto [it, inserted] = seen.emplace(std::move(key), i);
            if (!inserted) rows_[i].clear();
        }
    }

    void index_all() {
        for (int i = 0; i < nrows_; ++i)
            for (const auto& [c, v] : rows_[i]) {
                col_rows_[c].insert(i);
                if (v == 1 || v == -1) units_.insert({i, c});
            }
    }

    void row_axpy(int dst, int src, const cpp_int& s) {
        // rows[dst] += s * rows[src]
        for (const auto& [c, v] : rows_[src]) {
            auto it = rows_[dst].find(c);
            cpp_int nv = (it == rows_[dst].end() ? cpp_int(0) : it->second) + s * v;
            units_.erase({dst, c});
            if (nv == 0) {
                if (it != rows_[dst].end()) rows_[dst].erase(it);
                col_rows_[c].erase(dst);
            } else {
                rows_[dst][c] = nv;
                col_rows_[c].insert(dst);
                if (nv == 1 || nv == -1) units_.insert({dst, c});
            }
        }
        if (want_ == Transforms::both)
            for (const auto& [c, v] : u_[src]) {
                cpp_int nv = u_[dst][c] + s * v;
                if (nv == 0)
                    u_[dst].erase(c);
                else
                    u_[dst][c] = std::move(nv);
            }
    }

    void col_axpy_v(int dst, int src, const cpp_int& s) {
        // v columns: col[dst] += s * col[src]
        for (const auto& [r, val] : v_[src]) {
            cpp_int nv = v_[dst][r] + s * val;
            if (nv == 0)
                v_[dst].erase(r);
            else
                v_[dst][r] = std::move(nv);
        }
    }

    void negate_row(int r) {
        for (auto& [c, v] : rows_[r]) v = -v;
        if (want_ == Transforms::both)
            for (auto& [c, v] : u_[r]) v = -v;
    }

    void sparse_unit_phase() {
        while (!units_.empty()) {
            const auto [r, c] = *units_.begin();
            const cpp_int a = rows_[r].at(c);
            // Clear column c everywhere else; the pivot is a unit, so the
            // quotients are exact.
            std::vector<int> others(col_rows_[c].begin(), col_rows_[c].end());
            for (int r2 : others) {
                if (r2 == r) continue;
                const cpp_int q = rows_[r2].at(c) / a;
                row_axpy(r2, r, -q);
            }
            // Clear the pivot row with column operations. Column c is zero
            // outside row r now, so these touch no other row.
            std::vector<std::pair<int, cpp_int>> rest;
            for (const auto& [c2, val] : rows_[r])
                if (c2 != c) rest.emplace_back(c2, val);
            for (const auto& [c2, val] : rest) {
                if (want_ != Transforms::none) col_axpy_v(c2, c, -(val / a));
                rows_[r].erase(c2);
                col_rows_[c2].erase(r);
                units_.erase({r, c2});
            }
            if (a < 0) negate_row(r);
            units_.erase({r, c});
            col_rows_[c].erase(r);
            rows_[r].clear();
            retired_.push_back({r, c, cpp_int(1)});
            retired_row_.insert(r);
            retired_col_.insert(c);
        }
    }

    void dense_phase() {
        std::vector<int> row_ids, col_ids;
        for (int i = 0; i < nrows_; ++i)
            if (!retired_row_.count(i) && !rows_[i].empty()) row_ids.push_back(i);
        std::vector<bool> col_used(ncols_, false);
        for (int i : row_ids)
            for (const auto& [c, v] : rows_[i]) col_used[c] = true;
        for (int j = 0; j < ncols_; ++j)
            if (col_used[j]) col_ids.push_back(j);
        int m = static_cast<int>(row_ids.size());
        const int n = static_cast<int>(col_ids.size());
        if (m == 0 || n == 0) return;

        std::vector<std::vector<cpp_int>> a(m, std::vector<cpp_int>(n, 0));
        {
            std::map<int, int> col_pos;
            for (int j = 0; j < n; ++j) col_pos[col_ids[j]] = j;
            for (int i = 0; i < m; ++i)
                for (const auto& [c, v] : rows_[row_ids[i]]) a[i][col_pos[c]] = v;
        }

        auto row_op = [&](int dst, int src, const cpp_int& s) {
            for (int j = 0; j < n; ++j) a[dst][j] += s * a[src][j];
            if (want_ == Transforms::both)
                for (const auto& [c, v] : u_[row_ids[src]]) {
                    cpp_int nv = u_[row_ids[dst]][c] + s * v;
                    if (nv == 0)
                        u_[row_ids[dst]].erase(c);
                    else
                        u_[row_ids[dst]][c] = std::move(nv);
                }
        };
        // Row-echelon compression first: gcd-combine rows so that each column
        // has at most one leading row. These are ordinary row operations; the
        // classical pass below then works on at most n rows instead of m.
        {
            std::vector<int> lead_of_col(n, -1);
            for (int i = 0; i < m; ++i) {
                int r = i;
                for (int j = 0; j < n; ++j) {
                    if (a[r][j] == 0) continue;
                    const int p = lead_of_col[j];
                    if (p < 0) {
                        lead_of_col[j] = r;
                        break;
                    }
                    while (a[r][j] != 0) {
                        const cpp_int q = a[p][j] / a[r][j];
                        if (q != 0) row_op(p, r, -q);
                        std::swap(a[p], a[r]);
                        std::swap(row_ids[p], row_ids[r]);
                    }
                }
            }
            // Compact the nonzero rows, keeping their current order.
            int w = 0;
            for (int i = 0; i < m; ++i) {
                bool zero = true;
                for (int j = 0; j < n; ++j)
                    if (a[i][j] != 0) {
                        zero = false;
                        break;
                    }
                if (zero) continue;
                if (w != i) {
                    std::swap(a[w], a[i]);
                    std::swap(row_ids[w], row_ids[i]);
                }
                ++w;
            }
            m = w;
        }

        auto col_op = [&](int dst, int src, const cpp_int& s) {
            for (int i = 0; i < m; ++i) a[i][dst] += s * a[i][src];
            if (want_ != Transforms::none) col_axpy_v(col_ids[dst], col_ids[src], s);
        };

        for (int k = 0; k < std::min(m, n); ++k) {
            // Deterministic pivot: minimal |value|, then lowest row, column.
            int pi = -1, pj = -1;
            cpp_int best;
            for (int i = k; i < m; ++i)
                for (int j = k; j < n; ++j) {
                    if (a[i][j] == 0) continue;
                    cpp_int mag = abs(a[i][j]);
                    if (pi < 0 || mag < best) {
                        best = mag;
                        pi = i;
                        pj = j;
                    }
                }
            if (pi < 0) break;
            std::swap(a[k], a[pi]);
            std::swap(row_ids[k], row_ids[pi]);
            if (pj != k) {
                for (int i = 0; i < m; ++i) std::swap(a[i][k], a[i][pj]);
                std::swap(col_ids[k], col_ids[pj]);
            }

            while (true) {
                // Clear column k with row operations; a nonzero remainder is
                // smaller than the pivot and replaces it.
                for (int i = k + 1; i < m; ++i) {
                    while (a[i][k] != 0) {
                        const cpp_int q = a[i][k] / a[k][k];
                        if (q != 0) row_op(i, k, -q);
                        if (a[i][k] != 0) {
                            std::swap(a[k], a[i]);
                            std::swap(row_ids[k], row_ids[i]);
                        }
                    }
                }
                bool row_dirty = false;
                for (int j = k + 1; j < n; ++j)
                    if (a[k][j] != 0) {
                        row_dirty = true;
                        break;
                    }
                if (row_dirty) {
                    // Clear row k with column operations; swaps can dirty
                    // column k again, so loop back afterwards.
                    for (int j = k + 1; j < n; ++j) {
                        while (a[k][j] != 0) {
                            const cpp_int q = a[k][j] / a[k][k];
                            if (q != 0) col_op(j, k, -q);
                            if (a[k][j] != 0) {
                                for (int i = 0; i < m; ++i) std::swap(a[i][k], a[i][j]);
                                std::swap(col_ids[k], col_ids[j]);
                            }
                        }
                    }
                    continue;
                }
                // Pivot must divide the rest of the submatrix to keep the
                // chain; if not, pull the offending row in and go again.
                int bi = -1;
                for (int i = k + 1; i < m && bi < 0; ++i)
                    for (int j = k + 1; j < n; ++j)
                        if (a[i][j] % a[k][k] != 0) {
                            bi = i;
                            break;
                        }
                if (bi < 0) break;
                row_op(k, bi, 1);
            }
            if (a[k][k] < 0) {
                for (int j = k; j < n; ++j) a[k][j] = -a[k][j];
                if (want_ == Transforms::both)
                    for (auto& [c, v] : u_[row_ids[k]]) v = -v;
            }
            retired_.push_back({row_ids[k], col_ids[k], a[k][k]});
            retired_row_.insert(row_ids[k]);
            retired_col_.insert(col_ids[k]);
        }
    }

    SmithForm assemble() {
        SmithForm out;
        out.rank = retired_.size();
        for (const auto& r : retired_) out.invariant_factors.push_back(r.d);
        if (want_ == Transforms::both) {
            IntMatrix left(nrows_, nrows_);
            int pos = 0;
            for (const auto& r : retired_) {
                SparseRow row;
                for (const auto& [c, v] : u_[r.row]) row.emplace_back(c, v);
                left.set_row(pos++, std::move(row));
            }
            for (int i = 0; i < nrows_; ++i) {
                if (retired_row_.count(i)) continue;
                SparseRow row;
                for (const auto& [c, v] : u_[i]) row.emplace_back(c, v);
                left.set_row(pos++, std::move(row));
            }
            out.left = std::move(left);
        }
        if (want_ != Transforms::none) {
            // v_ is column-major; transpose into rows of the output matrix.
            std::vector<SparseRow> vrows(ncols_);
            int pos = 0;
            auto emit_col = [&](int c) {
                for (const auto& [r, val] : v_[c]) vrows[r].emplace_back(pos, val);
                ++pos;
            };
            for (const auto& r : retired_) emit_col(r.col);
            for (int j = 0; j < ncols_; ++j)
                if (!retired_col_.count(j)) emit_col(j);
            IntMatrix right(ncols_, ncols_);
            for (int i = 0; i < ncols_; ++i) right.set_row(i, std::move(vrows[i]));
            out.right = std::move(right);
        }
        return out;
    }

    struct Retired {
        int row;
        int col;
        cpp_int d;
    };

    int nrows_;
    int ncols_;
    Transforms want_;
    std::vector<Row> rows_;
    std::vector<std::set<int>> col_rows_;
    std::set<std::pair<int, int>> units_;
    std::vector<SparseCol> u_; // row-major, by original row id
    std::vector<SparseCol> v_; // column-major, by original column id
    std::vector<Retired> retired_;
    std::set<int> retired_row_, retired_col_;
};

} // namespace detail

inline SmithForm smith_normal_form(const IntMatrix& m, Transforms want = Transforms::none) {
    if (m.rows() == 0 || m.cols() == 0) {
        SmithForm out;
        if (want == Transforms::both) out.left = IntMatrix::identity(m.rows());
        if (want != Transforms::none) out.right = IntMatrix::identity(m.cols());
        return out;
    }
    return detail::SmithWorker(m, want).run();
}

// Generators of the finite part of Z^cols / rowspace(M), one per nontrivial
// invariant factor d > 1: a vector over Q/Z of order d annihilating every
// lattice row. Needs the right transform.
inline std::vector<std::pair<std::vector<Residue>, std::int64_t>>
quotient_group_generators(const IntMatrix& m, const SmithForm& smith) {
    if (!smith.right) throw InputError("quotient_group_generators: smith form lacks transforms");
    const IntMatrix& v = *smith.right;
    std::vector<std::pair<std::vector<Residue>, std::int64_t>> out;
    for (std::size_t t = 0; t < smith.invariant_factors.size(); ++t) {
        const cpp_int& d = smith.invariant_factors[t];
        if (d == 1) continue;
        if (d > cpp_int(std::int64_t(1) << 62))
            throw CapExceeded("quotient generator order exceeds 2^62");
        const std::int64_t dd = static_cast<std::int64_t>(d);
        std::vector<Residue> vec(m.cols());
        for (int r = 0; r < v.rows(); ++r) {
            cpp_int entry = v.at(r, static_cast<int>(t));
            if (entry == 0) continue;
            cpp_int red = entry % dd;
            if (red < 0) red += dd;
            vec[r] = Residue(static_cast<std::int64_t>(red), dd);
        }
        out.emplace_back(std::move(vec), dd);
    }
    return out;
}

} // namespace semichar
