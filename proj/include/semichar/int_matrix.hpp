// Integer matrices with unbounded-precision entries, stored as sparse rows.
#pragma once

#include "semichar/numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

namespace semichar {

// One sparse row: (column, value) pairs, sorted by column, values nonzero.
using SparseRow = std::vector<std::pair<int, cpp_int>>;

inline void normalize_row(SparseRow& row) {
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseRow out;
    for (auto& [c, v] : row) {
        if (!out.empty() && out.back().first == c)
            out.back().second += v;
        else
            out.emplace_back(c, v);
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const auto& e) { return e.second == 0; }),
              out.end());
    row = std::move(out);
}

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {}

    static IntMatrix from_dense(int rows, int cols, const std::vector<std::int64_t>& entries) {
        IntMatrix m(rows, cols);
        for (int i = 0; i < rows; ++i) {
            SparseRow row;
            for (int j = 0; j < cols; ++j) {
                const std::int64_t v = entries[static_cast<std::size_t>(i) * cols + j];
                if (v != 0) row.emplace_back(j, cpp_int(v));
            }
            m.data_[i] = std::move(row);
        }
        return m;
    }

    static IntMatrix identity(int n) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.data_[i] = {{i, cpp_int(1)}};
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void set_row(int i, SparseRow row) {
        normalize_row(row);
        for (const auto& [c, v] : row)
            if (c < 0 || c >= cols_) throw InputError("IntMatrix: column index out of range");
        data_[i] = std::move(row);
    }

    void append_row(SparseRow row) {
        data_.emplace_back();
        ++rows_;
        set_row(rows_ - 1, std::move(row));
    }

    const SparseRow& row(int i) const { return data_[i]; }

    cpp_int at(int i, int j) const {
        for (const auto& [c, v] : data_[i])
            if (c == j) return v;
        return 0;
    }

    std::int64_t nonzeros() const {
        std::int64_t nnz = 0;
        for (const auto& r : data_) nnz += static_cast<std::int64_t>(r.size());
        return nnz;
    }

    // this * other, dense algorithmics on sparse storage; fine at test scale.
    IntMatrix multiply(const IntMatrix& other) const {
        if (cols_ != other.rows_) throw InputError("IntMatrix multiply: dimension mismatch");
        IntMatrix out(rows_, other.cols_);
        for (int i = 0; i < rows_; ++i) {
            std::vector<cpp_int> acc(other.cols_, 0);
            for (const auto& [k, v] : data_[i])
                for (const auto& [j, w] : other.data_[k]) acc[j] += v * w;
            SparseRow row;
            for (int j = 0; j < other.cols_; ++j)
                if (acc[j] != 0) row.emplace_back(j, std::move(acc[j]));
            out.data_[i] = std::move(row);
        }
        return out;
    }

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<SparseRow> data_;
};

} // namespace semichar
