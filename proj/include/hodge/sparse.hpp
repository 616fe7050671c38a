#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "hodge/errors.hpp"

namespace hodge {

using index_t = std::int64_t;

struct triplet {
    index_t row;
    index_t col;
    double value;
};

/**
 * Compressed sparse row matrix in canonical form:
 *   - column indices strictly increasing within each row,
 *   - duplicate entries summed at construction,
 *   - exact zeros dropped.
 *
 * Canonical form makes equality, symmetry and nnz counts meaningful, and
 * fixes the summation order of every kernel (row major, ascending column)
 * so results are bit-reproducible.
 */
class sparse_matrix {
public:
    sparse_matrix() : rows_(0), cols_(0), row_ptr_(1, 0) {}

    sparse_matrix(index_t rows, index_t cols) : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {
        if (rows < 0 || cols < 0) throw invalid_input("sparse_matrix: negative dimension");
    }

    static sparse_matrix from_triplets(index_t rows, index_t cols, std::vector<triplet> t) {
        sparse_matrix a(rows, cols);
        for (const auto& e : t) {
            if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols)
                throw invalid_input("from_triplets: entry (" + std::to_string(e.row) + "," +
                                    std::to_string(e.col) + ") out of range for " +
                                    std::to_string(rows) + "x" + std::to_string(cols));
        }
        std::stable_sort(t.begin(), t.end(), [](const triplet& x, const triplet& y) {
            return x.row != y.row ? x.row < y.row : x.col < y.col;
        });
        a.col_idx_.reserve(t.size());
        a.vals_.reserve(t.size());
        std::size_t i = 0;
        for (index_t r = 0; r < rows; ++r) {
            while (i < t.size() && t[i].row == r) {
                index_t c = t[i].col;
                double v = 0.0;
                while (i < t.size() && t[i].row == r && t[i].col == c) {
                    v += t[i].value;
                    ++i;
                }
                if (v != 0.0) {
                    a.col_idx_.push_back(c);
                    a.vals_.push_back(v);
                }
            }
            a.row_ptr_[r + 1] = static_cast<index_t>(a.col_idx_.size());
        }
        return a;
    }

    static sparse_matrix identity(index_t n) {
        sparse_matrix a(n, n);
        a.col_idx_.resize(n);
        a.vals_.assign(n, 1.0);
        for (index_t i = 0; i < n; ++i) {
            a.col_idx_[i] = i;
            a.row_ptr_[i + 1] = i + 1;
        }
        return a;
    }

    index_t rows() const { return rows_; }
    index_t cols() const { return cols_; }
    index_t nnz() const { return static_cast<index_t>(vals_.size()); }

    const std::vector<index_t>& row_ptr() const { return row_ptr_; }
    const std::vector<index_t>& col_idx() const { return col_idx_; }
    const std::vector<double>& values() const { return vals_; }

    // Stored value at (i, j), zero if the entry is not present.
    double at(index_t i, index_t j) const {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
            throw dimension_error("at: index out of range");
        auto first = col_idx_.begin() + row_ptr_[i];
        auto last = col_idx_.begin() + row_ptr_[i + 1];
        auto it = std::lower_bound(first, last, j);
        if (it == last || *it != j) return 0.0;
        return vals_[static_cast<std::size_t>(it - col_idx_.begin())];
    }

    // y = A x. Row-major accumulation in ascending column order.
    std::vector<double> matvec(const std::vector<double>& x) const {
        if (static_cast<index_t>(x.size()) != cols_)
            throw dimension_error("matvec: expected vector of length " + std::to_string(cols_) +
                                  ", got " + std::to_string(x.size()));
        std::vector<double> y(static_cast<std::size_t>(rows_), 0.0);
        for (index_t i = 0; i < rows_; ++i) {
            double s = 0.0;
            for (index_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
                s += vals_[k] * x[col_idx_[k]];
            y[i] = s;
        }
        return y;
    }

    // Counting-sort transpose; preserves canonical form deterministically.
    sparse_matrix transpose() const {
        sparse_matrix t(cols_, rows_);
        t.col_idx_.resize(vals_.size());
        t.vals_.resize(vals_.size());
        std::vector<index_t> count(static_cast<std::size_t>(cols_) + 1, 0);
        for (index_t c : col_idx_) ++count[c + 1];
        for (index_t j = 0; j < cols_; ++j) count[j + 1] += count[j];
        for (index_t i = 0; i < rows_; ++i) {
            for (index_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
                index_t pos = count[col_idx_[k]]++;
                t.col_idx_[pos] = i;
                t.vals_[pos] = vals_[k];
            }
        }
        for (index_t j = 0; j <= cols_; ++j) t.row_ptr_[j] = 0;
        for (index_t c : col_idx_) ++t.row_ptr_[c + 1];
        for (index_t j = 0; j < cols_; ++j) t.row_ptr_[j + 1] += t.row_ptr_[j];
        return t;
    }

    // Half-open block [r0, r1) x [c0, c1).
    sparse_matrix slice(index_t r0, index_t r1, index_t c0, index_t c1) const {
        if (r0 < 0 || r1 < r0 || r1 > rows_ || c0 < 0 || c1 < c0 || c1 > cols_)
            throw dimension_error("slice: block out of range");
        sparse_matrix s(r1 - r0, c1 - c0);
        for (index_t i = r0; i < r1; ++i) {
            for (index_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
                index_t c = col_idx_[k];
                if (c >= c0 && c < c1) {
                    s.col_idx_.push_back(c - c0);
                    s.vals_.push_back(vals_[k]);
                }
            }
            s.row_ptr_[i - r0 + 1] = static_cast<index_t>(s.col_idx_.size());
        }
        return s;
    }

    bool operator==(const sparse_matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && row_ptr_ == o.row_ptr_ &&
               col_idx_ == o.col_idx_ && vals_ == o.vals_;
    }

    friend sparse_matrix multiply(const sparse_matrix& a, const sparse_matrix& b);
    friend sparse_matrix add(const sparse_matrix& a, const sparse_matrix& b);
    friend sparse_matrix hstack(const sparse_matrix& a, const sparse_matrix& b);
    friend sparse_matrix vstack(const sparse_matrix& a, const sparse_matrix& b);

private:
    index_t rows_, cols_;
    std::vector<index_t> row_ptr_;
    std::vector<index_t> col_idx_;
    std::vector<double> vals_;
};

// C = A B by row-wise accumulation (Gustavson). For each output row the
// contributions are gathered in ascending k and emitted in ascending column
// order, so products of integer matrices are exact and cancellation to zero
// drops the entry entirely.
inline sparse_matrix multiply(const sparse_matrix& a, const sparse_matrix& b) {
    if (a.cols_ != b.rows_)
        throw dimension_error("multiply: inner dimensions " + std::to_string(a.cols_) + " vs " +
                              std::to_string(b.rows_));
    sparse_matrix c(a.rows_, b.cols_);
    std::vector<double> acc(static_cast<std::size_t>(b.cols_), 0.0);
    std::vector<char> mark(static_cast<std::size_t>(b.cols_), 0);
    std::vector<index_t> touched;
    for (index_t i = 0; i < a.rows_; ++i) {
        touched.clear();
        for (index_t ka = a.row_ptr_[i]; ka < a.row_ptr_[i + 1]; ++ka) {
            index_t k = a.col_idx_[ka];
            double av = a.vals_[ka];
            for (index_t kb = b.row_ptr_[k]; kb < b.row_ptr_[k + 1]; ++kb) {
                index_t j = b.col_idx_[kb];
                if (!mark[j]) {
                    mark[j] = 1;
                    touched.push_back(j);
                }
                acc[j] += av * b.vals_[kb];
            }
        }
        std::sort(touched.begin(), touched.end());
        for (index_t j : touched) {
            if (acc[j] != 0.0) {
                c.col_idx_.push_back(j);
                c.vals_.push_back(acc[j]);
            }
            acc[j] = 0.0;
            mark[j] = 0;
        }
        c.row_ptr_[i + 1] = static_cast<index_t>(c.col_idx_.size());
    }
    return c;
}

inline sparse_matrix add(const sparse_matrix& a, const sparse_matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw dimension_error("add: shape mismatch");
    sparse_matrix c(a.rows_, a.cols_);
    for (index_t i = 0; i < a.rows_; ++i) {
        index_t ka = a.row_ptr_[i], ea = a.row_ptr_[i + 1];
        index_t kb = b.row_ptr_[i], eb = b.row_ptr_[i + 1];
        while (ka < ea || kb < eb) {
            index_t ca = ka < ea ? a.col_idx_[ka] : c.cols_;
            index_t cb = kb < eb ? b.col_idx_[kb] : c.cols_;
            index_t j = std::min(ca, cb);
            double v = 0.0;
            if (ca == j) v += a.vals_[ka++];
            if (cb == j) v += b.vals_[kb++];
            if (v != 0.0) {
                c.col_idx_.push_back(j);
                c.vals_.push_back(v);
            }
        }
        c.row_ptr_[i + 1] = static_cast<index_t>(c.col_idx_.size());
    }
    return c;
}

enum class gram_side { left, right };

// gram(A, left) = A A^T, gram(A, right) = A^T A. Both inherit Gustavson's
// accumulation order, which makes the result exactly symmetric: entries
// (i,j) and (j,i) sum identical products in identical order.
inline sparse_matrix gram(const sparse_matrix& a, gram_side side) {
    if (side == gram_side::left) return multiply(a, a.transpose());
    return multiply(a.transpose(), a);
}

// [A | B] with matching row counts.
inline sparse_matrix hstack(const sparse_matrix& a, const sparse_matrix& b) {
    if (a.rows_ != b.rows_) throw dimension_error("hstack: row counts differ");
    sparse_matrix c(a.rows_, a.cols_ + b.cols_);
    for (index_t i = 0; i < a.rows_; ++i) {
        for (index_t k = a.row_ptr_[i]; k < a.row_ptr_[i + 1]; ++k) {
            c.col_idx_.push_back(a.col_idx_[k]);
            c.vals_.push_back(a.vals_[k]);
        }
        for (index_t k = b.row_ptr_[i]; k < b.row_ptr_[i + 1]; ++k) {
            c.col_idx_.push_back(a.cols_ + b.col_idx_[k]);
            c.vals_.push_back(b.vals_[k]);
        }
        c.row_ptr_[i + 1] = static_cast<index_t>(c.col_idx_.size());
    }
    return c;
}

// [A; B] with matching column counts.
inline sparse_matrix vstack(const sparse_matrix& a, const sparse_matrix& b) {
    if (a.cols_ != b.cols_) throw dimension_error("vstack: column counts differ");
    sparse_matrix c(a.rows_ + b.rows_, a.cols_);
    c.col_idx_ = a.col_idx_;
    c.vals_ = a.vals_;
    c.col_idx_.insert(c.col_idx_.end(), b.col_idx_.begin(), b.col_idx_.end());
    c.vals_.insert(c.vals_.end(), b.vals_.begin(), b.vals_.end());
    for (index_t i = 0; i < a.rows_; ++i) c.row_ptr_[i + 1] = a.row_ptr_[i + 1];
    for (index_t i = 0; i < b.rows_; ++i)
        c.row_ptr_[a.rows_ + i + 1] = a.row_ptr_[a.rows_] + b.row_ptr_[i + 1];
    return c;
}

// Saddle-point block assembly
//
//   [ I  B ]
//   [ C  0 ]
//
// where I is identity_dim x identity_dim. The caller supplies the off
// diagonal blocks; when C = B^T the result is symmetric. Shape is
// (identity_dim + C.rows) x (identity_dim + B.cols).
inline sparse_matrix assemble_kkt(index_t identity_dim, const sparse_matrix& b,
                                  const sparse_matrix& c) {
    if (identity_dim < 0) throw invalid_input("assemble_kkt: negative identity block");
    if (b.rows() != identity_dim)
        throw dimension_error("assemble_kkt: B must have " + std::to_string(identity_dim) +
                              " rows, has " + std::to_string(b.rows()));
    if (c.cols() != identity_dim)
        throw dimension_error("assemble_kkt: C must have " + std::to_string(identity_dim) +
                              " columns, has " + std::to_string(c.cols()));
    std::vector<triplet> t;
    t.reserve(static_cast<std::size_t>(identity_dim) + b.nnz() + c.nnz());
    for (index_t i = 0; i < identity_dim; ++i) t.push_back({i, i, 1.0});
    for (index_t i = 0; i < b.rows(); ++i)
        for (index_t k = b.row_ptr()[i]; k < b.row_ptr()[i + 1]; ++k)
            t.push_back({i, identity_dim + b.col_idx()[k], b.values()[k]});
    for (index_t i = 0; i < c.rows(); ++i)
        for (index_t k = c.row_ptr()[i]; k < c.row_ptr()[i + 1]; ++k)
            t.push_back({identity_dim + i, c.col_idx()[k], c.values()[k]});
    return sparse_matrix::from_triplets(identity_dim + c.rows(), identity_dim + b.cols(),
                                        std::move(t));
}

// Row-major dense copy, for small matrices handed to dense kernels.
inline std::vector<double> to_dense_rowmajor(const sparse_matrix& a) {
    std::vector<double> d(static_cast<std::size_t>(a.rows()) * static_cast<std::size_t>(a.cols()),
                          0.0);
    for (index_t i = 0; i < a.rows(); ++i)
        for (index_t k = a.row_ptr()[i]; k < a.row_ptr()[i + 1]; ++k)
            d[static_cast<std::size_t>(i) * a.cols() + a.col_idx()[k]] = a.values()[k];
    return d;
}

struct pattern_summary {
    index_t nnz = 0;
    index_t bandwidth = 0;  // max |i - j| over stored entries
    index_t profile = 0;    // sum over rows of (i - leftmost column), clamped at 0
};

inline pattern_summary pattern_stats(const sparse_matrix& a) {
    pattern_summary s;
    s.nnz = a.nnz();
    for (index_t i = 0; i < a.rows(); ++i) {
        index_t lo = a.row_ptr()[i], hi = a.row_ptr()[i + 1];
        if (lo == hi) continue;
        for (index_t k = lo; k < hi; ++k)
            s.bandwidth = std::max(s.bandwidth, std::abs(i - a.col_idx()[k]));
        s.profile += std::max<index_t>(0, i - a.col_idx()[lo]);
    }
    return s;
}

}  // namespace hodge
