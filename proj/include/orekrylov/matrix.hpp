#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "orekrylov/ratfunc.hpp"

namespace orekrylov {

// Dense rectangular matrix over an exact ring/field T.
template <class T>
class Mat {
  public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols) : rows_(rows), cols_(cols), e_(std::size_t(rows) * cols, T()) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    }
    Mat(int rows, int cols, std::vector<T> entries)
        : rows_(rows), cols_(cols), e_(std::move(entries)) {
        if (e_.size() != std::size_t(rows) * cols) throw std::invalid_argument("matrix entry count");
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = T(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    T& at(int i, int j) { return e_[std::size_t(i) * cols_ + j]; }
    const T& at(int i, int j) const { return e_[std::size_t(i) * cols_ + j]; }
    const std::vector<T>& entries() const { return e_; }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

    friend Mat operator+(const Mat& a, const Mat& b) {
        a.check_same_shape(b);
        Mat r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] + b.e_[i];
        return r;
    }
    friend Mat operator-(const Mat& a, const Mat& b) {
        a.check_same_shape(b);
        Mat r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] - b.e_[i];
        return r;
    }
    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Mat r(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const T& aik = a.at(i, k);
                if (aik == T()) continue;
                for (int j = 0; j < b.cols_; ++j) r.at(i, j) += aik * b.at(k, j);
            }
        return r;
    }
    friend Mat operator*(const T& s, const Mat& a) {
        Mat r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = s * a.e_[i];
        return r;
    }

    Mat transposed() const {
        Mat r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    std::vector<T> column(int j) const {
        std::vector<T> c(static_cast<std::size_t>(rows_));
        for (int i = 0; i < rows_; ++i) c[std::size_t(i)] = at(i, j);
        return c;
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("matrix-vector shape");
        std::vector<T> r(static_cast<std::size_t>(rows_), T());
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r[std::size_t(i)] += at(i, j) * v[std::size_t(j)];
        return r;
    }

    Mat submatrix(const std::vector<int>& row_idx, const std::vector<int>& col_idx) const {
        Mat r(static_cast<int>(row_idx.size()), static_cast<int>(col_idx.size()));
        for (std::size_t i = 0; i < row_idx.size(); ++i)
            for (std::size_t j = 0; j < col_idx.size(); ++j)
                r.at(static_cast<int>(i), static_cast<int>(j)) = at(row_idx[i], col_idx[j]);
        return r;
    }

    template <class U, class F>
    Mat<U> map(F&& f) const {
        Mat<U> r(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(i, j) = f(at(i, j));
        return r;
    }

    friend Mat kron(const Mat& a, const Mat& b) {
        Mat r(a.rows_ * b.rows_, a.cols_ * b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int j = 0; j < a.cols_; ++j)
                for (int k = 0; k < b.rows_; ++k)
                    for (int l = 0; l < b.cols_; ++l)
                        r.at(i * b.rows_ + k, j * b.cols_ + l) = a.at(i, j) * b.at(k, l);
        return r;
    }

  private:
    void check_same_shape(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }

    int rows_, cols_;
    std::vector<T> e_;
};

using PolyMatrix = Mat<Poly>;
using RatMatrix = Mat<RatFunc>;

// ---- field algorithms (T must support exact division) ----

// Row echelon reduction in place; returns pivot column indices.
template <class T>
std::vector<int> row_echelon(Mat<T>& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int piv = -1;
        for (int i = row; i < m.rows(); ++i)
            if (!(m.at(i, col) == T())) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(row, j));
        T inv = T(1) / m.at(row, col);
        for (int j = col; j < m.cols(); ++j) m.at(row, j) = inv * m.at(row, j);
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row) continue;
            T f = m.at(i, col);
            if (f == T()) continue;
            for (int j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class T>
int rank(Mat<T> m) {
    return static_cast<int>(row_echelon(m).size());
}

// Right kernel basis (columns), computed from the reduced echelon form.
template <class T>
std::vector<std::vector<T>> kernel_basis(Mat<T> m) {
    const int n = m.cols();
    std::vector<int> pivots = row_echelon(m);
    std::vector<bool> is_pivot(std::size_t(n), false);
    for (int p : pivots) is_pivot[std::size_t(p)] = true;
    std::vector<std::vector<T>> basis;
    for (int free = 0; free < n; ++free) {
        if (is_pivot[std::size_t(free)]) continue;
        std::vector<T> v(static_cast<std::size_t>(n), T());
        v[std::size_t(free)] = T(1);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[std::size_t(pivots[r])] = -m.at(static_cast<int>(r), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Determinant over a field by Gaussian elimination.
template <class T>
T field_det(Mat<T> m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const int n = m.rows();
    T det(1);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (!(m.at(i, col) == T())) {
                piv = i;
                break;
            }
        if (piv < 0) return T();
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
            det = T() - det;
        }
        det = det * m.at(col, col);
        T inv = T(1) / m.at(col, col);
        for (int i = col + 1; i < n; ++i) {
            T f = inv * m.at(i, col);
            if (f == T()) continue;
            for (int j = col; j < n; ++j) m.at(i, j) -= f * m.at(col, j);
        }
    }
    return det;
}

// Determinant of a polynomial matrix by Bareiss fraction-free elimination;
// all divisions below are exact in k[x].
inline Poly poly_det(PolyMatrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const int n = m.rows();
    if (n == 0) return Poly(1);
    Poly prev(1);
    int sign = 1;
    for (int col = 0; col < n - 1; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (!m.at(i, col).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) return Poly();
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
            sign = -sign;
        }
        for (int i = col + 1; i < n; ++i) {
            for (int j = col + 1; j < n; ++j) {
                Poly v = m.at(i, j) * m.at(col, col) - m.at(i, col) * m.at(col, j);
                m.at(i, j) = v / prev;
            }
            m.at(i, col) = Poly();
        }
        prev = m.at(col, col);
    }
    Poly d = m.at(n - 1, n - 1);
    return sign < 0 ? -d : d;
}

// Enumerates all size-k index subsets of {0..n-1}.
inline std::vector<std::vector<int>> index_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[std::size_t(i)] = i;
    while (true) {
        out.push_back(idx);
        int i = k - 1;
        while (i >= 0 && idx[std::size_t(i)] == n - k + i) --i;
        if (i < 0) break;
        ++idx[std::size_t(i)];
        for (int j = i + 1; j < k; ++j) idx[std::size_t(j)] = idx[std::size_t(j - 1)] + 1;
    }
    return out;
}

inline RatMatrix to_rat_matrix(const PolyMatrix& m) {
    return m.map<RatFunc>([](const Poly& p) { return RatFunc(p); });
}

}  // namespace orekrylov
