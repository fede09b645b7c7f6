#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "holoq/poly.hpp"
#include "holoq/rational.hpp"

namespace holoq {

/// Dense row-major matrix over an arbitrary commutative ring T.
template <typename T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        check_same_shape(a, b);
        Matrix r = a;
        for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] = r.data_[k] + b.data_[k];
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        check_same_shape(a, b);
        Matrix r = a;
        for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] = r.data_[k] - b.data_[k];
        return r;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_ || a.cols_ == 0)
            throw std::invalid_argument("Matrix: incompatible shapes for product");
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) {
                T acc = a.at(i, 0) * b.at(0, j);
                for (std::size_t k = 1; k < a.cols_; ++k) acc = acc + a.at(i, k) * b.at(k, j);
                r.at(i, j) = acc;
            }
        return r;
    }
    friend Matrix operator*(const T& s, const Matrix& a) {
        Matrix r = a;
        for (auto& x : r.data_) x = s * x;
        return r;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    std::size_t rows_, cols_;
    std::vector<T> data_;

    static void check_same_shape(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("Matrix: shape mismatch");
    }
};

using QMatrix = Matrix<Rational>;

inline QMatrix q_identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Rational(1L);
    return m;
}

inline bool q_is_zero(const QMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m.at(i, j).is_zero()) return false;
    return true;
}

/// In-place reduced row echelon form; returns the pivot columns.
inline std::vector<std::size_t> rref(QMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && m.at(sel, col).is_zero()) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(row, j));
        const Rational inv = inverse(m.at(row, col));
        for (std::size_t j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m.at(i, col).is_zero()) continue;
            const Rational f = m.at(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

/// Basis of the right kernel, one column vector per basis element.
inline std::vector<std::vector<Rational>> kernel_basis(const QMatrix& m_in) {
    QMatrix m = m_in;
    const std::vector<std::size_t> pivots = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;

    std::vector<std::vector<Rational>> basis;
    for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Rational> v(m.cols());
        v[free_col] = Rational(1L);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, free_col);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline QMatrix q_inverse(const QMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("Matrix: inverse of non-square matrix");
    const std::size_t n = a.rows();
    QMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, n + i) = Rational(1L);
    }
    if (rref(aug).size() != n) throw std::domain_error("Matrix: singular, no inverse");
    QMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

/// Characteristic polynomial det(xI - A) by the Faddeev-LeVerrier recursion.
inline Poly charpoly(const QMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("Matrix: charpoly of non-square matrix");
    const std::size_t n = a.rows();
    std::vector<Rational> c(n + 1);
    c[n] = Rational(1L);
    QMatrix m = q_identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        m = a * m;
        Rational tr;
        for (std::size_t i = 0; i < n; ++i) tr += m.at(i, i);
        const Rational ck = -tr / Rational(static_cast<long>(k));
        c[n - k] = ck;
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) += ck;
    }
    return Poly(std::move(c));
}

/// Evaluation of p at a square matrix argument.
inline QMatrix eval_at_matrix(const Poly& p, const QMatrix& a) {
    const std::size_t n = a.rows();
    QMatrix acc(n, n);
    for (long i = p.degree(); i >= 0; --i) {
        acc = a * acc;
        const Rational& ci = p.coeff(static_cast<std::size_t>(i));
        if (!ci.is_zero())
            for (std::size_t d = 0; d < n; ++d) acc.at(d, d) += ci;
    }
    return acc;
}

}  // namespace holoq
