#pragma once

// Dense exact linear algebra over a field (gmp rationals or rational
// functions).  Plain Gaussian elimination; the matrices this library sees
// are small (Gram blocks, weight-space actions), exactness is the point.

#include <optional>
#include <vector>

#include "qcover/rational.hpp"

namespace qcover {

template <class T>
using Mat = std::vector<std::vector<T>>;

inline bool lin_is_zero(const Rat& x) { return x == 0; }
inline bool lin_is_zero(const RationalFn& x) { return x.is_zero(); }

template <class T>
Mat<T> mat_identity(size_t n) {
    Mat<T> m(n, std::vector<T>(n, T()));
    for (size_t i = 0; i < n; ++i) m[i][i] = T(1);
    return m;
}

template <class T>
Mat<T> mat_mul(const Mat<T>& a, const Mat<T>& b) {
    size_t r = a.size(), k = b.size(), c = k ? b[0].size() : 0;
    Mat<T> m(r, std::vector<T>(c, T()));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < k; ++j) {
            if (lin_is_zero(a[i][j])) continue;
            for (size_t l = 0; l < c; ++l) m[i][l] += a[i][j] * b[j][l];
        }
    return m;
}

template <class T>
std::vector<T> mat_apply(const Mat<T>& a, const std::vector<T>& v) {
    std::vector<T> r(a.size(), T());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j)
            if (!lin_is_zero(a[i][j]) && !lin_is_zero(v[j])) r[i] += a[i][j] * v[j];
    return r;
}

// row echelon in place; returns pivot columns
template <class T>
std::vector<size_t> row_echelon(Mat<T>& m) {
    std::vector<size_t> pivots;
    size_t rows = m.size(), cols = rows ? m[0].size() : 0, r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && lin_is_zero(m[p][c])) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        T inv = T(1) / m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || lin_is_zero(m[i][c])) continue;
            T f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class T>
size_t mat_rank(Mat<T> m) {
    return row_echelon(m).size();
}

// basis of the right kernel {x : m x = 0}
template <class T>
Mat<T> mat_nullspace(Mat<T> m) {
    size_t cols = m.empty() ? 0 : m[0].size();
    std::vector<size_t> pivots = row_echelon(m);
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : pivots) is_pivot[c] = true;
    Mat<T> basis;
    for (size_t fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<T> v(cols, T());
        v[fc] = T(1);
        for (size_t r = 0; r < pivots.size(); ++r) {
            // row r reads x_{pivot_r} + ... = 0
            v[pivots[r]] = T() - m[r][fc];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

// one solution of m x = b, if any
template <class T>
std::optional<std::vector<T>> mat_solve(Mat<T> m, const std::vector<T>& b) {
    size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    for (size_t i = 0; i < rows; ++i) m[i].push_back(b[i]);
    std::vector<size_t> pivots = row_echelon(m);
    std::vector<T> x(cols, T());
    for (size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == cols) return std::nullopt;  // pivot in the rhs column
        x[pivots[r]] = m[r][cols];
    }
    return x;
}

template <class T>
std::optional<Mat<T>> mat_inverse(const Mat<T>& a) {
    size_t n = a.size();
    Mat<T> m(n);
    for (size_t i = 0; i < n; ++i) {
        m[i] = a[i];
        for (size_t j = 0; j < n; ++j) m[i].push_back(i == j ? T(1) : T());
    }
    if (row_echelon(m).size() != n) return std::nullopt;
    Mat<T> inv(n, std::vector<T>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
    return inv;
}

// incremental row space in reduced echelon form; pivot rows normalized to 1
// and mutually reduced, so a single reduction pass is exact
template <class T>
class EchelonAccum {
  public:
    size_t rank() const { return rows_.size(); }
    const std::vector<size_t>& pivots() const { return piv_; }

    // subtract the accumulated rows from v; true iff a nonzero residual remains
    bool reduce(std::vector<T>& v) const {
        for (size_t r = 0; r < rows_.size(); ++r) {
            const T c = v[piv_[r]];
            if (lin_is_zero(c)) continue;
            for (size_t j = 0; j < v.size(); ++j) v[j] -= c * rows_[r][j];
        }
        for (auto& x : v)
            if (!lin_is_zero(x)) return true;
        return false;
    }

    // returns true if v enlarged the row space
    bool insert(std::vector<T> v) {
        if (!reduce(v)) return false;
        size_t p = 0;
        while (lin_is_zero(v[p])) ++p;
        T inv = T(1) / v[p];
        for (auto& x : v) x = x * inv;
        for (size_t r = 0; r < rows_.size(); ++r) {
            const T c = rows_[r][p];
            if (lin_is_zero(c)) continue;
            for (size_t j = 0; j < v.size(); ++j) rows_[r][j] -= c * v[j];
        }
        rows_.push_back(std::move(v));
        piv_.push_back(p);
        return true;
    }

  private:
    std::vector<std::vector<T>> rows_;
    std::vector<size_t> piv_;
};

template <class T>
T mat_det(Mat<T> m) {
    size_t n = m.size();
    T det = T(1);
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && lin_is_zero(m[p][c])) ++p;
        if (p == n) return T();
        if (p != c) {
            std::swap(m[p], m[c]);
            det = T() - det;
        }
        det = det * m[c][c];
        T inv = T(1) / m[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            if (lin_is_zero(m[i][c])) continue;
            T f = m[i][c] * inv;
            for (size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

}  // namespace qcover
