#include "dstau/linalg.hpp"

#include <utility>

namespace dstau {

RMatrix::RMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw Error("negative matrix size");
    d_.assign(static_cast<std::size_t>(rows * cols), Rational(0));
}

RMatrix RMatrix::identity(int n) {
    RMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Rational(1);
    return m;
}

std::vector<Rational> RMatrix::column(int j) const {
    std::vector<Rational> v;
    v.reserve(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i) v.push_back(at(i, j));
    return v;
}

void RMatrix::set_column(int j, const std::vector<Rational>& v) {
    if (static_cast<int>(v.size()) != rows_) throw Error("column size mismatch");
    for (int i = 0; i < rows_; ++i) at(i, j) = v[static_cast<std::size_t>(i)];
}

RMatrix operator*(const RMatrix& a, const RMatrix& b) {
    if (a.cols() != b.rows()) throw Error("matrix size mismatch");
    RMatrix r(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (int j = 0; j < b.cols(); ++j) r.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return r;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(RMatrix& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int p = -1;
        for (int i = row; i < m.rows(); ++i)
            if (!m.at(i, col).is_zero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(row, j));
        Rational inv = Rational(1) / m.at(row, col);
        for (int j = 0; j < m.cols(); ++j) m.at(row, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || m.at(i, col).is_zero()) continue;
            Rational f = m.at(i, col);
            for (int j = 0; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

int rank(const RMatrix& m) {
    RMatrix c = m;
    return static_cast<int>(rref(c).size());
}

Rational determinant(const RMatrix& m) {
    if (m.rows() != m.cols()) throw Error("determinant of a non-square matrix");
    RMatrix a = m;
    Rational det(1);
    int n = a.rows();
    for (int col = 0; col < n; ++col) {
        int p = -1;
        for (int i = col; i < n; ++i)
            if (!a.at(i, col).is_zero()) {
                p = i;
                break;
            }
        if (p < 0) return Rational(0);
        if (p != col) {
            for (int j = 0; j < n; ++j) std::swap(a.at(p, j), a.at(col, j));
            det = -det;
        }
        det *= a.at(col, col);
        for (int i = col + 1; i < n; ++i) {
            if (a.at(i, col).is_zero()) continue;
            Rational f = a.at(i, col) / a.at(col, col);
            for (int j = col; j < n; ++j) a.at(i, j) -= f * a.at(col, j);
        }
    }
    return det;
}

RMatrix inverse(const RMatrix& m) {
    if (m.rows() != m.cols()) throw Error("inverse of a non-square matrix");
    int n = m.rows();
    RMatrix aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = Rational(1);
    }
    auto piv = rref(aug);
    if (static_cast<int>(piv.size()) < n || piv[static_cast<std::size_t>(n - 1)] != n - 1)
        throw Error("singular matrix");
    RMatrix r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.at(i, j) = aug.at(i, n + j);
    return r;
}

std::vector<int> independent_columns(const RMatrix& m) {
    RMatrix c = m;
    return rref(c);
}

std::vector<std::vector<Rational>> kernel(const RMatrix& m) {
    RMatrix c = m;
    auto piv = rref(c);
    std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
    for (int p : piv) is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<std::vector<Rational>> basis;
    for (int free = 0; free < m.cols(); ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        std::vector<Rational> v(static_cast<std::size_t>(m.cols()), Rational(0));
        v[static_cast<std::size_t>(free)] = Rational(1);
        for (std::size_t r = 0; r < piv.size(); ++r) v[static_cast<std::size_t>(piv[r])] = -c.at(static_cast<int>(r), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<DiffPoly> apply(const RMatrix& m, const std::vector<DiffPoly>& v) {
    if (static_cast<int>(v.size()) != m.cols()) throw Error("matrix-vector size mismatch");
    std::vector<DiffPoly> r(static_cast<std::size_t>(m.rows()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!m.at(i, j).is_zero()) r[static_cast<std::size_t>(i)].add_scaled(v[static_cast<std::size_t>(j)], m.at(i, j));
    return r;
}

DiffPoly determinant(const std::vector<std::vector<DiffPoly>>& m) {
    std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw Error("determinant of a non-square matrix");
    if (n == 0) return DiffPoly(1);
    if (n == 1) return m[0][0];
    DiffPoly det;
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<DiffPoly>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<DiffPoly> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        det.add_product(m[0][j], determinant(minor), Rational(j % 2 == 0 ? 1 : -1));
    }
    return det;
}

}  // namespace dstau
