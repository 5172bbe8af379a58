#pragma once

#include <vector>

#include "dstau/diffpoly.hpp"

namespace dstau {

/// Dense matrix over Q. Sizes here are tiny (at most the dimension of the
/// simple Lie algebra), so plain Gaussian elimination is used throughout.
class RMatrix {
public:
    RMatrix() = default;
    RMatrix(int rows, int cols);
    static RMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& at(int i, int j) { return d_[static_cast<std::size_t>(i * cols_ + j)]; }
    const Rational& at(int i, int j) const { return d_[static_cast<std::size_t>(i * cols_ + j)]; }

    std::vector<Rational> column(int j) const;
    void set_column(int j, const std::vector<Rational>& v);

    friend RMatrix operator*(const RMatrix& a, const RMatrix& b);
    friend bool operator==(const RMatrix&, const RMatrix&) = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Rational> d_;
};

int rank(const RMatrix& m);
Rational determinant(const RMatrix& m);
/// Throws Error("singular matrix") if m is not invertible.
RMatrix inverse(const RMatrix& m);
/// Indices of a maximal set of linearly independent columns (leftmost first).
std::vector<int> independent_columns(const RMatrix& m);
/// Basis of the kernel, one vector per entry.
std::vector<std::vector<Rational>> kernel(const RMatrix& m);

/// m * v for a vector of polynomials.
std::vector<DiffPoly> apply(const RMatrix& m, const std::vector<DiffPoly>& v);

/// Determinant of a small square polynomial matrix by cofactor expansion.
DiffPoly determinant(const std::vector<std::vector<DiffPoly>>& m);

}  // namespace dstau
