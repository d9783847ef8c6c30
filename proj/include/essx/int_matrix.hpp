#pragma once

#include "essx/integers.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace essx {

// Dense integer matrix with exact arbitrary-precision entries.
// Zero-dimensional shapes (0 x n, n x 0) are valid and arise routinely
// (relations of free modules, maps to and from the zero module).
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);
    static IntMatrix column(const std::vector<Int>& v);
    static IntMatrix diagonal(const std::vector<Int>& d, std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool is_zero() const;
    bool operator==(const IntMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix operator-() const;
    IntMatrix scaled(const Int& c) const;

    IntMatrix hstack(const IntMatrix& o) const;
    IntMatrix vstack(const IntMatrix& o) const;
    IntMatrix columns(const std::vector<std::size_t>& idx) const;
    IntMatrix top_rows(std::size_t n) const;

    std::vector<Int> col_vector(std::size_t j) const;
    std::vector<Int> apply(const std::vector<Int>& x) const;  // matrix * column vector

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    void row_axpy(std::size_t dst, std::size_t src, const Int& q);  // row[dst] -= q * row[src]
    void col_axpy(std::size_t dst, std::size_t src, const Int& q);  // col[dst] -= q * col[src]
    void negate_row(std::size_t i);

    std::string str() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

// u * a * v = s with u, v unimodular and s diagonal, nonnegative,
// each diagonal entry dividing the next. ui, vi are the inverses of u, v.
struct SmithForm {
    IntMatrix u, ui, s, v, vi;
};

SmithForm smith_normal_form(const IntMatrix& a);

Int determinant(const IntMatrix& a);  // Bareiss, exact

struct LinearSolve {
    bool solvable = false;
    IntMatrix solution;  // a * solution = b when solvable
};

// Solve a * x = b over the integers, columnwise (b may have many columns).
LinearSolve solve_linear(const IntMatrix& a, const IntMatrix& b);

// Columns form a basis of the integer kernel of a.
IntMatrix kernel_basis(const IntMatrix& a);

// Every column of vectors lies in the integer column span of lattice.
bool span_contains(const IntMatrix& lattice, const IntMatrix& vectors);

}  // namespace essx
