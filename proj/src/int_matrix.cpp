#include "essx/int_matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace essx {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows[0].size();
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("from_rows: ragged rows");
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::column(const std::vector<Int>& v) {
    IntMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m.at(i, 0) = v[i];
    return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<Int>& d, std::size_t rows, std::size_t cols) {
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < d.size() && i < rows && i < cols; ++i) m.at(i, i) = d[i];
    return m;
}

bool IntMatrix::is_zero() const {
    for (const Int& x : a_)
        if (x != 0) return false;
    return true;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    IntMatrix m(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& aik = at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) m.at(i, j) += aik * o.at(k, j);
        }
    return m;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum shape mismatch");
    IntMatrix m = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] += o.a_[i];
    return m;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix difference shape mismatch");
    IntMatrix m = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] -= o.a_[i];
    return m;
}

IntMatrix IntMatrix::operator-() const {
    IntMatrix m = *this;
    for (Int& x : m.a_) x = -x;
    return m;
}

IntMatrix IntMatrix::scaled(const Int& c) const {
    IntMatrix m = *this;
    for (Int& x : m.a_) x *= c;
    return m;
}

IntMatrix IntMatrix::hstack(const IntMatrix& o) const {
    if (rows_ != o.rows_) throw std::invalid_argument("hstack row mismatch");
    IntMatrix m(rows_, cols_ + o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
        for (std::size_t j = 0; j < o.cols_; ++j) m.at(i, cols_ + j) = o.at(i, j);
    }
    return m;
}

IntMatrix IntMatrix::vstack(const IntMatrix& o) const {
    if (cols_ != o.cols_) throw std::invalid_argument("vstack column mismatch");
    IntMatrix m(rows_ + o.rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
    for (std::size_t i = 0; i < o.rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(rows_ + i, j) = o.at(i, j);
    return m;
}

IntMatrix IntMatrix::columns(const std::vector<std::size_t>& idx) const {
    IntMatrix m(rows_, idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j)
        for (std::size_t i = 0; i < rows_; ++i) m.at(i, j) = at(i, idx[j]);
    return m;
}

IntMatrix IntMatrix::top_rows(std::size_t n) const {
    IntMatrix m(n, cols_);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
    return m;
}

std::vector<Int> IntMatrix::col_vector(std::size_t j) const {
    std::vector<Int> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("apply: vector length mismatch");
    std::vector<Int> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != 0) y[i] += at(i, j) * x[j];
    return y;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
}

void IntMatrix::row_axpy(std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (std::size_t k = 0; k < cols_; ++k) at(dst, k) -= q * at(src, k);
}

void IntMatrix::col_axpy(std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (std::size_t k = 0; k < rows_; ++k) at(k, dst) -= q * at(k, src);
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t k = 0; k < cols_; ++k) at(i, k) = -at(i, k);
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j).str();
        os << "]";
    }
    os << "]";
    return os.str();
}

namespace {

// Tracks u, ui, v, vi alongside the working matrix.
// Invariant: u * a * v = s and ui * u = I, vi * v = I at all times.
struct SnfState {
    SmithForm f;

    explicit SnfState(const IntMatrix& a)
        : f{IntMatrix::identity(a.rows()), IntMatrix::identity(a.rows()), a,
            IntMatrix::identity(a.cols()), IntMatrix::identity(a.cols())} {}

    void row_swap(std::size_t i, std::size_t j) {
        f.s.swap_rows(i, j);
        f.u.swap_rows(i, j);
        f.ui.swap_cols(i, j);
    }
    void col_swap(std::size_t i, std::size_t j) {
        f.s.swap_cols(i, j);
        f.v.swap_cols(i, j);
        f.vi.swap_rows(i, j);
    }
    void row_sub(std::size_t dst, std::size_t src, const Int& q) {
        f.s.row_axpy(dst, src, q);
        f.u.row_axpy(dst, src, q);
        f.ui.col_axpy(src, dst, -q);
    }
    void col_sub(std::size_t dst, std::size_t src, const Int& q) {
        f.s.col_axpy(dst, src, q);
        f.v.col_axpy(dst, src, q);
        f.vi.row_axpy(src, dst, -q);
    }
    void col_negate(std::size_t j) {
        for (std::size_t k = 0; k < f.s.rows(); ++k) f.s.at(k, j) = -f.s.at(k, j);
        for (std::size_t k = 0; k < f.v.rows(); ++k) f.v.at(k, j) = -f.v.at(k, j);
        f.vi.negate_row(j);
    }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
    SnfState st(a);
    IntMatrix& s = st.f.s;
    const std::size_t m = a.rows(), n = a.cols();
    const std::size_t bound = m < n ? m : n;

    for (std::size_t t = 0; t < bound; ++t) {
        bool block_empty = false;
        while (true) {
            // minimal-absolute-value nonzero pivot in the trailing block
            std::size_t pi = m, pj = n;
            Int best = 0;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    const Int& x = s.at(i, j);
                    if (x == 0) continue;
                    Int ax = abs_int(x);
                    if (pi == m || ax < best) {
                        best = ax;
                        pi = i;
                        pj = j;
                    }
                }
            if (pi == m) {
                block_empty = true;
                break;
            }
            st.row_swap(t, pi);
            st.col_swap(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (s.at(i, t) == 0) continue;
                Int q = s.at(i, t) / s.at(t, t);
                st.row_sub(i, t, q);
                if (s.at(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (s.at(t, j) == 0) continue;
                Int q = s.at(t, j) / s.at(t, t);
                st.col_sub(j, t, q);
                if (s.at(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // pivot must divide every entry of the trailing block,
            // which makes the diagonal a divisibility chain
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (s.at(i, j) % s.at(t, t) != 0) {
                        st.row_sub(t, i, Int(-1));  // add row i to row t
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (block_empty) break;
        if (s.at(t, t) < 0) st.col_negate(t);
    }
    return std::move(st.f);
}

Int determinant(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant: matrix not square");
    std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMatrix w = a;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (w.at(k, k) == 0) {
            std::size_t swap_row = n;
            for (std::size_t i = k + 1; i < n; ++i)
                if (w.at(i, k) != 0) {
                    swap_row = i;
                    break;
                }
            if (swap_row == n) return 0;
            w.swap_rows(k, swap_row);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                w.at(i, j) = (w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j)) / prev;
        prev = w.at(k, k);
    }
    Int d = w.at(n - 1, n - 1);
    return sign > 0 ? d : Int(-d);
}

LinearSolve solve_linear(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve_linear: shape mismatch");
    SmithForm f = smith_normal_form(a);
    IntMatrix c = f.u * b;
    const std::size_t m = a.rows(), n = a.cols(), k = b.cols();
    const std::size_t bound = m < n ? m : n;
    IntMatrix y(n, k);
    for (std::size_t col = 0; col < k; ++col) {
        for (std::size_t i = 0; i < m; ++i) {
            Int d = i < bound ? f.s.at(i, i) : Int(0);
            if (d != 0) {
                if (c.at(i, col) % d != 0) return {};
                y.at(i, col) = c.at(i, col) / d;
            } else if (c.at(i, col) != 0) {
                return {};
            }
        }
    }
    return {true, f.v * y};
}

IntMatrix kernel_basis(const IntMatrix& a) {
    SmithForm f = smith_normal_form(a);
    const std::size_t m = a.rows(), n = a.cols();
    const std::size_t bound = m < n ? m : n;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < n; ++j)
        if (j >= bound || f.s.at(j, j) == 0) free_cols.push_back(j);
    return f.v.columns(free_cols);
}

bool span_contains(const IntMatrix& lattice, const IntMatrix& vectors) {
    return solve_linear(lattice, vectors).solvable;
}

}  // namespace essx
