#include "extlin/matrix.hpp"

#include "extlin/errors.hpp"

#include <sstream>
#include <utility>

namespace extlin {

namespace {

// Below this many scalar multiply-adds the OpenMP region costs more than it saves.
constexpr std::size_t parallel_threshold = 4096;

} // namespace

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = Scalar(1);
    return m;
}

Matrix Matrix::permutation(const std::vector<std::size_t>& perm, std::size_t rows) {
    Matrix m(rows, perm.size());
    for (std::size_t j = 0; j < perm.size(); ++j)
        m(perm[j], j) = Scalar(1);
    return m;
}

Matrix Matrix::selection(const std::vector<std::size_t>& sel, std::size_t rows) {
    return permutation(sel, rows);
}

bool Matrix::is_zero() const {
    for (const auto& x : data_)
        if (!x.is_zero())
            return false;
    return true;
}

bool Matrix::is_identity() const {
    if (rows_ != cols_)
        return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            const Scalar& x = (*this)(i, j);
            if (i == j ? !x.is_one() : !x.is_zero())
                return false;
        }
    return true;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t r, std::size_t c) const {
    if (r0 + r > rows_ || c0 + c > cols_)
        throw ShapeError("block out of range");
    Matrix b(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& m) {
    if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_)
        throw ShapeError("block out of range");
    for (std::size_t i = 0; i < m.rows_; ++i)
        for (std::size_t j = 0; j < m.cols_; ++j)
            (*this)(r0 + i, c0 + j) = m(i, j);
}

void Matrix::add_block(std::size_t r0, std::size_t c0, const Matrix& m) {
    if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_)
        throw ShapeError("block out of range");
    for (std::size_t i = 0; i < m.rows_; ++i)
        for (std::size_t j = 0; j < m.cols_; ++j)
            if (!m(i, j).is_zero())
                (*this)(r0 + i, c0 + j) += m(i, j);
}

Matrix Matrix::rows_subset(const std::vector<std::size_t>& idx) const {
    Matrix m(idx.size(), cols_);
    for (std::size_t k = 0; k < idx.size(); ++k)
        for (std::size_t j = 0; j < cols_; ++j)
            m(k, j) = (*this)(idx[k], j);
    return m;
}

Matrix Matrix::cols_subset(const std::vector<std::size_t>& idx) const {
    Matrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < idx.size(); ++k)
            m(i, k) = (*this)(i, idx[k]);
    return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw ShapeError("matrix sum of mismatched shapes");
    for (std::size_t k = 0; k < data_.size(); ++k)
        if (!o.data_[k].is_zero())
            data_[k] += o.data_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw ShapeError("matrix difference of mismatched shapes");
    for (std::size_t k = 0; k < data_.size(); ++k)
        if (!o.data_[k].is_zero())
            data_[k] -= o.data_[k];
    return *this;
}

Matrix& Matrix::operator*=(const Scalar& s) {
    for (auto& x : data_)
        if (!x.is_zero())
            x *= s;
    return *this;
}

Matrix Matrix::operator-() const {
    Matrix m(*this);
    for (auto& x : m.data_)
        if (!x.is_zero())
            x = -x;
    return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.rows_ * a.cols_ * b.cols_ >= parallel_threshold)
        return kernels::matmul_parallel(a, b);
    return kernels::matmul_serial(a, b);
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j)
            os << (j ? ", " : "") << format_scalar((*this)(i, j));
        os << "]";
    }
    os << "]";
    return os.str();
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Scalar& x = a(i, j);
            if (x.is_zero())
                continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    if (!b(p, q).is_zero())
                        k(i * b.rows() + p, j * b.cols() + q) = x * b(p, q);
        }
    return k;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows())
        throw ShapeError("hstack of matrices with different row counts");
    Matrix m(a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols())
        throw ShapeError("vstack of matrices with different column counts");
    Matrix m(a.rows() + b.rows(), a.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), 0, b);
    return m;
}

Matrix block_diagonal(const std::vector<Matrix>& blocks) {
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        r += b.rows();
        c += b.cols();
    }
    Matrix m(r, c);
    r = c = 0;
    for (const auto& b : blocks) {
        m.set_block(r, c, b);
        r += b.rows();
        c += b.cols();
    }
    return m;
}

namespace kernels {

Matrix matmul_serial(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw ShapeError("matrix product of " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Scalar& x = a(i, k);
            if (x.is_zero())
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j).add_product(x, b(k, j));
        }
    return c;
}

Matrix matmul_parallel(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw ShapeError("matrix product of " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
    Matrix c(a.rows(), b.cols());
    const long rows = static_cast<long>(a.rows());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Scalar& x = a(i, k);
            if (x.is_zero())
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j).add_product(x, b(k, j));
        }
    return c;
}

namespace {

template <bool Parallel>
Rref rref_impl(Matrix m) {
    Rref out;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m(p, c).is_zero())
            ++p;
        if (p == rows)
            continue;
        if (p != r)
            for (std::size_t j = c; j < cols; ++j)
                std::swap(m(p, j), m(r, j));
        Scalar piv_inv = m(r, c).inv();
        if (!piv_inv.is_one())
            for (std::size_t j = c; j < cols; ++j)
                if (!m(r, j).is_zero())
                    m(r, j) *= piv_inv;
        // Columns of row r that can be nonzero; skipping zeros keeps sparse inputs cheap.
        std::vector<std::size_t> support;
        for (std::size_t j = c; j < cols; ++j)
            if (!m(r, j).is_zero())
                support.push_back(j);
        auto eliminate = [&](std::size_t i) {
            if (i == r || m(i, c).is_zero())
                return;
            Scalar factor = m(i, c);
            for (std::size_t j : support)
                m(i, j).sub_product(factor, m(r, j));
        };
        if constexpr (Parallel) {
            const long n = static_cast<long>(rows);
#pragma omp parallel for schedule(static) if (rows * support.size() >= parallel_threshold)
            for (long i = 0; i < n; ++i)
                eliminate(static_cast<std::size_t>(i));
        } else {
            for (std::size_t i = 0; i < rows; ++i)
                eliminate(i);
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.reduced = std::move(m);
    return out;
}

} // namespace

Rref rref_serial(Matrix m) { return rref_impl<false>(std::move(m)); }
Rref rref_parallel(Matrix m) { return rref_impl<true>(std::move(m)); }

} // namespace kernels

Rref rref(Matrix m) {
    if (m.rows() * m.cols() >= parallel_threshold)
        return kernels::rref_parallel(std::move(m));
    return kernels::rref_serial(std::move(m));
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

Nullspace nullspace(const Matrix& m) {
    Rref r = rref(m);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto p : r.pivots)
        is_pivot[p] = true;
    Nullspace out;
    for (std::size_t j = 0; j < n; ++j)
        if (!is_pivot[j])
            out.free_columns.push_back(j);
    out.basis = Matrix(n, out.free_columns.size());
    for (std::size_t k = 0; k < out.free_columns.size(); ++k) {
        std::size_t f = out.free_columns[k];
        out.basis(f, k) = Scalar(1);
        for (std::size_t i = 0; i < r.pivots.size(); ++i)
            if (!r.reduced(i, f).is_zero())
                out.basis(r.pivots[i], k) = -r.reduced(i, f);
    }
    return out;
}

LeftNullspace left_nullspace(const Matrix& m) {
    Nullspace ns = nullspace(m.transpose());
    Rref r = rref(ns.basis.transpose());
    LeftNullspace out;
    out.basis = r.reduced.block(0, 0, r.pivots.size(), m.rows());
    out.pivots = std::move(r.pivots);
    return out;
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows())
        throw ShapeError("solve: right-hand side has wrong row count");
    const std::size_t n = a.cols();
    Rref r = rref(hstack(a, b));
    Matrix x(n, b.cols());
    for (std::size_t i = 0; i < r.pivots.size(); ++i) {
        if (r.pivots[i] >= n)
            return std::nullopt;
        for (std::size_t j = 0; j < b.cols(); ++j)
            x(r.pivots[i], j) = r.reduced(i, n + j);
    }
    return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols())
        return std::nullopt;
    const std::size_t n = m.rows();
    Rref r = rref(hstack(m, Matrix::identity(n)));
    if (r.pivots.size() < n || (n > 0 && r.pivots[n - 1] != n - 1))
        return std::nullopt;
    return r.reduced.block(0, n, n, n);
}

bool is_invertible(const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

} // namespace extlin
