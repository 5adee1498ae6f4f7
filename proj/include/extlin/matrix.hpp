#pragma once

#include "extlin/scalar.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace extlin {

/// Dense row-major matrix over Q(i).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);
    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    /// Matrix of the map e_j -> e_{perm[j]}: entry (perm[j], j) = 1.
    static Matrix permutation(const std::vector<std::size_t>& perm, std::size_t rows);
    /// rows x cols with ones at (sel[k], k): the inclusion of selected coordinates.
    static Matrix selection(const std::vector<std::size_t>& sel, std::size_t rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_zero() const;
    bool is_identity() const;

    Matrix transpose() const;
    Matrix block(std::size_t r0, std::size_t c0, std::size_t r, std::size_t c) const;
    void set_block(std::size_t r0, std::size_t c0, const Matrix& m);
    void add_block(std::size_t r0, std::size_t c0, const Matrix& m);
    Matrix rows_subset(const std::vector<std::size_t>& idx) const;
    Matrix cols_subset(const std::vector<std::size_t>& idx) const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(const Scalar& s);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
    friend Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    Matrix operator-() const;

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

Matrix kron(const Matrix& a, const Matrix& b);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix block_diagonal(const std::vector<Matrix>& blocks);

struct Rref {
    Matrix reduced;
    std::vector<std::size_t> pivots; // pivot column of each nonzero row
};

namespace kernels {

Matrix matmul_serial(const Matrix& a, const Matrix& b);
Matrix matmul_parallel(const Matrix& a, const Matrix& b);

// Pivot: first nonzero entry in column order, full reduction above and below.
Rref rref_serial(Matrix m);
Rref rref_parallel(Matrix m);

} // namespace kernels

Rref rref(Matrix m);
std::size_t rank(const Matrix& m);

/// Columns form a basis of {x : m x = 0}; the rows at free columns form an identity block.
struct Nullspace {
    Matrix basis;
    std::vector<std::size_t> free_columns;
};
Nullspace nullspace(const Matrix& m);

/// Rows form a basis, in reduced row echelon form, of {y : y m = 0}.
struct LeftNullspace {
    Matrix basis;
    std::vector<std::size_t> pivots;
};
LeftNullspace left_nullspace(const Matrix& m);

/// Some X with a X = b, or nothing when inconsistent.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
std::optional<Matrix> inverse(const Matrix& m);
bool is_invertible(const Matrix& m);

} // namespace extlin
