#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qrank/field.hpp"

namespace qrank {

// Dense row-major matrix over GF(p). The matrix of a linear map U -> W has dim W rows
// and dim U columns and acts on column vectors.
class Matrix {
public:
    Matrix() = default;
    Matrix(Field f, std::size_t rows, std::size_t cols);

    static Matrix zero(Field f, std::size_t rows, std::size_t cols) { return Matrix(f, rows, cols); }
    static Matrix identity(Field f, std::size_t n);
    static Matrix from_ints(Field f, std::size_t rows, std::size_t cols, const std::vector<i64>& entries);
    static Matrix random(Field f, std::size_t rows, std::size_t cols, Rng& rng);

    const Field& field() const { return f_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    u32 operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    u32& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const u32* row(std::size_t i) const { return a_.data() + i * cols_; }
    u32* row(std::size_t i) { return a_.data() + i * cols_; }
    const std::vector<u32>& data() const { return a_; }

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix scaled(u32 c) const;
    Matrix transpose() const;
    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }
    bool is_zero() const;
    bool is_identity() const;

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
    Matrix columns(const std::vector<std::size_t>& idx) const;

    std::size_t rank() const;
    std::optional<Matrix> inverse() const;

    // In-place reduced row echelon form; returns pivot columns.
    std::vector<std::size_t> rref_inplace();

    // Matrix literal "[[1,0],[2,3]]" with entries printed as symmetric residues.
    std::string literal() const;

private:
    Field f_{};
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<u32> a_;
};

Matrix kron(const Matrix& a, const Matrix& b);
Matrix block_diag(const Matrix& a, const Matrix& b);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);

// Parses a matrix literal. Shapes that cannot be inferred from an empty literal use the
// hints. Throws std::invalid_argument with a column offset on malformed input.
Matrix parse_matrix_literal(const Field& f, std::string_view text, std::size_t rows_hint = 0,
                            std::size_t cols_hint = 0);

// Subspace of K^n stored as a basis in canonical reduced row echelon form, one vector per row.
class Subspace {
public:
    Subspace() = default;
    static Subspace zero(Field f, std::size_t n);
    static Subspace full(Field f, std::size_t n);
    // Row span of the given rows.
    static Subspace span_rows(const Matrix& rows);
    // Column span.
    static Subspace span_cols(const Matrix& cols) { return span_rows(cols.transpose()); }

    const Field& field() const { return basis_.field(); }
    std::size_t ambient() const { return n_; }
    std::size_t dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    // Basis vectors as columns (n x dim).
    Matrix basis_cols() const { return basis_.transpose(); }

    bool contains(const std::vector<u32>& v) const;
    bool contains(const Subspace& s) const;
    bool operator==(const Subspace& o) const { return n_ == o.n_ && basis_ == o.basis_; }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

    // Coordinates of the columns of m (each in this subspace) w.r.t. the canonical basis.
    Matrix coordinates(const Matrix& m) const;

private:
    std::size_t n_ = 0;
    Matrix basis_;
};

Subspace image(const Matrix& m);
Subspace kernel(const Matrix& m);
Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);
Subspace preimage(const Matrix& m, const Subspace& s);
Subspace apply(const Matrix& m, const Subspace& s);
// Vectors y with y . s = 0 for all s (annihilator), as a subspace of the same ambient.
Subspace annihilator(const Subspace& s);

// Some X with A X = B, or nothing if the system is inconsistent.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

}  // namespace qrank
