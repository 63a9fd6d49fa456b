#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "qrank/field.hpp"

namespace qrank {

using Rational = boost::multiprecision::cpp_rational;

// Dense matrix over Q. Only the operations needed to compute rank spaces of integer
// representations are provided; the decomposition engine works over GF(p) only.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    static QMatrix from_ints(std::size_t rows, std::size_t cols, const std::vector<i64>& entries);
    static QMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }

    QMatrix operator*(const QMatrix& o) const;
    QMatrix transpose() const;
    bool operator==(const QMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    std::vector<std::size_t> rref_inplace();
    std::size_t rank() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

// Subspace of Q^n as canonical RREF rows.
struct QSubspace {
    std::size_t ambient = 0;
    QMatrix basis;  // dim x ambient
    std::size_t dim() const { return basis.rows(); }
    bool operator==(const QSubspace& o) const { return ambient == o.ambient && basis == o.basis; }
};

QSubspace q_span_rows(const QMatrix& rows);
QSubspace q_full(std::size_t n);
QSubspace q_apply(const QMatrix& m, const QSubspace& s);
QSubspace q_intersect(const QSubspace& a, const QSubspace& b);
QSubspace q_kernel(const QMatrix& m);

}  // namespace qrank
