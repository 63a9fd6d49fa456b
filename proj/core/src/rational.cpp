#include "qrank/rational.hpp"

#include <stdexcept>

namespace qrank {

QMatrix QMatrix::from_ints(std::size_t rows, std::size_t cols, const std::vector<i64>& entries) {
    if (entries.size() != rows * cols) throw std::invalid_argument("entry count does not match shape");
    QMatrix m(rows, cols);
    for (std::size_t k = 0; k < entries.size(); ++k) m.a_[k] = entries[k];
    return m;
}

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("rational product dimension mismatch");
    QMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& x = (*this)(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
        }
    return r;
}

QMatrix QMatrix::transpose() const {
    QMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

std::vector<std::size_t> QMatrix::rref_inplace() {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t p = r;
        while (p < rows_ && (*this)(p, c) == 0) ++p;
        if (p == rows_) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(p, j), (*this)(r, j));
        Rational inv = 1 / (*this)(r, c);
        for (std::size_t j = c; j < cols_; ++j) (*this)(r, j) *= inv;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r || (*this)(i, c) == 0) continue;
            Rational fac = (*this)(i, c);
            for (std::size_t j = c; j < cols_; ++j) (*this)(i, j) -= fac * (*this)(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

std::size_t QMatrix::rank() const {
    QMatrix m(*this);
    return m.rref_inplace().size();
}

QSubspace q_span_rows(const QMatrix& rows) {
    QMatrix m(rows);
    auto piv = m.rref_inplace();
    QSubspace s;
    s.ambient = rows.cols();
    s.basis = QMatrix(piv.size(), rows.cols());
    for (std::size_t i = 0; i < piv.size(); ++i)
        for (std::size_t j = 0; j < rows.cols(); ++j) s.basis(i, j) = m(i, j);
    return s;
}

QSubspace q_full(std::size_t n) { return q_span_rows(QMatrix::identity(n)); }

QSubspace q_apply(const QMatrix& m, const QSubspace& s) {
    if (s.ambient != m.cols()) throw std::invalid_argument("q_apply: dimension mismatch");
    return q_span_rows((m * s.basis.transpose()).transpose());
}

QSubspace q_kernel(const QMatrix& m) {
    QMatrix r(m);
    auto piv = r.rref_inplace();
    std::vector<char> is_piv(m.cols(), 0);
    for (auto c : piv) is_piv[c] = 1;
    QMatrix k(m.cols() - piv.size(), m.cols());
    std::size_t t = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (is_piv[c]) continue;
        k(t, c) = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) k(t, piv[i]) = -r(i, c);
        ++t;
    }
    return q_span_rows(k);
}

QSubspace q_intersect(const QSubspace& a, const QSubspace& b) {
    if (a.ambient != b.ambient) throw std::invalid_argument("q_intersect: ambient mismatch");
    if (a.dim() == 0 || b.dim() == 0) return q_span_rows(QMatrix(0, a.ambient));
    std::size_t n = a.ambient;
    QMatrix st(n, a.dim() + b.dim());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) st(i, j) = a.basis(j, i);
        for (std::size_t j = 0; j < b.dim(); ++j) st(i, a.dim() + j) = -b.basis(j, i);
    }
    QSubspace k = q_kernel(st);
    QMatrix xs(k.dim(), a.dim());
    for (std::size_t i = 0; i < k.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) xs(i, j) = k.basis(i, j);
    return q_span_rows(xs * a.basis);
}

}  // namespace qrank
