#include "qrank/matrix.hpp"

#include <cctype>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qrank {

namespace {

void check_same_field(const Field& a, const Field& b) {
    if (a != b) throw std::invalid_argument("matrices over different fields");
}

// Number of products (p-1)^2 that fit in a u64 accumulator.
u64 safe_chunk(u32 p) {
    u64 m = static_cast<u64>(p - 1) * (p - 1);
    if (m == 0) return std::numeric_limits<u64>::max();
    return std::numeric_limits<u64>::max() / m;
}

}  // namespace

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols) : f_(f), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

Matrix Matrix::identity(Field f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_ints(Field f, std::size_t rows, std::size_t cols, const std::vector<i64>& entries) {
    if (entries.size() != rows * cols) throw std::invalid_argument("entry count does not match shape");
    Matrix m(f, rows, cols);
    for (std::size_t k = 0; k < entries.size(); ++k) m.a_[k] = f.from_int(entries[k]);
    return m;
}

Matrix Matrix::random(Field f, std::size_t rows, std::size_t cols, Rng& rng) {
    Matrix m(f, rows, cols);
    for (auto& x : m.a_) x = rng.elem(f);
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    check_same_field(f_, o.f_);
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    Matrix r(f_, rows_, o.cols_);
    if (rows_ == 0 || o.cols_ == 0 || cols_ == 0) return r;
    const u32 p = f_.p();
    const u64 chunk = safe_chunk(p);
    std::vector<u64> acc(o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        u64 since = 0;
        const u32* ai = row(i);
        for (std::size_t k = 0; k < cols_; ++k) {
            u64 aik = ai[k];
            if (aik == 0) continue;
            const u32* bk = o.row(k);
            for (std::size_t j = 0; j < o.cols_; ++j) acc[j] += aik * bk[j];
            if (++since == chunk) {
                for (auto& x : acc) x %= p;
                since = 1;
            }
        }
        u32* ri = r.row(i);
        for (std::size_t j = 0; j < o.cols_; ++j) ri[j] = static_cast<u32>(acc[j] % p);
    }
    return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
    check_same_field(f_, o.f_);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum shape mismatch");
    Matrix r(*this);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = f_.add(a_[k], o.a_[k]);
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    check_same_field(f_, o.f_);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix difference shape mismatch");
    Matrix r(*this);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = f_.sub(a_[k], o.a_[k]);
    return r;
}

Matrix Matrix::scaled(u32 c) const {
    Matrix r(*this);
    for (auto& x : r.a_) x = f_.mul(x, c);
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(f_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

bool Matrix::operator==(const Matrix& o) const {
    return f_ == o.f_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool Matrix::is_zero() const {
    for (u32 x : a_)
        if (x) return false;
    return true;
}

bool Matrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1u : 0u)) return false;
    return true;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("block outside matrix");
    Matrix r(f_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
    return r;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw std::out_of_range("block outside matrix");
    for (std::size_t i = 0; i < b.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

Matrix Matrix::columns(const std::vector<std::size_t>& idx) const {
    Matrix r(f_, rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) r(i, j) = (*this)(i, idx[j]);
    return r;
}

std::vector<std::size_t> Matrix::rref_inplace() {
    std::vector<std::size_t> pivots;
    const u32 p = f_.p();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t piv = r;
        while (piv < rows_ && (*this)(piv, c) == 0) ++piv;
        if (piv == rows_) continue;
        if (piv != r)
            for (std::size_t j = c; j < cols_; ++j) std::swap((*this)(piv, j), (*this)(r, j));
        u32* pr = row(r);
        u32 inv = f_.inv(pr[c]);
        for (std::size_t j = c; j < cols_; ++j) pr[j] = f_.mul(pr[j], inv);
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r) continue;
            u32* ri = row(i);
            u32 fac = ri[c];
            if (fac == 0) continue;
            u64 nf = p - fac;
            for (std::size_t j = c; j < cols_; ++j)
                if (pr[j]) ri[j] = static_cast<u32>((ri[j] + nf * pr[j]) % p);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t Matrix::rank() const {
    Matrix m(*this);
    return m.rref_inplace().size();
}

std::optional<Matrix> Matrix::inverse() const {
    if (rows_ != cols_) return std::nullopt;
    Matrix aug = hstack(*this, identity(f_, rows_));
    auto piv = aug.rref_inplace();
    if (piv.size() < rows_ || (rows_ > 0 && piv[rows_ - 1] != rows_ - 1)) return std::nullopt;
    return aug.block(0, cols_, rows_, rows_);
}

std::string Matrix::literal() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i) os << ',';
        os << '[';
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) os << ',';
            os << f_.to_signed((*this)(i, j));
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

Matrix kron(const Matrix& a, const Matrix& b) {
    check_same_field(a.field(), b.field());
    const Field& f = a.field();
    Matrix r(f, a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            u32 x = a(i, j);
            if (!x) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = f.mul(x, b(k, l));
        }
    return r;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
    check_same_field(a.field(), b.field());
    Matrix r(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), a.cols(), b);
    return r;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
    check_same_field(a.field(), b.field());
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
    Matrix r(a.field(), a.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(0, a.cols(), b);
    return r;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
    check_same_field(a.field(), b.field());
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack column mismatch");
    Matrix r(a.field(), a.rows() + b.rows(), a.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), 0, b);
    return r;
}

Matrix parse_matrix_literal(const Field& f, std::string_view s, std::size_t rows_hint, std::size_t cols_hint) {
    std::size_t i = 0;
    auto fail = [&](const std::string& what) {
        throw std::invalid_argument("matrix literal, offset " + std::to_string(i) + ": " + what);
    };
    auto skip = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    auto expect = [&](char c) {
        skip();
        if (i >= s.size() || s[i] != c) fail(std::string("expected '") + c + "'");
        ++i;
    };
    std::vector<std::vector<i64>> rows;
    expect('[');
    skip();
    if (i < s.size() && s[i] == ']') {
        ++i;
    } else {
        for (;;) {
            expect('[');
            std::vector<i64> row;
            skip();
            if (i < s.size() && s[i] == ']') {
                ++i;
            } else {
                for (;;) {
                    skip();
                    std::size_t st = i;
                    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
                    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                    if (i == st || (i == st + 1 && !std::isdigit(static_cast<unsigned char>(s[st])))) fail("expected integer");
                    row.push_back(std::stoll(std::string(s.substr(st, i - st))));
                    skip();
                    if (i < s.size() && s[i] == ',') {
                        ++i;
                        continue;
                    }
                    expect(']');
                    break;
                }
            }
            rows.push_back(std::move(row));
            skip();
            if (i < s.size() && s[i] == ',') {
                ++i;
                continue;
            }
            expect(']');
            break;
        }
    }
    skip();
    if (i != s.size()) fail("trailing characters");
    if (rows.empty()) return Matrix(f, rows_hint, cols_hint);
    std::size_t nc = rows[0].size();
    for (auto& r : rows)
        if (r.size() != nc) fail("ragged rows");
    if (nc == 0) return Matrix(f, rows.size(), cols_hint);
    std::vector<i64> flat;
    for (auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    return Matrix::from_ints(f, rows.size(), nc, flat);
}

// ---------------------------------------------------------------- Subspace

Subspace Subspace::zero(Field f, std::size_t n) {
    Subspace s;
    s.n_ = n;
    s.basis_ = Matrix(f, 0, n);
    return s;
}

Subspace Subspace::full(Field f, std::size_t n) {
    Subspace s;
    s.n_ = n;
    s.basis_ = Matrix::identity(f, n);
    return s;
}

Subspace Subspace::span_rows(const Matrix& rows) {
    Matrix m(rows);
    auto piv = m.rref_inplace();
    Subspace s;
    s.n_ = rows.cols();
    s.basis_ = m.block(0, 0, piv.size(), rows.cols());
    return s;
}

bool Subspace::contains(const std::vector<u32>& v) const {
    if (v.size() != n_) throw std::invalid_argument("vector length does not match ambient dimension");
    Matrix m(field(), 1, n_);
    for (std::size_t j = 0; j < n_; ++j) m(0, j) = v[j] % field().p();
    return span_rows(vstack(basis_, m)).dim() == dim();
}

bool Subspace::contains(const Subspace& s) const {
    if (s.n_ != n_) throw std::invalid_argument("ambient mismatch");
    if (s.dim() > dim()) return false;
    return span_rows(vstack(basis_, s.basis_)).dim() == dim();
}

Matrix Subspace::coordinates(const Matrix& m) const {
    // basis_cols * X = m
    auto x = solve(basis_cols(), m);
    if (!x) throw std::invalid_argument("vectors not contained in subspace");
    return *x;
}

Subspace image(const Matrix& m) { return Subspace::span_cols(m); }

Subspace kernel(const Matrix& m) {
    const Field& f = m.field();
    Matrix r(m);
    auto piv = r.rref_inplace();
    std::vector<char> is_piv(m.cols(), 0);
    for (auto c : piv) is_piv[c] = 1;
    std::size_t nfree = m.cols() - piv.size();
    Matrix k(f, nfree, m.cols());
    std::size_t t = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (is_piv[c]) continue;
        k(t, c) = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) k(t, piv[i]) = f.neg(r(i, c));
        ++t;
    }
    return Subspace::span_rows(k);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw std::invalid_argument("intersect: ambient mismatch");
    const Field& f = a.field();
    if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(f, a.ambient());
    // Solve A^T x = B^T y via the stacked kernel of [A^T | -B^T].
    Matrix at = a.basis_cols();
    Matrix nb = b.basis_cols().scaled(f.neg(1));
    Subspace k = kernel(hstack(at, nb));
    Matrix xs = k.basis().block(0, 0, k.dim(), a.dim());
    return Subspace::span_rows(xs * a.basis());
}

Subspace sum(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw std::invalid_argument("sum: ambient mismatch");
    return Subspace::span_rows(vstack(a.basis(), b.basis()));
}

Subspace annihilator(const Subspace& s) { return kernel(s.basis()); }

Subspace preimage(const Matrix& m, const Subspace& s) {
    if (s.ambient() != m.rows()) throw std::invalid_argument("preimage: dimension mismatch");
    Subspace ann = annihilator(s);
    if (ann.dim() == 0) return Subspace::full(m.field(), m.cols());
    return kernel(ann.basis() * m);
}

Subspace apply(const Matrix& m, const Subspace& s) {
    if (s.ambient() != m.cols()) throw std::invalid_argument("apply: dimension mismatch");
    return image(m * s.basis_cols());
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
    const Field& f = a.field();
    Matrix aug = hstack(a, b);
    auto piv = aug.rref_inplace();
    Matrix x(f, a.cols(), b.cols());
    for (std::size_t i = 0; i < piv.size(); ++i) {
        if (piv[i] >= a.cols()) return std::nullopt;
        for (std::size_t j = 0; j < b.cols(); ++j) x(piv[i], j) = aug(i, a.cols() + j);
    }
    return x;
}

}  // namespace qrank
