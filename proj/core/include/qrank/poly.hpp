#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qrank/field.hpp"
#include "qrank/matrix.hpp"

namespace qrank {

// Univariate polynomial over GF(p); coefficients stored low degree first, no trailing zeros.
class Poly {
public:
    Poly() = default;
    explicit Poly(Field f) : f_(f) {}
    Poly(Field f, std::vector<u32> coeffs);
    static Poly constant(Field f, u32 c) { return Poly(f, {c}); }
    static Poly x(Field f) { return Poly(f, {0, 1}); }
    static Poly from_ints(Field f, const std::vector<i64>& coeffs);

    const Field& field() const { return f_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    u32 coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    u32 lead() const { return c_.empty() ? 0 : c_.back(); }
    const std::vector<u32>& coeffs() const { return c_; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly scaled(u32 c) const;
    bool operator==(const Poly& o) const { return f_ == o.f_ && c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly monic() const;
    Poly derivative() const;
    u32 eval(u32 x) const;
    std::string str() const;

private:
    void trim();
    Field f_{};
    std::vector<u32> c_;
};

// Quotient and remainder; throws on division by zero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
Poly gcd(const Poly& a, const Poly& b);
Poly powmod(const Poly& base, u64 e, const Poly& mod);

struct Factor {
    Poly poly;          // monic irreducible
    unsigned mult = 0;  // multiplicity
};

// Square-free decomposition followed by distinct-degree and equal-degree splitting.
// Factors are sorted by (degree, coefficients) so the output is deterministic; the
// random choices in the equal-degree step only affect running time.
std::vector<Factor> factor(const Poly& f, Rng& rng);
std::vector<Factor> factor(const Poly& f);

// True when f is irreducible, by the gcd test against x^{p^k} - x.
bool is_irreducible(const Poly& f);

// p(A) for a square matrix A.
Matrix eval_matrix(const Poly& p, const Matrix& a);

// Characteristic polynomial via Hessenberg reduction.
Poly charpoly(const Matrix& a);

}  // namespace qrank
