#include "qrank/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qrank {

Poly::Poly(Field f, std::vector<u32> coeffs) : f_(f), c_(std::move(coeffs)) {
    for (auto& x : c_) x %= f_.p();
    trim();
}

Poly Poly::from_ints(Field f, const std::vector<i64>& coeffs) {
    std::vector<u32> c;
    for (auto v : coeffs) c.push_back(f.from_int(v));
    return Poly(f, c);
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<u32> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = f_.add(coeff(i), o.coeff(i));
    return Poly(f_, r);
}

Poly Poly::operator-(const Poly& o) const {
    std::vector<u32> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = f_.sub(coeff(i), o.coeff(i));
    return Poly(f_, r);
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly(f_);
    std::vector<u32> r(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = f_.add(r[i + j], f_.mul(c_[i], o.c_[j]));
    }
    return Poly(f_, r);
}

Poly Poly::scaled(u32 c) const {
    std::vector<u32> r(c_);
    for (auto& x : r) x = f_.mul(x, c);
    return Poly(f_, r);
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scaled(f_.inv(lead()));
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly(f_);
    std::vector<u32> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = f_.mul(c_[i], static_cast<u32>(i % f_.p()));
    return Poly(f_, r);
}

u32 Poly::eval(u32 x) const {
    u32 r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = f_.add(f_.mul(r, x), c_[i]);
    return r;
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (!c_[i]) continue;
        if (!first) os << " + ";
        first = false;
        if (c_[i] != 1 || i == 0) os << c_[i];
        if (i >= 1) os << "x";
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    const Field& f = a.field();
    if (a.degree() < b.degree()) return {Poly(f), a};
    std::vector<u32> r(a.coeffs());
    std::vector<u32> q(a.degree() - b.degree() + 1, 0);
    u32 linv = f.inv(b.lead());
    const auto& bc = b.coeffs();
    for (int i = a.degree(); i >= b.degree(); --i) {
        u32 c = f.mul(r[i], linv);
        if (!c) continue;
        int shift = i - b.degree();
        q[shift] = c;
        for (std::size_t j = 0; j < bc.size(); ++j) r[shift + j] = f.sub(r[shift + j], f.mul(c, bc[j]));
    }
    return {Poly(f, q), Poly(f, r)};
}

Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

Poly powmod(const Poly& base, u64 e, const Poly& mod) {
    const Field& f = base.field();
    Poly r = Poly::constant(f, 1) % mod;
    Poly b = base % mod;
    while (e) {
        if (e & 1) r = (r * b) % mod;
        b = (b * b) % mod;
        e >>= 1;
    }
    return r;
}

namespace {

Poly pth_root(const Poly& c) {
    const Field& f = c.field();
    std::vector<u32> r;
    for (std::size_t i = 0; i < c.coeffs().size(); i += f.p()) r.push_back(c.coeffs()[i]);
    return Poly(f, r);
}

void squarefree(const Poly& f0, unsigned scale, std::vector<std::pair<Poly, unsigned>>& out) {
    const Field& f = f0.field();
    Poly one = Poly::constant(f, 1);
    Poly c = gcd(f0, f0.derivative());
    Poly w = divmod(f0, c).first.monic();
    unsigned i = 1;
    while (w.degree() > 0) {
        Poly y = gcd(w, c);
        Poly z = divmod(w, y).first.monic();
        if (z.degree() > 0) out.push_back({z, i * scale});
        ++i;
        w = y;
        c = divmod(c, y).first.monic();
    }
    if (c.degree() > 0) squarefree(pth_root(c).monic(), scale * f.p(), out);
}

// x^{p^k} mod g by repeated Frobenius.
Poly frobenius(const Poly& h, const Poly& g) { return powmod(h, h.field().p(), g); }

void equal_degree(const Poly& q, int d, Rng& rng, std::vector<Poly>& out) {
    if (q.degree() == d) {
        out.push_back(q);
        return;
    }
    const Field& f = q.field();
    for (;;) {
        std::vector<u32> a(q.degree());
        for (auto& x : a) x = rng.elem(f);
        Poly ap(f, a);
        if (ap.degree() < 1) continue;
        Poly b(f);
        if (f.p() == 2) {
            Poly t = ap, s = ap;
            for (int k = 1; k < d; ++k) {
                t = (t * t) % q;
                s = s + t;
            }
            b = s;
        } else {
            // a^{(p^d-1)/2} = (a^{1+p+...+p^{d-1}})^{(p-1)/2}
            Poly norm = ap % q, t = ap % q;
            for (int k = 1; k < d; ++k) {
                t = frobenius(t, q);
                norm = (norm * t) % q;
            }
            b = powmod(norm, (f.p() - 1) / 2, q) - Poly::constant(f, 1);
        }
        Poly g = gcd(q, b);
        if (g.degree() > 0 && g.degree() < q.degree()) {
            equal_degree(g, d, rng, out);
            equal_degree(divmod(q, g).first.monic(), d, rng, out);
            return;
        }
    }
}

bool factor_less(const Factor& a, const Factor& b) {
    if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
    if (a.poly.coeffs() != b.poly.coeffs()) return a.poly.coeffs() < b.poly.coeffs();
    return a.mult < b.mult;
}

}  // namespace

std::vector<Factor> factor(const Poly& f, Rng& rng) {
    if (f.is_zero()) throw std::invalid_argument("factor: zero polynomial");
    std::vector<Factor> result;
    if (f.degree() == 0) return result;
    const Field& fld = f.field();
    std::vector<std::pair<Poly, unsigned>> sqf;
    squarefree(f.monic(), 1, sqf);
    for (auto& [g0, mult] : sqf) {
        Poly g = g0;
        Poly h = Poly::x(fld) % g;
        Poly xg = h;
        int d = 1;
        while (g.degree() >= 2 * d) {
            h = frobenius(h, g);
            Poly q = gcd(g, h - Poly::x(fld));
            if (q.degree() > 0) {
                std::vector<Poly> parts;
                equal_degree(q, d, rng, parts);
                for (auto& pp : parts) result.push_back({pp, mult});
                g = divmod(g, q).first.monic();
                h = h % g;
            }
            ++d;
        }
        if (g.degree() > 0) result.push_back({g, mult});
        (void)xg;
    }
    // Merge equal irreducibles coming from different square-free layers (only possible in
    // characteristic p through the p-th root step).
    std::sort(result.begin(), result.end(), factor_less);
    std::vector<Factor> merged;
    for (auto& fc : result) {
        if (!merged.empty() && merged.back().poly == fc.poly)
            merged.back().mult += fc.mult;
        else
            merged.push_back(fc);
    }
    return merged;
}

std::vector<Factor> factor(const Poly& f) {
    Rng rng(0x5eed);
    return factor(f, rng);
}

bool is_irreducible(const Poly& f0) {
    if (f0.is_zero() || f0.degree() < 1) return false;
    Poly f = f0.monic();
    const Field& fld = f.field();
    Poly x = Poly::x(fld) % f;
    Poly h = x;
    int n = f.degree();
    for (int k = 1; k <= n / 2; ++k) {
        h = frobenius(h, f);
        if (gcd(f, h - x).degree() > 0) return false;
    }
    return true;
}

Matrix eval_matrix(const Poly& p, const Matrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("eval_matrix: square matrix required");
    const Field& f = a.field();
    std::size_t n = a.rows();
    Matrix r(f, n, n);
    const auto& c = p.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) {
        r = r * a;
        for (std::size_t k = 0; k < n; ++k) r(k, k) = f.add(r(k, k), c[i]);
    }
    return r;
}

Poly charpoly(const Matrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("charpoly: square matrix required");
    const Field& f = a.field();
    const std::size_t n = a.rows();
    Matrix h(a);
    for (std::size_t j = 0; j + 2 < n; ++j) {
        std::size_t piv = j + 1;
        while (piv < n && h(piv, j) == 0) ++piv;
        if (piv == n) continue;
        if (piv != j + 1) {
            for (std::size_t c = 0; c < n; ++c) std::swap(h(piv, c), h(j + 1, c));
            for (std::size_t r = 0; r < n; ++r) std::swap(h(r, piv), h(r, j + 1));
        }
        u32 inv = f.inv(h(j + 1, j));
        for (std::size_t k = j + 2; k < n; ++k) {
            u32 u = f.mul(h(k, j), inv);
            if (!u) continue;
            for (std::size_t c = 0; c < n; ++c) h(k, c) = f.sub(h(k, c), f.mul(u, h(j + 1, c)));
            for (std::size_t r = 0; r < n; ++r) h(r, j + 1) = f.add(h(r, j + 1), f.mul(u, h(r, k)));
        }
    }
    // p_m = (x - h_mm) p_{m-1} - sum_{i<m} h_im (prod_{j=i+1}^{m} h_{j,j-1}) p_{i-1}, 1-indexed.
    std::vector<Poly> ps;
    ps.push_back(Poly::constant(f, 1));
    for (std::size_t m = 1; m <= n; ++m) {
        Poly pm = (Poly::x(f) - Poly::constant(f, h(m - 1, m - 1))) * ps[m - 1];
        u32 prod = 1;
        for (std::size_t i = m - 1; i >= 1; --i) {
            prod = f.mul(prod, h(i, i - 1));
            if (!prod) break;
            u32 coef = f.mul(h(i - 1, m - 1), prod);
            if (coef) pm = pm - ps[i - 1].scaled(coef);
        }
        ps.push_back(pm);
    }
    return ps[n];
}

}  // namespace qrank
