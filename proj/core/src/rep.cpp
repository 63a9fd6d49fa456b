#include "qrank/rep.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include "lexer.hpp"

namespace qrank {

namespace {

void require_same_quiver(const Rep& v, const Rep& w, const char* what) {
    if (v.quiver_ptr() != w.quiver_ptr() && !v.quiver().same_shape(w.quiver()))
        throw std::invalid_argument(std::string(what) + ": representations live on different quivers");
    if (v.field() != w.field()) throw std::invalid_argument(std::string(what) + ": field mismatch");
}

std::string shape(std::size_t r, std::size_t c) { return std::to_string(r) + "x" + std::to_string(c); }

}  // namespace

// ---------------------------------------------------------------- Rep

Rep::Rep(std::shared_ptr<const Quiver> q, Field f, std::vector<std::size_t> dims, std::vector<Matrix> mats)
    : q_(std::move(q)), f_(f), dims_(std::move(dims)), mats_(std::move(mats)) {
    if (!q_) throw std::invalid_argument("Rep: null quiver");
    if (dims_.size() != q_->vertex_count()) throw std::invalid_argument("Rep: one dimension per vertex expected");
    if (mats_.size() != q_->arrow_count()) throw std::invalid_argument("Rep: one matrix per arrow expected");
    for (std::size_t a = 0; a < mats_.size(); ++a) {
        const Arrow& ar = q_->arrow(a);
        const Matrix& m = mats_[a];
        if (m.rows() != dims_[ar.head] || m.cols() != dims_[ar.tail])
            throw std::invalid_argument("Rep: matrix of arrow '" + ar.name + "' is " + shape(m.rows(), m.cols()) +
                                        ", expected " + shape(dims_[ar.head], dims_[ar.tail]));
        if ((m.rows() || m.cols()) && m.field() != f_)
            throw std::invalid_argument("Rep: matrix of arrow '" + ar.name + "' is over another field");
    }
    // Zero-size matrices may carry a default field; normalize them.
    for (auto& m : mats_)
        if (m.rows() * m.cols() == 0 && m.field() != f_) m = Matrix(f_, m.rows(), m.cols());
}

std::size_t Rep::total_dim() const {
    std::size_t s = 0;
    for (auto d : dims_) s += d;
    return s;
}

bool Rep::operator==(const Rep& o) const {
    return f_ == o.f_ && dims_ == o.dims_ && mats_ == o.mats_ && q_->same_shape(*o.q_);
}

// ---------------------------------------------------------------- morphisms

bool is_morphism(const Rep& v, const Rep& w, const RepMorphism& f) {
    const Quiver& q = v.quiver();
    if (f.maps.size() != q.vertex_count()) return false;
    for (std::size_t x = 0; x < q.vertex_count(); ++x)
        if (f.maps[x].rows() != w.dim(x) || f.maps[x].cols() != v.dim(x)) return false;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const Arrow& ar = q.arrow(a);
        if (w.mat(a) * f.maps[ar.tail] != f.maps[ar.head] * v.mat(a)) return false;
    }
    return true;
}

RepMorphism identity_morphism(const Rep& v) {
    RepMorphism r;
    for (auto d : v.dims()) r.maps.push_back(Matrix::identity(v.field(), d));
    return r;
}

RepMorphism compose(const RepMorphism& g, const RepMorphism& f) {
    RepMorphism r;
    for (std::size_t x = 0; x < f.maps.size(); ++x) r.maps.push_back(g.maps.at(x) * f.maps[x]);
    return r;
}

RepMorphism operator+(const RepMorphism& a, const RepMorphism& b) {
    RepMorphism r;
    for (std::size_t x = 0; x < a.maps.size(); ++x) r.maps.push_back(a.maps[x] + b.maps.at(x));
    return r;
}

RepMorphism scaled(const RepMorphism& a, u32 c) {
    RepMorphism r;
    for (const auto& m : a.maps) r.maps.push_back(m.scaled(c));
    return r;
}

bool is_zero(const RepMorphism& f) {
    for (const auto& m : f.maps)
        if (!m.is_zero()) return false;
    return true;
}

std::vector<RepMorphism> hom_space(const Rep& v, const Rep& w) {
    require_same_quiver(v, w, "hom_space");
    const Quiver& q = v.quiver();
    const Field& f = v.field();
    const std::size_t n = q.vertex_count();
    std::vector<std::size_t> off(n + 1, 0);
    for (std::size_t x = 0; x < n; ++x) off[x + 1] = off[x] + w.dim(x) * v.dim(x);
    const std::size_t unknowns = off[n];
    if (unknowns == 0) return {};
    std::size_t eqs = 0;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) eqs += w.dim(q.arrow(a).head) * v.dim(q.arrow(a).tail);
    Matrix sys(f, eqs, unknowns);
    std::size_t row = 0;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const std::size_t t = q.arrow(a).tail, h = q.arrow(a).head;
        const Matrix& Wa = w.mat(a);
        const Matrix& Va = v.mat(a);
        const std::size_t dvt = v.dim(t), dwt = w.dim(t), dvh = v.dim(h), dwh = w.dim(h);
        // Entry (i, j) of W_a phi_t - phi_h V_a.
        for (std::size_t i = 0; i < dwh; ++i)
            for (std::size_t j = 0; j < dvt; ++j, ++row) {
                u32* r = sys.row(row);
                for (std::size_t k = 0; k < dwt; ++k) {
                    std::size_t col = off[t] + k * dvt + j;
                    r[col] = f.add(r[col], Wa(i, k));
                }
                for (std::size_t k = 0; k < dvh; ++k) {
                    std::size_t col = off[h] + i * dvh + k;
                    r[col] = f.sub(r[col], Va(k, j));
                }
            }
    }
    Subspace ker = kernel(sys);
    std::vector<RepMorphism> out;
    for (std::size_t b = 0; b < ker.dim(); ++b) {
        RepMorphism m;
        const u32* r = ker.basis().row(b);
        for (std::size_t x = 0; x < n; ++x) {
            Matrix phi(f, w.dim(x), v.dim(x));
            for (std::size_t i = 0; i < w.dim(x); ++i)
                for (std::size_t j = 0; j < v.dim(x); ++j) phi(i, j) = r[off[x] + i * v.dim(x) + j];
            m.maps.push_back(std::move(phi));
        }
        out.push_back(std::move(m));
    }
    return out;
}

std::size_t hom_dim(const Rep& v, const Rep& w) { return hom_space(v, w).size(); }

RepMorphism combine(const std::vector<RepMorphism>& basis, const std::vector<u32>& coeffs, const Rep& v,
                    const Rep& w) {
    RepMorphism r;
    for (std::size_t x = 0; x < v.quiver().vertex_count(); ++x) r.maps.emplace_back(v.field(), w.dim(x), v.dim(x));
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (coeffs.at(i) == 0) continue;
        for (std::size_t x = 0; x < r.maps.size(); ++x) r.maps[x] = r.maps[x] + basis[i].maps[x].scaled(coeffs[i]);
    }
    return r;
}

// ---------------------------------------------------------------- constructions

Rep zero_rep(std::shared_ptr<const Quiver> q, Field f) {
    std::vector<std::size_t> dims(q->vertex_count(), 0);
    std::vector<Matrix> mats(q->arrow_count(), Matrix(f, 0, 0));
    return Rep(std::move(q), f, std::move(dims), std::move(mats));
}

Rep identity_rep(std::shared_ptr<const Quiver> q, Field f) {
    std::vector<std::size_t> dims(q->vertex_count(), 1);
    std::vector<Matrix> mats(q->arrow_count(), Matrix::identity(f, 1));
    return Rep(std::move(q), f, std::move(dims), std::move(mats));
}

Rep simple_rep(std::shared_ptr<const Quiver> q, Field f, std::size_t v) {
    std::vector<std::size_t> dims(q->vertex_count(), 0);
    dims.at(v) = 1;
    std::vector<Matrix> mats;
    for (std::size_t a = 0; a < q->arrow_count(); ++a)
        mats.emplace_back(f, dims[q->arrow(a).head], dims[q->arrow(a).tail]);
    return Rep(std::move(q), f, std::move(dims), std::move(mats));
}

Rep random_rep(std::shared_ptr<const Quiver> q, Field f, const std::vector<std::size_t>& dims, Rng& rng) {
    std::vector<Matrix> mats;
    for (std::size_t a = 0; a < q->arrow_count(); ++a)
        mats.push_back(Matrix::random(f, dims.at(q->arrow(a).head), dims.at(q->arrow(a).tail), rng));
    return Rep(std::move(q), f, dims, std::move(mats));
}

Rep dsum(const Rep& v, const Rep& w) {
    require_same_quiver(v, w, "dsum");
    std::vector<std::size_t> dims;
    for (std::size_t x = 0; x < v.dims().size(); ++x) dims.push_back(v.dim(x) + w.dim(x));
    std::vector<Matrix> mats;
    for (std::size_t a = 0; a < v.mats().size(); ++a) {
        Matrix m(v.field(), v.mat(a).rows() + w.mat(a).rows(), v.mat(a).cols() + w.mat(a).cols());
        m.set_block(0, 0, v.mat(a));
        m.set_block(v.mat(a).rows(), v.mat(a).cols(), w.mat(a));
        mats.push_back(std::move(m));
    }
    return Rep(v.quiver_ptr(), v.field(), std::move(dims), std::move(mats));
}

Rep dsum(const std::vector<Rep>& parts) {
    if (parts.empty()) throw std::invalid_argument("dsum: empty list");
    Rep r = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) r = dsum(r, parts[i]);
    return r;
}

Rep tensor(const Rep& v, const Rep& w) {
    require_same_quiver(v, w, "tensor");
    std::vector<std::size_t> dims;
    for (std::size_t x = 0; x < v.dims().size(); ++x) dims.push_back(v.dim(x) * w.dim(x));
    std::vector<Matrix> mats;
    for (std::size_t a = 0; a < v.mats().size(); ++a) {
        const Arrow& ar = v.quiver().arrow(a);
        if (dims[ar.head] == 0 || dims[ar.tail] == 0)
            mats.emplace_back(v.field(), dims[ar.head], dims[ar.tail]);
        else
            mats.push_back(kron(v.mat(a), w.mat(a)));
    }
    return Rep(v.quiver_ptr(), v.field(), std::move(dims), std::move(mats));
}

Rep pullback(std::shared_ptr<const Quiver> src, const QuiverMap& f, const Rep& w) {
    if (!is_quiver_map(*src, w.quiver(), f)) throw std::invalid_argument("pullback: not a quiver map");
    std::vector<std::size_t> dims;
    for (auto x : f.vertex) dims.push_back(w.dim(x));
    std::vector<Matrix> mats;
    for (auto a : f.arrow) mats.push_back(w.mat(a));
    return Rep(std::move(src), w.field(), std::move(dims), std::move(mats));
}

Rep pushforward(std::shared_ptr<const Quiver> tgt, const QuiverMap& f, const Rep& v) {
    const Quiver& src = v.quiver();
    if (!is_quiver_map(src, *tgt, f)) throw std::invalid_argument("pushforward: not a quiver map");
    std::vector<std::size_t> dims(tgt->vertex_count(), 0), off(src.vertex_count(), 0);
    for (std::size_t y = 0; y < src.vertex_count(); ++y) {
        off[y] = dims[f.vertex[y]];
        dims[f.vertex[y]] += v.dim(y);
    }
    std::vector<Matrix> mats;
    for (std::size_t a = 0; a < tgt->arrow_count(); ++a)
        mats.emplace_back(v.field(), dims[tgt->arrow(a).head], dims[tgt->arrow(a).tail]);
    for (std::size_t b = 0; b < src.arrow_count(); ++b)
        mats[f.arrow[b]].set_block(off[src.arrow(b).head], off[src.arrow(b).tail], v.mat(b));
    return Rep(std::move(tgt), v.field(), std::move(dims), std::move(mats));
}

Rep restrict(const Rep& v, const Embedded& p) { return pullback(p.tree.quiver_ptr(), p.map, v); }

Support support(const Rep& v) {
    const Quiver& q = v.quiver();
    Support s{Bits(q.vertex_count()), Bits(q.arrow_count())};
    for (std::size_t x = 0; x < q.vertex_count(); ++x)
        if (v.dim(x) > 0) s.vertices.set(x);
    for (std::size_t a = 0; a < q.arrow_count(); ++a)
        if (!v.mat(a).is_zero() && v.mat(a).rows() * v.mat(a).cols() > 0) s.arrows.set(a);
    return s;
}

// ---------------------------------------------------------------- subrepresentations

std::vector<std::size_t> SubRep::dims() const {
    std::vector<std::size_t> d;
    for (const auto& s : spaces) d.push_back(s.dim());
    return d;
}

bool is_subrep(const Rep& v, const SubRep& s) {
    const Quiver& q = v.quiver();
    if (s.spaces.size() != q.vertex_count()) return false;
    for (std::size_t x = 0; x < q.vertex_count(); ++x)
        if (s.spaces[x].ambient() != v.dim(x)) return false;
    for (std::size_t a = 0; a < q.arrow_count(); ++a)
        if (!s.spaces[q.arrow(a).head].contains(apply(v.mat(a), s.spaces[q.arrow(a).tail]))) return false;
    return true;
}

bool is_epimorphic(const Rep& v, const SubRep& s) {
    if (!is_subrep(v, s)) return false;
    const Quiver& q = v.quiver();
    for (std::size_t a = 0; a < q.arrow_count(); ++a)
        if (apply(v.mat(a), s.spaces[q.arrow(a).tail]) != s.spaces[q.arrow(a).head]) return false;
    return true;
}

Rep as_rep(const Rep& v, const SubRep& s) {
    const Quiver& q = v.quiver();
    std::vector<std::size_t> dims = s.dims();
    std::vector<Matrix> mats;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const Subspace& t = s.spaces[q.arrow(a).tail];
        const Subspace& h = s.spaces[q.arrow(a).head];
        if (t.dim() == 0 || h.dim() == 0)
            mats.emplace_back(v.field(), h.dim(), t.dim());
        else
            mats.push_back(h.coordinates(v.mat(a) * t.basis_cols()));
    }
    return Rep(v.quiver_ptr(), v.field(), std::move(dims), std::move(mats));
}

Matrix path_map(const RootedTree& t, const Rep& v, std::size_t x, std::size_t y) {
    Matrix m = Matrix::identity(v.field(), v.dim(x));
    while (x != y) {
        std::size_t a = t.out_arrow(x);
        if (a == npos) throw std::invalid_argument("path_map: no path between the given vertices");
        m = v.mat(a) * m;
        x = t.quiver().arrow(a).head;
    }
    return m;
}

SubRep theta(const RootedTree& t, const Rep& v) {
    const Quiver& q = t.quiver();
    const std::size_t n = t.size();
    std::vector<Subspace> th(n);
    for (auto x : t.postorder()) {
        const auto& in = q.in_arrows(x);
        if (in.empty()) {
            th[x] = Subspace::full(v.field(), v.dim(x));
            continue;
        }
        // Extension pieces: E_i at x is the image of the child's value.
        Subspace z;
        for (std::size_t i = 0; i < in.size(); ++i) {
            Subspace e = apply(v.mat(in[i]), th[q.arrow(in[i]).tail]);
            z = i == 0 ? e : intersect(z, e);
        }
        th[x] = z;
        if (in.size() == 1) continue;
        // Gluing: cut every piece down to the preimage of the common value at x.
        for (auto a : in) {
            std::vector<std::pair<std::size_t, Matrix>> stack{{q.arrow(a).tail, v.mat(a)}};
            while (!stack.empty()) {
                auto [y, p] = std::move(stack.back());
                stack.pop_back();
                th[y] = intersect(th[y], preimage(p, z));
                for (auto b : q.in_arrows(y)) stack.emplace_back(q.arrow(b).tail, p * v.mat(b));
            }
        }
    }
    return SubRep{std::move(th)};
}

SubRep theta_fixpoint(const Rep& v) {
    const Quiver& q = v.quiver();
    SubRep s;
    for (std::size_t x = 0; x < q.vertex_count(); ++x) s.spaces.push_back(Subspace::full(v.field(), v.dim(x)));
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t a = 0; a < q.arrow_count(); ++a) {
            const std::size_t t = q.arrow(a).tail, h = q.arrow(a).head;
            Subspace nh = intersect(s.spaces[h], apply(v.mat(a), s.spaces[t]));
            if (nh != s.spaces[h]) {
                s.spaces[h] = std::move(nh);
                changed = true;
            }
            Subspace nt = intersect(s.spaces[t], preimage(v.mat(a), s.spaces[h]));
            if (nt != s.spaces[t]) {
                s.spaces[t] = std::move(nt);
                changed = true;
            }
        }
    }
    return s;
}

Quotient delta(const RootedTree& t, const Rep& v) {
    const Quiver& q = t.quiver();
    const std::size_t n = t.size();
    std::vector<Matrix> path(n);
    std::vector<Subspace> im(n);
    for (std::size_t x = 0; x < n; ++x) {
        path[x] = path_map(t, v, x, t.root());
        im[x] = image(path[x]);
    }
    std::vector<std::size_t> dims;
    for (const auto& s : im) dims.push_back(s.dim());
    std::vector<Matrix> mats;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const Subspace& it = im[q.arrow(a).tail];
        const Subspace& ih = im[q.arrow(a).head];
        if (it.dim() == 0 || ih.dim() == 0)
            mats.emplace_back(v.field(), ih.dim(), it.dim());
        else
            mats.push_back(ih.coordinates(it.basis_cols()));
    }
    RepMorphism proj;
    for (std::size_t x = 0; x < n; ++x) {
        if (im[x].dim() == 0 || v.dim(x) == 0)
            proj.maps.emplace_back(v.field(), im[x].dim(), v.dim(x));
        else
            proj.maps.push_back(im[x].coordinates(path[x]));
    }
    return {Rep(v.quiver_ptr(), v.field(), std::move(dims), std::move(mats)), std::move(proj)};
}

Subspace global_rank_recursive(const RootedTree& t, const Rep& v) {
    const Quiver& q = t.quiver();
    std::vector<Subspace> r(t.size());
    for (auto x : t.postorder()) {
        const auto& in = q.in_arrows(x);
        if (in.empty()) {
            r[x] = Subspace::full(v.field(), v.dim(x));
            continue;
        }
        for (std::size_t i = 0; i < in.size(); ++i) {
            Subspace e = apply(v.mat(in[i]), r[q.arrow(in[i]).tail]);
            r[x] = i == 0 ? e : intersect(r[x], e);
        }
    }
    return r[t.root()];
}

Subspace global_rank(const RootedTree& t, const Rep& v) {
    Subspace a = global_rank_recursive(t, v);
    SubRep th = theta(t, v);
    if (th.spaces[t.root()] != a) throw std::logic_error("global_rank: recursion and theta disagree");
    return a;
}

std::size_t q_global_rank_dim(const RootedTree& t, const QRep& v) {
    const Quiver& q = t.quiver();
    std::vector<QSubspace> r(t.size());
    for (auto x : t.postorder()) {
        const auto& in = q.in_arrows(x);
        if (in.empty()) {
            r[x] = q_full(v.dims[x]);
            continue;
        }
        for (std::size_t i = 0; i < in.size(); ++i) {
            QSubspace e = q_apply(v.mats[in[i]], r[q.arrow(in[i]).tail]);
            r[x] = i == 0 ? e : q_intersect(r[x], e);
        }
    }
    return r[t.root()].dim();
}

// ---------------------------------------------------------------- text format

namespace {

struct PendingMat {
    std::size_t arrow;
    detail::Token at;
    std::size_t rows, cols;
    std::vector<i64> entries;
};

// "[[1,2],[3,4]]", "[]" or "[[],[]]".
PendingMat parse_literal(detail::Cursor& c) {
    PendingMat m{0, c.peek(), 0, 0, {}};
    c.expect_sym('[');
    if (c.is_sym(']')) {
        c.next();
        return m;
    }
    while (true) {
        c.expect_sym('[');
        std::size_t cols = 0;
        if (!c.is_sym(']')) {
            while (true) {
                m.entries.push_back(c.integer("matrix entry"));
                ++cols;
                if (c.is_sym(']')) break;
                c.expect_sym(',');
            }
        }
        c.expect_sym(']');
        if (m.rows > 0 && cols != m.cols) c.fail(m.at, "ragged matrix literal");
        m.cols = cols;
        ++m.rows;
        if (c.is_sym(']')) break;
        c.expect_sym(',');
    }
    c.expect_sym(']');
    return m;
}

ParsedRep parse_one(detail::Cursor& c, const QuiverLookup& lookup) {
    ParsedRep r;
    c.expect_word("rep");
    r.name = c.ident("representation name");
    c.expect_word("on");
    const detail::Token qt = c.peek();
    r.quiver_name = c.ident("quiver name");
    auto q = lookup(r.quiver_name);
    if (!q) c.fail(qt, "unknown quiver '" + r.quiver_name + "'");
    c.expect_word("over");
    if (c.is_word("Q")) {
        c.next();
        r.rational = true;
    } else {
        c.expect_word("GF");
        c.expect_sym('(');
        const detail::Token pt = c.peek();
        long long p = c.integer("prime");
        if (p < 2 || p > 65521 || !is_prime(static_cast<u32>(p)))
            c.fail(pt, "'" + pt.text + "' is not a supported prime (at most 65521)");
        r.prime = static_cast<u32>(p);
        c.expect_sym(')');
    }
    c.expect_sym('{');
    std::vector<std::optional<std::size_t>> dims(q->vertex_count());
    std::vector<std::optional<PendingMat>> mats(q->arrow_count());
    while (!c.is_sym('}')) {
        if (c.is_word("dim")) {
            c.next();
            const detail::Token vt = c.peek();
            std::string vn = c.ident("vertex name");
            auto v = q->find_vertex(vn);
            if (!v) c.fail(vt, "unknown vertex '" + vn + "'");
            if (dims[*v]) c.fail(vt, "dimension of '" + vn + "' given twice");
            c.expect_sym('=');
            const detail::Token nt = c.peek();
            long long d = c.integer("dimension");
            if (d < 0 || d > 100000) c.fail(nt, "dimension out of range");
            dims[*v] = static_cast<std::size_t>(d);
        } else if (c.is_word("mat")) {
            c.next();
            const detail::Token at = c.peek();
            std::string an = c.ident("arrow name");
            auto a = q->find_arrow(an);
            if (!a) c.fail(at, "unknown arrow '" + an + "'");
            if (mats[*a]) c.fail(at, "matrix of '" + an + "' given twice");
            c.expect_sym('=');
            PendingMat m = parse_literal(c);
            m.arrow = *a;
            mats[*a] = std::move(m);
        } else {
            c.fail("expected 'dim', 'mat' or '}'");
        }
        c.expect_sym(';');
    }
    const detail::Token close = c.peek();
    c.expect_sym('}');

    Field f(r.rational ? kDefaultPrime : r.prime);
    for (auto& d : dims) r.dims.push_back(d.value_or(0));
    std::vector<Matrix> fm;
    r.qrep.quiver = q;
    r.qrep.dims = r.dims;
    for (std::size_t a = 0; a < q->arrow_count(); ++a) {
        const Arrow& ar = q->arrow(a);
        std::size_t rows = r.dims[ar.head], cols = r.dims[ar.tail];
        std::vector<i64> e;
        if (mats[a]) {
            const PendingMat& m = *mats[a];
            bool empty_ok = m.entries.empty() && rows * cols == 0;
            if (!empty_ok && (m.rows != rows || m.cols != cols))
                c.fail(m.at, "matrix of '" + ar.name + "' is " + shape(m.rows, m.cols) + ", expected " +
                                 shape(rows, cols));
            e = m.entries;
        } else if (rows * cols != 0) {
            c.fail(close, "missing matrix for arrow '" + ar.name + "' (" + shape(rows, cols) + ")");
        }
        e.resize(rows * cols, 0);
        fm.push_back(Matrix::from_ints(f, rows, cols, e));
        r.qrep.mats.push_back(QMatrix::from_ints(rows, cols, e));
        r.entries.push_back(std::move(e));
    }
    r.rep = Rep(q, f, r.dims, std::move(fm));
    return r;
}

}  // namespace

std::vector<ParsedRep> parse_reps(std::string_view text, const QuiverLookup& lookup, const std::string& source) {
    detail::Cursor c(detail::lex(text, source), source);
    std::vector<ParsedRep> out;
    while (!c.at_end()) {
        if (!c.is_word("rep")) c.fail("expected 'rep'");
        out.push_back(parse_one(c, lookup));
    }
    return out;
}

std::string format_rep(const Rep& v, const std::string& name) {
    const Quiver& q = v.quiver();
    std::ostringstream os;
    os << "rep " << name << " on " << q.name() << " over GF(" << v.field().p() << ") {\n";
    for (std::size_t x = 0; x < q.vertex_count(); ++x)
        if (v.dim(x)) os << "  dim " << q.vertex_name(x) << " = " << v.dim(x) << ";\n";
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const Matrix& m = v.mat(a);
        if (m.rows() * m.cols() == 0) continue;
        os << "  mat " << q.arrow(a).name << " = " << m.literal() << ";\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace qrank
