#include "qrank/ring.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qrank {

namespace {

std::size_t trace_product(const Matrix& a, const Matrix& b, const Field& f) {
    u64 s = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) s = (s + static_cast<u64>(a(i, k)) * b(k, i)) % f.p();
    return static_cast<std::size_t>(s);
}

// dim End / rad End, as the rank of the trace form. Valid when p exceeds the dimension.
std::size_t residue_dim(const std::vector<RepMorphism>& basis, const Field& f) {
    const std::size_t d = basis.size();
    Matrix g(f, d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            u64 s = 0;
            for (std::size_t x = 0; x < basis[i].maps.size(); ++x) s += trace_product(basis[i].maps[x], basis[j].maps[x], f);
            g(i, j) = g(j, i) = static_cast<u32>(s % f.p());
        }
    return g.rank();
}

Poly total_charpoly(const RepMorphism& y, const Field& f) {
    Poly c = Poly::constant(f, 1);
    for (const auto& m : y.maps)
        if (m.rows() > 0) c = c * charpoly(m);
    return c;
}

bool nilpotent(const RepMorphism& c) {
    for (const auto& m : c.maps) {
        if (m.rows() == 0) continue;
        Matrix p = m;
        for (std::size_t k = 1; k < m.rows() && !p.is_zero(); ++k) p = p * m;
        if (!p.is_zero()) return false;
    }
    return true;
}

bool same_maps(const RepMorphism& a, const RepMorphism& b) { return a.maps == b.maps; }

class Engine {
public:
    Engine(const DecomposeOptions& opt, u64 seed) : opt_(opt), rng_(seed) {}

    void run(const Rep& w, std::vector<Matrix> incl, std::vector<Matrix> proj, std::size_t depth) {
        if (w.total_dim() == 0) return;
        if (depth > opt_.max_depth) throw std::runtime_error("krull_schmidt: recursion depth exceeded");
        const Field& f = w.field();
        auto basis = hom_space(w, w);
        const bool trace_ok = f.p() > w.total_dim();
        if (basis.size() == 1) return emit(w, incl, proj, 1, true);
        const std::size_t k = trace_ok ? residue_dim(basis, f) : 0;
        if (k == 1) return emit(w, incl, proj, 1, true);
        const std::size_t tries = trace_ok ? opt_.rounds * 8 : opt_.rounds;
        std::size_t last = 1;
        for (std::size_t t = 0; t < tries; ++t) {
            std::vector<u32> c(basis.size());
            for (auto& x : c) x = rng_.elem(f);
            RepMorphism y = combine(basis, c, w, w);
            auto fs = factor(total_charpoly(y, f), rng_);
            if (fs.size() >= 2) return split(w, y, fs, incl, proj, depth);
            last = static_cast<std::size_t>(fs[0].poly.degree());
            if (trace_ok && last == k) return emit(w, incl, proj, k, true);
        }
        if (!trace_ok) return emit(w, incl, proj, last, false);
        throw std::runtime_error("krull_schmidt: undecided after " + std::to_string(tries) + " random endomorphisms");
    }

    std::vector<Summand> take() { return std::move(out_); }

private:
    void emit(const Rep& w, const std::vector<Matrix>& incl, const std::vector<Matrix>& proj, std::size_t k,
              bool certified) {
        out_.push_back(Summand{w, incl, proj, k, certified});
    }

    void split(const Rep& w, const RepMorphism& y, const std::vector<Factor>& fs, const std::vector<Matrix>& incl,
               const std::vector<Matrix>& proj, std::size_t depth) {
        const Field& f = w.field();
        const std::size_t nv = w.quiver().vertex_count();
        std::vector<SubRep> parts(fs.size());
        for (std::size_t i = 0; i < fs.size(); ++i) {
            Poly q = Poly::constant(f, 1);
            for (unsigned e = 0; e < fs[i].mult; ++e) q = q * fs[i].poly;
            for (std::size_t x = 0; x < nv; ++x)
                parts[i].spaces.push_back(w.dim(x) == 0 ? Subspace::zero(f, 0) : kernel(eval_matrix(q, y.maps[x])));
        }
        std::vector<std::vector<Matrix>> pinc(fs.size()), ppro(fs.size());
        for (std::size_t x = 0; x < nv; ++x) {
            const std::size_t n = w.dim(x);
            if (n == 0) {
                for (std::size_t i = 0; i < fs.size(); ++i) {
                    pinc[i].emplace_back(f, incl[x].rows(), 0);
                    ppro[i].emplace_back(f, 0, proj[x].cols());
                }
                continue;
            }
            Matrix p(f, n, 0);
            for (const auto& part : parts) p = hstack(p, part.spaces[x].basis_cols());
            auto pinv = p.inverse();
            if (!pinv) throw std::logic_error("krull_schmidt: generalized eigenspaces do not span");
            std::size_t off = 0;
            for (std::size_t i = 0; i < fs.size(); ++i) {
                const std::size_t d = parts[i].spaces[x].dim();
                pinc[i].push_back(incl[x] * parts[i].spaces[x].basis_cols());
                ppro[i].push_back(pinv->block(off, 0, d, n) * proj[x]);
                off += d;
            }
        }
        for (std::size_t i = 0; i < fs.size(); ++i)
            run(as_rep(w, parts[i]), std::move(pinc[i]), std::move(ppro[i]), depth + 1);
    }

    const DecomposeOptions& opt_;
    Rng rng_;
    std::vector<Summand> out_;
};

}  // namespace

std::vector<RepMorphism> KrullSchmidt::idempotents() const {
    std::vector<RepMorphism> es;
    for (const auto& s : summands) {
        RepMorphism e;
        for (std::size_t x = 0; x < s.incl.size(); ++x) e.maps.push_back(s.incl[x] * s.proj[x]);
        es.push_back(std::move(e));
    }
    return es;
}

KrullSchmidt krull_schmidt(const Rep& v, u64 seed, const DecomposeOptions& opt) {
    if (v.total_dim() > opt.guard)
        throw std::length_error("krull_schmidt: total dimension " + std::to_string(v.total_dim()) + " exceeds guard " +
                                std::to_string(opt.guard));
    Engine eng(opt, seed);
    std::vector<Matrix> id;
    for (auto d : v.dims()) id.push_back(Matrix::identity(v.field(), d));
    eng.run(v, id, id, 0);
    return KrullSchmidt{eng.take()};
}

bool verify_certificate(const Rep& v, const KrullSchmidt& ks, std::string* why) {
    auto bad = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    const Quiver& q = v.quiver();
    const Field& f = v.field();
    auto es = ks.idempotents();
    std::vector<std::size_t> dims(q.vertex_count(), 0);
    RepMorphism total;
    for (auto d : v.dims()) total.maps.emplace_back(f, d, d);
    for (std::size_t i = 0; i < es.size(); ++i) {
        const Summand& s = ks.summands[i];
        if (!is_morphism(v, v, es[i])) return bad("summand " + std::to_string(i) + ": idempotent is not a morphism");
        if (!same_maps(compose(es[i], es[i]), es[i])) return bad("summand " + std::to_string(i) + ": e^2 != e");
        for (std::size_t j = 0; j < es.size(); ++j)
            if (j != i && !is_zero(compose(es[i], es[j])))
                return bad("summands " + std::to_string(i) + ", " + std::to_string(j) + ": e_i e_j != 0");
        for (std::size_t x = 0; x < q.vertex_count(); ++x) {
            dims[x] += s.rep.dim(x);
            if (!(s.proj[x] * s.incl[x]).is_identity() && s.rep.dim(x) > 0)
                return bad("summand " + std::to_string(i) + ": proj incl != id");
            total.maps[x] = total.maps[x] + es[i].maps[x];
        }
        for (std::size_t a = 0; a < q.arrow_count(); ++a) {
            const Arrow& ar = q.arrow(a);
            if (s.proj[ar.head] * v.mat(a) * s.incl[ar.tail] != s.rep.mat(a))
                return bad("summand " + std::to_string(i) + ": matrices differ from proj V incl");
        }
    }
    if (dims != v.dims()) return bad("summand dimensions do not add up");
    for (std::size_t x = 0; x < q.vertex_count(); ++x)
        if (v.dim(x) > 0 && !total.maps[x].is_identity()) return bad("idempotents do not sum to the identity");
    return true;
}

bool is_isomorphism(const Rep& u, const Rep& w, const RepMorphism& f) {
    if (u.dims() != w.dims() || !is_morphism(u, w, f)) return false;
    for (const auto& m : f.maps)
        if (m.rows() > 0 && m.rank() != m.rows()) return false;
    return true;
}

std::optional<RepMorphism> indecomposable_isomorphism(const Rep& u, const Rep& w, Rng& rng, std::size_t trials) {
    if (u.dims() != w.dims()) return std::nullopt;
    auto h = hom_space(u, w);
    if (h.empty()) return std::nullopt;
    for (std::size_t t = 0; t < trials; ++t) {
        std::vector<u32> c(h.size());
        for (auto& x : c) x = rng.elem(u.field());
        RepMorphism f = combine(h, c, u, w);
        if (is_isomorphism(u, w, f)) return f;
    }
    auto g = hom_space(w, u);
    for (const auto& fi : h)
        for (const auto& gj : g)
            if (!nilpotent(compose(gj, fi))) {
                if (!is_isomorphism(u, w, fi)) throw std::logic_error("indecomposable_isomorphism: split mono is not invertible");
                return fi;
            }
    return std::nullopt;
}

u64 digest(const Rep& v) {
    u64 h = 1469598103934665603ULL;
    auto mix = [&](u64 x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 1099511628211ULL;
        }
    };
    mix(v.field().p());
    for (auto d : v.dims()) mix(d);
    for (const auto& m : v.mats()) {
        mix(m.rows());
        mix(m.cols());
        for (auto x : m.data()) mix(x);
    }
    return h;
}

// ---------------------------------------------------------------- labels

std::string IndecLabel::key() const {
    std::ostringstream s;
    s << "d";
    for (std::size_t i = 0; i < dims.size(); ++i) s << (i ? "," : "=") << dims[i];
    s << "|r";
    for (std::size_t i = 0; i < ranks.size(); ++i) s << (i ? "," : "=") << ranks[i];
    s << "|t=" << tie;
    return s.str();
}

std::size_t Interner::intern(const Rep& u, Rng& rng) {
    IndecLabel lab;
    lab.dims = u.dims();
    for (const auto& row : rank_vector(l_, u).r) lab.ranks.insert(lab.ranks.end(), row.begin(), row.end());
    std::string bucket = lab.key();
    bucket.resize(bucket.rfind("|t="));
    std::lock_guard<std::mutex> lk(mu_);
    auto& ids = buckets_[bucket];
    for (auto id : ids)
        if (indecomposable_isomorphism(entries_[id].witness, u, rng)) return id;
    lab.tie = ids.size();
    ids.push_back(entries_.size());
    entries_.push_back(Entry{std::move(lab), u});
    return entries_.size() - 1;
}

const IndecLabel& Interner::label(std::size_t id) const {
    std::lock_guard<std::mutex> lk(mu_);
    return entries_.at(id).label;
}

const Rep& Interner::witness(std::size_t id) const {
    std::lock_guard<std::mutex> lk(mu_);
    return entries_.at(id).witness;
}

std::size_t Interner::size() const {
    std::lock_guard<std::mutex> lk(mu_);
    return entries_.size();
}

// ---------------------------------------------------------------- ring elements

RingElement& RingElement::add(std::size_t id, i64 c) {
    if (c == 0) return *this;
    auto [it, fresh] = terms.emplace(id, c);
    if (!fresh && (it->second += c) == 0) terms.erase(it);
    return *this;
}

RingElement operator+(const RingElement& a, const RingElement& b) {
    RingElement r = a;
    for (auto [id, c] : b.terms) r.add(id, c);
    return r;
}

RingElement operator-(const RingElement& a, const RingElement& b) {
    RingElement r = a;
    for (auto [id, c] : b.terms) r.add(id, -c);
    return r;
}

RingElement operator*(i64 c, const RingElement& a) {
    RingElement r;
    for (auto [id, x] : a.terms) r.add(id, c * x);
    return r;
}

Ring::Ring(const Lattices& l, u64 seed, Field f, DecomposeOptions opt)
    : l_(l), seed_(seed), f_(f), opt_(opt), interner_(l) {}

Decomposition Ring::decompose(const Rep& v) const {
    const u64 s = seed_ * 0x9e3779b97f4a7c15ULL ^ digest(v);
    Decomposition d;
    d.cert = krull_schmidt(v, s, opt_);
    Rng rng(s + 1);
    std::map<std::size_t, std::size_t> count;
    for (const auto& sm : d.cert.summands) ++count[interner_.intern(sm.rep, rng)];
    for (auto [id, k] : count) d.terms.emplace_back(id, k);
    std::sort(d.terms.begin(), d.terms.end(),
              [&](const auto& a, const auto& b) { return label(a.first).key() < label(b.first).key(); });
    return d;
}

RingElement Ring::element(const Rep& v) const {
    RingElement r;
    for (auto [id, k] : decompose(v).terms) r.add(id, static_cast<i64>(k));
    return r;
}

RingElement Ring::basis(std::size_t id) const {
    RingElement r;
    r.add(id, 1);
    return r;
}

std::size_t Ring::label_of_indecomposable(const Rep& u) const {
    Rng rng(seed_ ^ digest(u));
    return interner_.intern(u, rng);
}

RingElement Ring::mul(const RingElement& a, const RingElement& b) const {
    RingElement r;
    for (auto [i, ci] : a.terms)
        for (auto [j, cj] : b.terms) {
            std::pair<std::size_t, std::size_t> key{std::min(i, j), std::max(i, j)};
            RingElement p;
            bool known = false;
            {
                std::lock_guard<std::mutex> lk(mu_);
                auto it = products_.find(key);
                if (it != products_.end()) p = it->second, known = true;
            }
            if (!known) {
                p = element(tensor(witness(key.first), witness(key.second)));
                std::lock_guard<std::mutex> lk(mu_);
                products_.emplace(key, p);
            }
            r = r + (ci * cj) * p;
        }
    return r;
}

RingElement Ring::pow(const RingElement& a, std::size_t k) const {
    RingElement r = element(identity_rep(l_.tree().quiver_ptr(), f_));
    for (std::size_t i = 0; i < k; ++i) r = mul(r, a);
    return r;
}

bool Ring::root_supported(std::size_t id) const { return label(id).dims[l_.tree().root()] > 0; }

RingElement Ring::project_root(const RingElement& a) const {
    RingElement r;
    for (auto [id, c] : a.terms)
        if (root_supported(id)) r.add(id, c);
    return r;
}

std::vector<i64> Ring::ranks(const RingElement& a) const {
    std::vector<i64> out(l_.ring_rank(), 0);
    for (auto [id, c] : a.terms) {
        const auto& r = label(id).ranks;
        for (std::size_t i = 0; i < r.size(); ++i) out[i] += c * static_cast<i64>(r[i]);
    }
    return out;
}

std::string Ring::format(const RingElement& a) const {
    if (a.is_zero()) return "0";
    std::vector<std::pair<std::string, i64>> t;
    for (auto [id, c] : a.terms) t.emplace_back(label(id).key(), c);
    std::sort(t.begin(), t.end());
    std::string s;
    for (const auto& [k, c] : t) s += (s.empty() ? "" : " + ") + std::to_string(c) + "[" + k + "]";
    return s;
}

std::size_t Ring::reduced_label(const LatticeElement& m) const {
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = reduced_.find(m);
        if (it != reduced_.end()) return it->second;
    }
    std::size_t id = label_of_indecomposable(reduced_rep(l_, m, f_));
    std::lock_guard<std::mutex> lk(mu_);
    reduced_.emplace(m, id);
    return id;
}

// ---------------------------------------------------------------- idempotents

Rep subquiver_identity(const RootedTree& t, const Bits& vertices, Field f) {
    const Quiver& q = t.quiver();
    std::vector<std::size_t> dims(q.vertex_count(), 0);
    for (std::size_t v = 0; v < dims.size(); ++v) dims[v] = vertices.test(v) ? 1 : 0;
    std::vector<Matrix> mats;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        Matrix m(f, dims[q.arrow(a).head], dims[q.arrow(a).tail]);
        if (m.rows() == 1 && m.cols() == 1) m(0, 0) = 1;
        mats.push_back(std::move(m));
    }
    return Rep(t.quiver_ptr(), f, std::move(dims), std::move(mats));
}

SupportAlgebra::SupportAlgebra(const Ring& r)
    : r_(r), subs_(connected_subquivers(r.lattices().tree())), order_(inclusion_poset(subs_)), mu_(mobius(order_)) {}

RingElement SupportAlgebra::identity(std::size_t i) const {
    return r_.element(subquiver_identity(r_.lattices().tree(), subs_[i], r_.field()));
}

RingElement SupportAlgebra::idempotent(std::size_t i) const {
    RingElement e;
    const std::size_t n = subs_.size();
    for (auto j : order_.down(i).elements()) e = e + mu_[j * n + i] * identity(j);
    return e;
}

RingElement fine_idempotent(const Ring& r, std::size_t m) {
    const Lattices& l = r.lattices();
    RingElement f;
    for (auto [a, mu] : l.root_lattice().mobius_below(m)) f.add(r.reduced_label({l.tree().root(), a}), mu);
    return r.project_root(f);
}

std::size_t fine_support(const Ring& r, const Rep& v) {
    const VertexLattice& L = r.lattices().root_lattice();
    const std::size_t root = r.lattices().tree().root();
    RingElement target = r.project_root(r.element(v));
    if (target.is_zero()) throw std::invalid_argument("fine_support: no summand is supported at the root");
    std::size_t cur = L.top();
    for (bool moved = true; moved;) {
        moved = false;
        for (auto c : L.lower_covers(cur)) {
            if (r.project_root(r.mul(r.basis(r.reduced_label({root, c})), target)) == target) {
                cur = c;
                moved = true;
                break;
            }
        }
    }
    return cur;
}

RingElement pullback_element(const Ring& src, const Ring& tgt, const QuiverMap& f, const RingElement& a) {
    RingElement out;
    for (auto [id, c] : a.terms)
        out = out + c * tgt.element(pullback(tgt.lattices().tree().quiver_ptr(), f, src.witness(id)));
    return out;
}

TensorCheck check_tensor_formula(const Ring& r, const LatticeElement& m, const LatticeElement& n) {
    TensorCheck out;
    const Lattices& l = r.lattices();
    if (m.vertex != n.vertex) throw std::invalid_argument("check_tensor_formula: elements at different vertices");
    const std::size_t x = m.vertex;
    auto fail = [&](const std::string& s) {
        if (out.ok) out.failure = l.fingerprint(m) + " * " + l.fingerprint(n) + ": " + s;
        out.ok = false;
    };
    std::map<std::size_t, LatticeElement> reduced;
    for (const auto& k : l.all_elements()) reduced.emplace(r.reduced_label(k), k);
    const std::size_t expect = r.reduced_label({x, l.at(x).meet(m.index, n.index)});
    auto d = r.decompose(tensor(reduced_rep(l, m, r.field()), reduced_rep(l, n, r.field())));
    std::size_t home = 0;
    for (auto [id, k] : d.terms) {
        out.summands += k;
        if (r.label(id).dims[x] > 0) {
            home += k;
            if (id != expect) fail("summand at the home vertex is not X of the meet");
        } else if (!reduced.count(id)) {
            fail("summand vanishing at the home vertex is not a reduced representation");
        }
    }
    if (home != 1) fail(std::to_string(home) + " summands at the home vertex");
    return out;
}

// ---------------------------------------------------------------- splitting and nilpotency

std::vector<std::size_t> maximal_nonvanishing(const Lattices& l, const Rep& v) {
    const VertexLattice& L = l.root_lattice();
    const std::size_t root = l.tree().root();
    std::vector<char> nz(L.size());
    for (std::size_t e = 0; e < L.size(); ++e) nz[e] = rank_space(l, v, {root, e}).dim() > 0;
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < L.size(); ++e) {
        if (!nz[e]) continue;
        bool maximal = true;
        for (auto u : L.upper_covers(e)) maximal = maximal && !nz[u];
        if (maximal) out.push_back(e);
    }
    return out;
}

SplittingReport verify_splitting_at(const Lattices& l, const Rep& v, std::size_t n, std::size_t l_max,
                                    std::size_t guard) {
    const Field& f = v.field();
    const std::size_t root = l.tree().root();
    const LatticeElement nn{root, n};
    SplittingReport rep;
    rep.n = n;
    rep.rank = rank_space(l, v, nn).dim();
    Rep x = reduced_rep(l, nn, f);
    if (hom_dim(x, x) != 1) throw std::logic_error("verify_splitting: End(X_N) is not the ground field");
    Rep t = v;
    std::size_t expected = 1;
    for (std::size_t k = 1; k <= l_max; ++k) {
        if (k > 1) t = tensor(t, v);
        if (t.total_dim() > guard)
            throw std::length_error("verify_splitting: V^" + std::to_string(k) + " exceeds the guard");
        expected *= rep.rank;
        SplitAttempt at;
        at.l = k;
        at.expected = expected;
        auto fs = hom_space(x, t);
        auto gs = hom_space(t, x);
        // g_b f_a is a scalar, read off at the root where X_N is one dimensional
        Matrix p(f, gs.size(), fs.size());
        for (std::size_t b = 0; b < gs.size(); ++b)
            for (std::size_t a = 0; a < fs.size(); ++a) p(b, a) = (gs[b].maps[root] * fs[a].maps[root])(0, 0);
        Matrix pr = p;
        auto cols = pr.rref_inplace();
        Matrix pt = p.transpose();
        auto rows = pt.rref_inplace();
        const std::size_t rho = cols.size();
        at.multiplicity = rho;
        RepMorphism e;
        for (std::size_t y = 0; y < t.dims().size(); ++y) e.maps.emplace_back(f, t.dim(y), t.dim(y));
        if (rho > 0) {
            Matrix q(f, rho, rho);
            for (std::size_t i = 0; i < rho; ++i)
                for (std::size_t j = 0; j < rho; ++j) q(i, j) = p(rows[i], cols[j]);
            auto qinv = q.inverse();
            if (!qinv) throw std::logic_error("verify_splitting: pairing minor is singular");
            for (std::size_t i = 0; i < rho; ++i)
                for (std::size_t j = 0; j < rho; ++j) {
                    u32 c = (*qinv)(j, i);
                    if (c == 0) continue;
                    e = e + scaled(compose(fs[cols[j]], gs[rows[i]]), c);
                }
        }
        if (!is_morphism(t, t, e) || compose(e, e).maps != e.maps)
            throw std::logic_error("verify_splitting: constructed idempotent fails its checks");
        std::size_t im = 0;
        SubRep w;
        for (std::size_t y = 0; y < e.maps.size(); ++y) {
            im += e.maps[y].rank();
            if (t.dim(y) == 0) {
                w.spaces.push_back(Subspace::zero(f, 0));
                continue;
            }
            w.spaces.push_back(image(Matrix::identity(f, t.dim(y)) - e.maps[y]));
        }
        if (im != rho * x.total_dim()) throw std::logic_error("verify_splitting: idempotent has the wrong rank");
        at.complement_rank = rank_space(l, as_rep(t, w), nn).dim();
        at.ok = rho == expected && at.complement_rank == 0;
        rep.attempts.push_back(at);
        if (at.ok) {
            rep.l = k;
            break;
        }
    }
    return rep;
}

std::vector<SplittingReport> verify_splitting(const Lattices& l, const Rep& v, std::size_t l_max, std::size_t guard) {
    std::vector<SplittingReport> out;
    for (auto n : maximal_nonvanishing(l, v)) out.push_back(verify_splitting_at(l, v, n, l_max, guard));
    return out;
}

NilpotencyReport verify_nilpotency(const Ring& r, const Rep& v, std::size_t k_max) {
    const Lattices& l = r.lattices();
    const std::size_t root = l.tree().root();
    NilpotencyReport rep;
    auto d = r.decompose(v);
    rep.indecomposable = d.terms.size() == 1 && d.terms[0].second == 1;
    rep.m = fine_support(r, v);
    rep.reduced = rep.indecomposable && d.terms[0].first == r.reduced_label({root, rep.m});
    rep.rank_m = rank_space(l, v, {root, rep.m}).dim();
    RingElement a = r.project_root(r.mul(fine_idempotent(r, rep.m), r.element(v)));
    RingElement p = a;
    for (std::size_t k = 1; k <= k_max; ++k) {
        if (p.is_zero()) {
            rep.k = k;
            break;
        }
        if (k < k_max) p = r.project_root(r.mul(p, a));
    }
    return rep;
}

}  // namespace qrank
