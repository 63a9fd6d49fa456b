#include "qrank/rank.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace qrank {

// ---------------------------------------------------------------- VertexLattice

VertexLattice::VertexLattice(std::size_t vertex, std::vector<JFactor> factors)
    : vertex_(vertex), factors_(std::move(factors)) {
    stride_.assign(factors_.size(), 1);
    size_ = 1;
    for (std::size_t i = factors_.size(); i-- > 0;) {
        stride_[i] = size_;
        size_ *= factors_[i].J().ideals.size();
    }
}

std::vector<std::size_t> VertexLattice::components(std::size_t e) const {
    std::vector<std::size_t> c(factors_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = component(e, i);
    return c;
}

std::size_t VertexLattice::from_components(const std::vector<std::size_t>& c) const {
    std::size_t e = 0;
    for (std::size_t i = 0; i < c.size(); ++i) e += c[i] * stride_[i];
    return e;
}

std::vector<std::size_t> VertexLattice::maximal(std::size_t e, std::size_t i) const {
    return factors_[i].poset().maximal(ideal(e, i));
}

bool VertexLattice::leq(std::size_t a, std::size_t b) const {
    for (std::size_t i = 0; i < factors_.size(); ++i)
        if (!factors_[i].J().lattice.leq(component(a, i), component(b, i))) return false;
    return true;
}

std::size_t VertexLattice::meet(std::size_t a, std::size_t b) const {
    std::size_t e = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i)
        e += factors_[i].J().lattice.meet(component(a, i), component(b, i)) * stride_[i];
    return e;
}

std::size_t VertexLattice::join(std::size_t a, std::size_t b) const {
    std::size_t e = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i)
        e += factors_[i].J().lattice.join(component(a, i), component(b, i)) * stride_[i];
    return e;
}

std::vector<std::size_t> VertexLattice::lower_covers(std::size_t e) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        std::size_t c = component(e, i);
        for (auto d : factors_[i].J().lattice.poset().lower_covers(c)) out.push_back(e - c * stride_[i] + d * stride_[i]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::size_t> VertexLattice::upper_covers(std::size_t e) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        std::size_t c = component(e, i);
        for (auto d : factors_[i].J().lattice.poset().upper_covers(c)) out.push_back(e - c * stride_[i] + d * stride_[i]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

i64 VertexLattice::mobius(std::size_t a, std::size_t b) const {
    i64 m = 1;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const Bits& ia = ideal(a, i);
        const Bits& ib = ideal(b, i);
        if (!ia.subset_of(ib)) return 0;
        std::vector<std::size_t> diff;
        for (auto x : ib.elements())
            if (!ia.test(x)) diff.push_back(x);
        if (!factors_[i].poset().is_antichain(diff)) return 0;
        if (diff.size() % 2) m = -m;
    }
    return m;
}

std::vector<std::pair<std::size_t, i64>> VertexLattice::mobius_below(std::size_t e) const {
    std::vector<std::pair<std::size_t, i64>> acc{{0, 1}};
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const JFactor& f = factors_[i];
        const Bits& id = ideal(e, i);
        std::vector<std::size_t> mx = f.poset().maximal(id);
        if (mx.size() > 20) throw std::length_error("mobius_below: antichain too large");
        std::vector<std::pair<std::size_t, i64>> opts;
        for (std::size_t s = 0; s < (std::size_t(1) << mx.size()); ++s) {
            Bits b = id;
            i64 sign = 1;
            for (std::size_t k = 0; k < mx.size(); ++k)
                if ((s >> k) & 1) {
                    b.reset(mx[k]);
                    sign = -sign;
                }
            opts.emplace_back(f.J().index_of(b), sign);
        }
        std::vector<std::pair<std::size_t, i64>> next;
        for (const auto& [a, sa] : acc)
            for (const auto& [c, sc] : opts) next.emplace_back(a + c * stride_[i], sa * sc);
        acc = std::move(next);
    }
    std::sort(acc.begin(), acc.end());
    return acc;
}

Poset VertexLattice::poset(std::size_t guard) const {
    if (size_ > guard)
        throw std::length_error("lattice has " + std::to_string(size_) + " elements, more than the order guard " +
                                std::to_string(guard));
    return Poset::from_leq(size_, [&](std::size_t a, std::size_t b) { return leq(a, b); });
}

Lattice VertexLattice::materialize() const {
    if (size_ > kTableGuard)
        throw std::length_error("lattice has " + std::to_string(size_) + " elements, more than the table guard");
    Lattice l = one_point_lattice();
    for (const auto& f : factors_) l = product(l, f.J().lattice);
    return l;
}

// ---------------------------------------------------------------- Lattices

std::shared_ptr<const FactorData> FactorCache::get(const std::string& key,
                                                   const std::function<std::shared_ptr<const FactorData>()>& build) {
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = m_.find(key);
        if (it != m_.end()) return it->second;
    }
    auto d = build();
    std::lock_guard<std::mutex> lk(mu_);
    return m_.emplace(key, std::move(d)).first->second;
}

std::size_t FactorCache::size() const {
    std::lock_guard<std::mutex> lk(mu_);
    return m_.size();
}

Lattices::Lattices(RootedTree t, std::size_t guard, std::shared_ptr<FactorCache> cache, bool with_root)
    : t_(std::move(t)), with_root_(with_root), cache_(cache ? std::move(cache) : std::make_shared<FactorCache>()) {
    const Quiver& q = t_.quiver();
    v_.resize(t_.size());
    // L(Q, x) depends only on the subtree at x with its arrow order, which keys the cache.
    std::vector<std::string> shape(t_.size());
    for (auto x : t_.postorder()) {
        shape[x] = "(";
        for (auto a : q.in_arrows(x)) shape[x] += shape[q.arrow(a).tail];
        shape[x] += ")";
    }
    for (auto x : t_.postorder()) {
        if (!with_root_ && x == t_.root()) continue;
        std::vector<JFactor> fs;
        std::size_t total = 1;
        for (auto a : q.in_arrows(x)) {
            JFactor f;
            f.arrow = a;
            f.child = q.arrow(a).tail;
            try {
                f.data = cache_->get(shape[f.child], [&] {
                    auto d = std::make_shared<FactorData>();
                    d->poset = v_[f.child].poset();
                    d->J = ideals(d->poset, guard);
                    return d;
                });
            } catch (const std::length_error& e) {
                throw std::length_error("L(Q, " + q.vertex_name(x) + "): ideals of L(Q, " +
                                        q.vertex_name(f.child) + ") exceed a size guard: " + e.what());
            }
            if (total > guard / f.J().ideals.size())
                throw std::length_error("L(Q, " + q.vertex_name(x) + ") has more than " + std::to_string(guard) +
                                        " elements");
            total *= f.J().ideals.size();
            fs.push_back(std::move(f));
        }
        v_[x] = VertexLattice(x, std::move(fs));
    }
}

std::size_t Lattices::ring_rank() const {
    std::size_t s = 0;
    for (const auto& v : v_) s += v.size();
    return s;
}

std::vector<LatticeElement> Lattices::all_elements() const {
    std::vector<LatticeElement> out;
    for (std::size_t x = 0; x < v_.size(); ++x)
        for (std::size_t e = 0; e < v_[x].size(); ++e) out.push_back({x, e});
    return out;
}

std::string Lattices::fingerprint(std::size_t x, std::size_t e) const {
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = fp_.find({x, e});
        if (it != fp_.end()) return it->second;
    }
    const VertexLattice& L = v_[x];
    std::string s = t_.quiver().vertex_name(x) + "(";
    for (std::size_t i = 0; i < L.factor_count(); ++i) {
        std::vector<std::string> parts;
        for (auto m : L.maximal(e, i)) parts.push_back(fingerprint(L.factor(i).child, m));
        std::sort(parts.begin(), parts.end());
        s += '[';
        for (std::size_t k = 0; k < parts.size(); ++k) {
            if (k) s += ',';
            s += parts[k];
        }
        s += ']';
    }
    s += ')';
    std::lock_guard<std::mutex> lk(mu_);
    fp_.emplace(LatticeElement{x, e}, s);
    return s;
}

std::size_t Lattices::generate(std::size_t x, const std::vector<std::vector<std::size_t>>& gens) const {
    const VertexLattice& L = v_[x];
    if (gens.size() != L.factor_count()) throw std::invalid_argument("generate: one generator list per factor");
    std::vector<std::size_t> comps;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const JFactor& f = L.factor(i);
        Bits b(f.poset().size());
        for (auto s : gens[i]) b = b | f.poset().down(s);
        comps.push_back(f.J().index_of(b));
    }
    return L.from_components(comps);
}

std::shared_ptr<ReducedQuiver> Lattices::build_reduced(std::size_t x, const std::string& tag,
                                                       const std::vector<std::vector<std::size_t>>& maxima) const {
    const Quiver& Q = t_.quiver();
    const auto& in = Q.in_arrows(x);
    if (maxima.size() != in.size()) throw std::invalid_argument("reduced quiver: one antichain per arrow expected");
    auto r = std::make_shared<ReducedQuiver>();
    const std::string root = Q.vertex_name(x) + "#" + tag;
    Quiver qm(root);
    qm.add_vertex(root);
    r->over.map.vertex.push_back(x);
    r->elem_of.push_back(npos);
    for (std::size_t i = 0; i < in.size(); ++i) {
        const std::size_t child = Q.arrow(in[i]).tail;
        for (auto s : maxima[i]) {
            auto sub = reduced(child, s);
            const Quiver& sq = sub->over.tree.quiver();
            ReducedQuiver::Branch br{i, s, qm.vertex_count(), 0, qm.arrow_count(), sub};
            for (std::size_t v = 0; v < sq.vertex_count(); ++v) {
                qm.add_vertex(root + "." + sq.vertex_name(v));
                r->over.map.vertex.push_back(sub->over.map.vertex[v]);
                r->elem_of.push_back(sub->elem_of[v]);
            }
            for (std::size_t a = 0; a < sq.arrow_count(); ++a) {
                qm.add_arrow(root + "." + sq.arrow(a).name, br.offset + sq.arrow(a).tail, br.offset + sq.arrow(a).head);
                r->over.map.arrow.push_back(sub->over.map.arrow[a]);
            }
            br.arrow = qm.add_arrow(Q.arrow(in[i]).name + "." + qm.vertex_name(br.offset), br.offset, 0);
            r->over.map.arrow.push_back(in[i]);
            r->branches.push_back(std::move(br));
        }
    }
    r->over.tree = RootedTree::make(std::move(qm));
    return r;
}

std::shared_ptr<const ReducedQuiver> Lattices::reduced(std::size_t x, std::size_t e) const {
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = red_.find({x, e});
        if (it != red_.end()) return it->second;
    }
    if (!with_root_ && x == t_.root()) throw std::logic_error("reduced: root lattice was not built");
    const VertexLattice& L = v_[x];
    std::vector<std::vector<std::size_t>> maxima(L.factor_count());
    for (std::size_t i = 0; i < L.factor_count(); ++i) maxima[i] = L.maximal(e, i);
    auto r = build_reduced(x, std::to_string(e), maxima);
    r->m = {x, e};
    r->elem_of[0] = e;
    std::lock_guard<std::mutex> lk(mu_);
    auto [it, fresh] = red_.emplace(LatticeElement{x, e}, std::move(r));
    return it->second;
}

std::shared_ptr<const ReducedQuiver> Lattices::reduced_from(std::size_t x,
                                                            const std::vector<std::vector<std::size_t>>& maxima) const {
    auto r = build_reduced(x, "*", maxima);
    r->m = {x, npos};
    return r;
}

// ---------------------------------------------------------------- reduced representations and ranks

Rep reduced_rep(const Lattices& l, const LatticeElement& m, Field f) {
    auto r = l.reduced(m);
    return pushforward(l.tree().quiver_ptr(), r->over.map, identity_rep(r->over.tree.quiver_ptr(), f));
}

Subspace rank_space_pullback(const Lattices& l, const Rep& v, const LatticeElement& m) {
    auto r = l.reduced(m);
    Rep pulled = pullback(r->over.tree.quiver_ptr(), r->over.map, v);
    return global_rank(r->over.tree, pulled);
}

namespace {

// Rank spaces by the recursion, memoized per element.
class RecursiveRanks {
public:
    RecursiveRanks(const Lattices& l, const Rep& v) : l_(l), v_(v), memo_(l.tree().size()) {}

    const Subspace& get(std::size_t x, std::size_t e) {
        auto it = memo_[x].find(e);
        if (it != memo_[x].end()) return it->second;
        const VertexLattice& L = l_.at(x);
        Subspace s = Subspace::full(v_.field(), v_.dim(x));
        for (std::size_t i = 0; i < L.factor_count(); ++i)
            for (auto m : L.maximal(e, i)) {
                Subspace img = apply(v_.mat(L.factor(i).arrow), get(L.factor(i).child, m));
                s = intersect(s, img);
            }
        return memo_[x].emplace(e, std::move(s)).first->second;
    }

private:
    const Lattices& l_;
    const Rep& v_;
    std::vector<std::map<std::size_t, Subspace>> memo_;
};

}  // namespace

Subspace rank_space_recursive(const Lattices& l, const Rep& v, const LatticeElement& m) {
    RecursiveRanks rr(l, v);
    return rr.get(m.vertex, m.index);
}

Subspace rank_space(const Lattices& l, const Rep& v, const LatticeElement& m) {
    Subspace a = rank_space_recursive(l, v, m);
    Subspace b = rank_space_pullback(l, v, m);
    if (a != b)
        throw std::logic_error("rank space of " + l.fingerprint(m) + ": recursion gives dim " +
                               std::to_string(a.dim()) + ", pullback gives dim " + std::to_string(b.dim()));
    return a;
}

namespace {

// Generic bottom-up pass: spaces[x][e] for every element, given apply/intersect/full for a
// subspace type.
template <class S, class Full, class Apply, class Meet>
std::vector<std::vector<S>> all_rank_spaces(const Lattices& l, Full full, Apply app, Meet meet) {
    const RootedTree& t = l.tree();
    std::vector<std::vector<S>> sp(t.size());
    for (auto x : t.postorder()) {
        const VertexLattice& L = l.at(x);
        if (L.factor_count() == 0) {
            sp[x].push_back(full(x));
            continue;
        }
        // Per factor: the intersection over the maximal elements of each ideal.
        std::vector<std::vector<S>> per(L.factor_count());
        for (std::size_t i = 0; i < L.factor_count(); ++i) {
            const JFactor& f = L.factor(i);
            std::vector<S> img;
            for (const auto& s : sp[f.child]) img.push_back(app(f.arrow, s));
            for (std::size_t k = 0; k < f.J().ideals.size(); ++k) {
                S acc = full(x);
                for (auto m : f.poset().maximal(f.J().ideals[k])) acc = meet(acc, img[m]);
                per[i].push_back(std::move(acc));
            }
        }
        sp[x].reserve(L.size());
        for (std::size_t e = 0; e < L.size(); ++e) {
            S acc = per[0][L.component(e, 0)];
            for (std::size_t i = 1; i < L.factor_count(); ++i) acc = meet(acc, per[i][L.component(e, i)]);
            sp[x].push_back(std::move(acc));
        }
    }
    return sp;
}

}  // namespace

RankVector rank_vector(const Lattices& l, const Rep& v, bool cross_check) {
    auto sp = all_rank_spaces<Subspace>(
        l, [&](std::size_t x) { return Subspace::full(v.field(), v.dim(x)); },
        [&](std::size_t a, const Subspace& s) { return apply(v.mat(a), s); },
        [](const Subspace& a, const Subspace& b) { return intersect(a, b); });
    RankVector rv;
    rv.r.resize(sp.size());
    for (std::size_t x = 0; x < sp.size(); ++x)
        for (std::size_t e = 0; e < sp[x].size(); ++e) {
            rv.r[x].push_back(sp[x][e].dim());
            if (cross_check && rank_space_pullback(l, v, {x, e}) != sp[x][e])
                throw std::logic_error("rank space of " + l.fingerprint(x, e) + ": recursion and pullback disagree");
        }
    return rv;
}

RankVector rank_vector_rational(const Lattices& l, const QRep& v) {
    auto sp = all_rank_spaces<QSubspace>(
        l, [&](std::size_t x) { return q_full(v.dims[x]); },
        [&](std::size_t a, const QSubspace& s) { return q_apply(v.mats[a], s); },
        [](const QSubspace& a, const QSubspace& b) { return q_intersect(a, b); });
    RankVector rv;
    rv.r.resize(sp.size());
    for (std::size_t x = 0; x < sp.size(); ++x)
        for (const auto& s : sp[x]) rv.r[x].push_back(s.dim());
    return rv;
}

StableHom stable_hom(const Lattices& l, std::size_t x, std::size_t m, std::size_t n, Field f) {
    Rep xm = reduced_rep(l, {x, m}, f);
    Rep xn = reduced_rep(l, {x, n}, f);
    auto basis = hom_space(xm, xn);
    StableHom s;
    s.hom_dim = basis.size();
    // X_M and X_N are one dimensional at x, so evaluation has rank 0 or 1.
    for (const auto& b : basis)
        if (!b.maps[x].is_zero()) {
            s.stable_dim = 1;
            break;
        }
    s.vanishing_dim = s.hom_dim - s.stable_dim;
    s.quiver_maps = over_morphisms(l.reduced(x, m)->over, l.reduced(x, n)->over).size();
    return s;
}

// ---------------------------------------------------------------- reduction of quivers over Q

namespace {

std::size_t factor_of_arrow(const VertexLattice& L, std::size_t arrow) {
    for (std::size_t i = 0; i < L.factor_count(); ++i)
        if (L.factor(i).arrow == arrow) return i;
    throw std::logic_error("arrow does not enter the home vertex");
}

std::vector<std::size_t> reduce_values(const Lattices& l, const OverQuiver& q) {
    const Quiver& T = q.tree.quiver();
    if (!is_quiver_map(T, l.tree().quiver(), q.map)) throw std::invalid_argument("reduce: structure map is not a quiver map");
    std::vector<std::size_t> val(T.vertex_count(), 0);
    for (auto v : q.tree.postorder()) {
        std::size_t x = q.map.vertex[v];
        const VertexLattice& L = l.at(x);
        std::vector<std::vector<std::size_t>> gens(L.factor_count());
        for (auto b : T.in_arrows(v)) gens[factor_of_arrow(L, q.map.arrow[b])].push_back(val[T.arrow(b).tail]);
        val[v] = l.generate(x, gens);
    }
    return val;
}

}  // namespace

LatticeElement reduce_element(const Lattices& l, const OverQuiver& q) {
    auto val = reduce_values(l, q);
    std::size_t r = q.tree.root();
    return {q.map.vertex[r], val[r]};
}

Reduction reduce_over_quiver(const Lattices& l, const OverQuiver& q) {
    auto val = reduce_values(l, q);
    const Quiver& T = q.tree.quiver();
    const std::size_t troot = q.tree.root();
    Reduction red;
    red.m = {q.map.vertex[troot], val[troot]};
    auto rq = l.reduced(red.m);
    const Quiver& QM = rq->over.tree.quiver();
    red.g.vertex.assign(QM.vertex_count(), npos);
    red.g.arrow.assign(QM.arrow_count(), npos);
    red.h.vertex.assign(T.vertex_count(), npos);
    red.h.arrow.assign(T.arrow_count(), npos);

    std::function<void(const ReducedQuiver&, std::size_t, std::size_t, std::size_t)> build_g =
        [&](const ReducedQuiver& r, std::size_t voff, std::size_t aoff, std::size_t tv) {
            red.g.vertex[voff] = tv;
            for (const auto& br : r.branches) {
                std::size_t alpha = l.at(r.m.vertex).factor(br.factor).arrow;
                std::size_t pick = npos;
                for (auto b : T.in_arrows(tv))
                    if (q.map.arrow[b] == alpha && val[T.arrow(b).tail] == br.element) {
                        pick = b;
                        break;
                    }
                if (pick == npos) throw std::logic_error("reduce_over_quiver: no arrow realizes a maximal element");
                red.g.arrow[aoff + br.arrow] = pick;
                build_g(*br.sub, voff + br.offset, aoff + br.arrow_offset, T.arrow(pick).tail);
            }
        };
    std::function<void(const ReducedQuiver&, std::size_t, std::size_t, std::size_t)> build_h =
        [&](const ReducedQuiver& r, std::size_t voff, std::size_t aoff, std::size_t tv) {
            red.h.vertex[tv] = voff;
            const VertexLattice& L = l.at(r.m.vertex);
            for (auto b : T.in_arrows(tv)) {
                std::size_t i = factor_of_arrow(L, q.map.arrow[b]);
                std::size_t sb = val[T.arrow(b).tail];
                const VertexLattice& C = l.at(L.factor(i).child);
                const ReducedQuiver::Branch* pick = nullptr;
                for (const auto& br : r.branches) {
                    if (br.factor != i || !C.leq(sb, br.element)) continue;
                    if (!pick || br.element == sb) pick = &br;
                }
                if (!pick) throw std::logic_error("reduce_over_quiver: no branch dominates an arrow");
                red.h.arrow[b] = aoff + pick->arrow;
                build_h(*pick->sub, voff + pick->offset, aoff + pick->arrow_offset, T.arrow(b).tail);
            }
        };
    build_g(*rq, 0, 0, troot);
    build_h(*rq, 0, 0, troot);

    if (!is_quiver_map(QM, T, red.g) || !is_quiver_map(T, QM, red.h))
        throw std::logic_error("reduce_over_quiver: constructed maps are not quiver maps");
    if (compose(red.h, red.g) != identity_map(QM)) throw std::logic_error("reduce_over_quiver: h g is not the identity");
    if (compose(q.map, red.g) != rq->over.map || compose(rq->over.map, red.h) != q.map)
        throw std::logic_error("reduce_over_quiver: maps do not commute with the structure maps");
    return red;
}

// ---------------------------------------------------------------- adjunction

ReducedAdjunction::ReducedAdjunction(const Lattices& l, std::size_t m) : l_(l), m_(m) {
    rq_ = l.reduced(l.tree().root(), m);
    lm_ = std::make_unique<Lattices>(rq_->over.tree, kIdealGuard, l.factor_cache(), false);
    const RootedTree& tm = rq_->over.tree;
    const Quiver& QM = tm.quiver();
    const QuiverMap& c = rq_->over.map;
    pi_.resize(tm.size());
    for (auto v : tm.postorder()) {
        if (v == tm.root()) continue;
        const VertexLattice& LM = lm_->at(v);
        const VertexLattice& L = l.at(c.vertex[v]);
        pi_[v].resize(LM.size());
        for (std::size_t t = 0; t < LM.size(); ++t) {
            std::vector<std::vector<std::size_t>> gens(L.factor_count());
            for (std::size_t j = 0; j < LM.factor_count(); ++j) {
                std::size_t i = factor_of_arrow(L, c.arrow[LM.factor(j).arrow]);
                std::size_t u = QM.arrow(LM.factor(j).arrow).tail;
                for (auto s : LM.maximal(t, j)) gens[i].push_back(pi_[u][s]);
            }
            pi_[v][t] = l.generate(c.vertex[v], gens);
        }
    }
    // branches over the same element of the same lattice share a poset
    std::map<LatticeElement, std::shared_ptr<const Poset>> seen;
    const auto& in = QM.in_arrows(tm.root());
    for (const auto& br : rq_->branches) {
        LatticeElement key{c.vertex[br.offset], br.sub->m.index};
        auto& p = seen[key];
        if (!p) p = std::make_shared<const Poset>(lm_->at(br.offset).poset());
        branch_.push_back(p);
        slot_.push_back(static_cast<std::size_t>(std::find(in.begin(), in.end(), br.arrow) - in.begin()));
    }
}

IdealTuple ReducedAdjunction::bottom() const {
    IdealTuple a;
    for (const auto& p : branch_) a.emplace_back(p->size());
    return a;
}

IdealTuple ReducedAdjunction::top() const {
    IdealTuple a;
    for (const auto& p : branch_) a.push_back(p->down(p->size() - 1));
    return a;
}

bool ReducedAdjunction::leq(const IdealTuple& a, const IdealTuple& b) const {
    for (std::size_t j = 0; j < a.size(); ++j)
        if (!a[j].subset_of(b[j])) return false;
    return true;
}

IdealTuple ReducedAdjunction::principal(std::size_t j, std::size_t t) const {
    IdealTuple a = bottom();
    a[j] = branch_[j]->down(t);
    return a;
}

IdealTuple ReducedAdjunction::coatom(std::size_t j) const {
    IdealTuple a = top();
    a[j].reset(branch_[j]->size() - 1);
    return a;
}

std::size_t ReducedAdjunction::lower(const IdealTuple& a) const {
    const VertexLattice& L = l_.root_lattice();
    std::vector<std::vector<std::size_t>> gens(L.factor_count());
    for (std::size_t j = 0; j < branch_.size(); ++j) {
        const auto& br = rq_->branches[j];
        std::size_t i = factor_of_arrow(L, rq_->over.map.arrow[br.arrow]);
        for (auto s : branch_[j]->maximal(a[j])) gens[i].push_back(pi_[br.offset][s]);
    }
    return l_.generate(l_.tree().root(), gens);
}

IdealTuple ReducedAdjunction::upper(std::size_t n) const {
    const VertexLattice& L = l_.root_lattice();
    IdealTuple out;
    for (std::size_t j = 0; j < branch_.size(); ++j) {
        const auto& br = rq_->branches[j];
        const Bits& target = L.ideal(n, factor_of_arrow(L, rq_->over.map.arrow[br.arrow]));
        Bits b(branch_[j]->size());
        for (std::size_t t = 0; t < b.size(); ++t)
            if (target.test(pi_[br.offset][t])) b.set(t);
        out.push_back(std::move(b));
    }
    return out;
}

std::size_t ReducedAdjunction::lower_explicit(const IdealTuple& a) const {
    const RootedTree& tm = rq_->over.tree;
    std::vector<std::vector<std::size_t>> maxima(tm.quiver().in_arrows(tm.root()).size());
    for (std::size_t j = 0; j < branch_.size(); ++j) maxima[slot_[j]] = branch_[j]->maximal(a[j]);
    auto ra = lm_->reduced_from(tm.root(), maxima);
    OverQuiver composite{ra->over.tree, compose(rq_->over.map, ra->over.map)};
    LatticeElement r = reduce_element(l_, composite);
    if (r.vertex != l_.tree().root()) throw std::logic_error("lower_explicit: root not preserved");
    return r.index;
}

namespace {

IdealTuple random_tuple(const ReducedAdjunction& adj, Rng& rng) {
    IdealTuple a;
    for (std::size_t j = 0; j < adj.branch_count(); ++j) {
        const Poset& p = adj.branch_poset(j);
        std::vector<std::size_t> gens;
        for (u32 k = rng.below(4); k > 0; --k) gens.push_back(rng.below(static_cast<u32>(p.size())));
        a.push_back(p.ideal_generated(gens));
    }
    return a;
}

std::string describe(const ReducedAdjunction& adj, const IdealTuple& a) {
    std::string s = "(";
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (j) s += "; ";
        auto mx = adj.branch_poset(j).maximal(a[j]);
        for (std::size_t k = 0; k < mx.size(); ++k) s += (k ? "," : "") + std::to_string(mx[k]);
    }
    return s + ")";
}

}  // namespace

AdjunctionCheck check_adjunction(const ReducedAdjunction& adj, const AdjunctionLimits& lim, Rng& rng) {
    AdjunctionCheck r;
    const VertexLattice& L = adj.base().root_lattice();
    const std::size_t m = adj.m();
    const std::size_t nb = adj.branch_count();
    for (std::size_t j = 0; j < nb; ++j) r.branch_elements += adj.branch_poset(j).size();
    auto fail = [&](const std::string& why) {
        if (r.ok) r.failure = "M = " + adj.base().fingerprint(adj.base().tree().root(), m) + ": " + why;
        r.ok = false;
    };

    std::vector<IdealTuple> up(L.size());
    for (std::size_t n = 0; n < L.size(); ++n) up[n] = adj.upper(n);
    const IdealTuple top = adj.top(), bot = adj.bottom();
    if (adj.lower(top) != m) fail("pi_*(1) != M");
    if (up[m] != top) fail("pi^*(M) != 1");

    auto galois = [&](const IdealTuple& a) {
        std::size_t la = adj.lower(a);
        for (std::size_t n = 0; n < L.size(); ++n) {
            ++r.pairs;
            if (adj.leq(a, up[n]) != L.leq(la, n)) {
                fail("Galois condition fails at A = " + describe(adj, a) + ", N = " + std::to_string(n));
                return;
            }
        }
    };

    // Enumerate L(Q_M, root) when it is small enough.
    std::vector<std::vector<Bits>> js;
    std::size_t budget = lim.pair_limit / std::max<std::size_t>(L.size(), 1), total = 1;
    r.exhaustive = true;
    for (std::size_t j = 0; j < nb && r.exhaustive; ++j) {
        try {
            auto J = ideals(adj.branch_poset(j), budget / total + 1);
            if (total > budget / J.ideals.size()) r.exhaustive = false;
            else total *= J.ideals.size();
            js.push_back(std::move(J.ideals));
        } catch (const std::length_error&) {
            r.exhaustive = false;
        }
    }
    std::vector<IdealTuple> all;
    if (r.exhaustive) {
        r.reduced_size = total;
        std::vector<std::size_t> ctr(nb, 0);
        for (std::size_t k = 0; k < total; ++k) {
            IdealTuple a(nb);
            for (std::size_t j = 0; j < nb; ++j) a[j] = js[j][ctr[j]];
            for (std::size_t j = nb; j-- > 0;) {
                if (++ctr[j] < js[j].size()) break;
                ctr[j] = 0;
            }
            if (total <= lim.explicit_limit) all.push_back(a);
            galois(a);
            if (!r.ok) break;
        }
    } else {
        // A <= pi^*(N) iff every principal ideal below A is; with pi_*(A) the join of their images,
        // checking join-irreducible A covers all pairs.
        galois(bot);
        std::vector<std::vector<std::size_t>> ji(nb);
        for (std::size_t j = 0; j < nb && r.ok; ++j) {
            for (std::size_t t = 0; t < adj.branch_poset(j).size() && r.ok; ++t) {
                ji[j].push_back(adj.lower(adj.principal(j, t)));
                galois(adj.principal(j, t));
            }
        }
        for (std::size_t s = 0; s < lim.samples && r.ok; ++s) {
            IdealTuple a = random_tuple(adj, rng);
            std::size_t acc = L.bottom();
            for (std::size_t j = 0; j < nb; ++j)
                for (auto t : adj.branch_poset(j).maximal(a[j])) acc = L.join(acc, ji[j][t]);
            ++r.join_checked;
            if (acc != adj.lower(a)) fail("pi_* does not send a join of principal ideals to a join at A = " + describe(adj, a));
        }
    }
    for (std::size_t n = 0; n < L.size() && r.ok; ++n)
        if (adj.lower(up[n]) != L.meet(m, n)) fail("pi_* pi^* N != M meet N at N = " + std::to_string(n));

    // Coatoms of L(Q_M) against lower covers of M.
    std::vector<IdealTuple> coatoms;
    for (std::size_t j = 0; j < nb; ++j) coatoms.push_back(adj.coatom(j));
    auto covers = L.lower_covers(m);
    if (coatoms.size() != covers.size()) fail("coatom count differs from the number of lower covers of M");
    std::vector<std::size_t> images;
    for (const auto& c : coatoms) {
        std::size_t lc = adj.lower(c);
        images.push_back(lc);
        if (!std::binary_search(covers.begin(), covers.end(), lc)) fail("pi_* of a coatom is not a lower cover");
        else if (up[lc] != c) fail("pi^* pi_* is not the identity on coatoms");
    }
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end()) fail("two coatoms have the same image");
    for (auto d : covers) {
        if (std::find(coatoms.begin(), coatoms.end(), up[d]) == coatoms.end()) fail("pi^* of a lower cover is not a coatom");
        else if (adj.lower(up[d]) != d) fail("pi_* pi^* is not the identity on lower covers");
    }

    std::vector<IdealTuple> check = all;
    if (check.empty()) {
        check.push_back(bot);
        check.push_back(top);
        for (const auto& c : coatoms) check.push_back(c);
        for (std::size_t k = 0; k < lim.samples; ++k) check.push_back(random_tuple(adj, rng));
    }
    for (const auto& a : check) {
        if (!r.ok) break;
        ++r.explicit_checked;
        if (adj.lower_explicit(a) != adj.lower(a)) fail("memoized and explicit pi_* differ at A = " + describe(adj, a));
    }
    return r;
}

}  // namespace qrank
