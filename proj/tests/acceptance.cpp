// Acceptance run: one line per criterion with its verdict, wall-clock time and limit.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "qrank/ring.hpp"

using namespace qrank;

namespace {

const Field F(kDefaultPrime);

struct Outcome {
    bool ok = true;
    std::string note;
};

class Check {
public:
    void expect(bool cond, const std::string& what) {
        if (!cond && out_.ok) out_.note = what;
        out_.ok = out_.ok && cond;
    }
    Outcome done(std::string note) {
        if (out_.ok) out_.note = std::move(note);
        return out_;
    }

private:
    Outcome out_;
};

std::vector<std::size_t> dims_up_to(std::size_t n, std::size_t max, Rng& rng) {
    std::vector<std::size_t> d(n);
    for (auto& x : d) x = rng.below(static_cast<u32>(max + 1));
    return d;
}

std::vector<std::size_t> image_of(const ReducedQuiver& rq) {
    std::set<std::size_t> s(rq.over.map.vertex.begin(), rq.over.map.vertex.end());
    return {s.begin(), s.end()};
}

// ---------------------------------------------------------------------------------------------

Outcome lattice_counts() {
    Check c;
    RootedTree q = example_quiver();
    Lattices l(q);
    const auto& Q = q.quiver();
    std::size_t t = l.at(*Q.find_vertex("t")).size(), s = l.at(*Q.find_vertex("s")).size();
    c.expect(t == 8, "|L(Q, t)| = " + std::to_string(t));
    c.expect(s == 20, "|L(Q, s)| = " + std::to_string(s));
    c.expect(l.ring_rank() == 31, "ring rank " + std::to_string(l.ring_rank()));
    return c.done("|L(t)| = 8, |L(s)| = 20, ring rank 31");
}

Outcome subspace_lattices() {
    Check c;
    for (std::size_t n = 2; n <= 5; ++n) {
        RootedTree q = subspace_quiver(n);
        Lattices l(q);
        c.expect(find_isomorphism(l.root_lattice().poset(), Poset::boolean(n)).has_value(),
                 "L(Q, s) is not B_" + std::to_string(n));
        std::set<std::vector<std::size_t>> subs, got;
        for (const auto& b : connected_subquivers(q)) subs.insert(b.elements());
        for (const auto& e : l.all_elements()) {
            auto rq = l.reduced(e);
            auto img = image_of(*rq);
            c.expect(img.size() == rq->over.tree.size(), "structure map not injective for n = " + std::to_string(n));
            c.expect(got.insert(img).second, "two reduced quivers with the same image for n = " + std::to_string(n));
        }
        c.expect(got == subs, "reduced quivers differ from connected subquivers for n = " + std::to_string(n));
    }
    return c.done("n = 2..5: L(s) = B_n, reduced quivers = connected subquivers");
}

Outcome zeta_evaluation() {
    Check c;
    std::size_t pairs = 0;
    for (const auto& q : {subspace_quiver(3), chain_quiver(4), example_quiver()}) {
        Lattices l(q);
        for (const auto& n : l.all_elements()) {
            RankVector r = rank_vector(l, reduced_rep(l, n, F), true);
            const VertexLattice& L = l.at(n.vertex);
            for (std::size_t m = 0; m < L.size(); ++m, ++pairs)
                c.expect(r.r[n.vertex][m] == (L.leq(m, n.index) ? 1u : 0u),
                         "r_M(X_N) != zeta(M, N) on " + q.quiver().name());
        }
    }
    return c.done(std::to_string(pairs) + " pairs on subspace3, chain4, extended-subspace");
}

Outcome tensor_formula() {
    Check c;
    RootedTree q = subspace_quiver(3);
    Lattices l(q);
    Ring r(l, 1);
    std::size_t pairs = 0;
    for (std::size_t x = 0; x < q.size(); ++x)
        for (std::size_t m = 0; m < l.at(x).size(); ++m)
            for (std::size_t n = 0; n < l.at(x).size(); ++n, ++pairs) {
                TensorCheck t = check_tensor_formula(r, {x, m}, {x, n});
                c.expect(t.ok, t.failure);
                Rep p = tensor(reduced_rep(l, {x, m}, F), reduced_rep(l, {x, n}, F));
                std::string why;
                c.expect(verify_certificate(p, r.decompose(p).cert, &why), "certificate: " + why);
            }
    return c.done(std::to_string(pairs) + " pairs, certificates verified");
}

Outcome rank_homomorphism() {
    Check c;
    auto trees = all_trees(6);
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        const RootedTree& q = trees[rng.below(static_cast<u32>(trees.size()))];
        Lattices l(q);
        Rep v = random_rep(q.quiver_ptr(), F, dims_up_to(q.size(), 3, rng), rng);
        Rep w = random_rep(q.quiver_ptr(), F, dims_up_to(q.size(), 3, rng), rng);
        RankVector rv = rank_vector(l, v), rw = rank_vector(l, w);
        RankVector rs = rank_vector(l, dsum(v, w)), rt = rank_vector(l, tensor(v, w));
        for (const auto& e : l.all_elements()) {
            c.expect(rs.at(e) == rv.at(e) + rw.at(e), "not additive on instance " + std::to_string(i));
            c.expect(rt.at(e) == rv.at(e) * rw.at(e), "not multiplicative on instance " + std::to_string(i));
        }
    }
    return c.done("100 instances on trees with at most 6 vertices");
}

Outcome splitting() {
    Check c;
    RootedTree q = subspace_quiver(5);
    Lattices l(q);
    const VertexLattice& L = l.root_lattice();
    Rng rng(6);
    Rep v = random_rep(q.quiver_ptr(), F, {3, 2, 2, 2, 2, 2}, rng);
    auto maxima = maximal_nonvanishing(l, v);
    std::set<std::size_t> pairs;
    for (std::size_t e = 0; e < L.size(); ++e) {
        std::size_t arms = 0;
        for (std::size_t i = 0; i < L.factor_count(); ++i) arms += L.ideal(e, i).count();
        if (arms == 2) pairs.insert(e);
    }
    c.expect(std::set<std::size_t>(maxima.begin(), maxima.end()) == pairs, "maximal N are not the 10 pairs");
    std::size_t worst = 0;
    std::ostringstream ls;
    for (auto n : pairs) {
        Rep x = reduced_rep(l, {q.root(), n}, F);
        std::size_t ones = 0;
        for (auto d : x.dims()) ones += d == 1;
        c.expect(ones == 3 && x.total_dim() == 3 && x.dim(q.root()) == 1, "X_N does not have dims (1,1,0,0,0;1)");
        SplittingReport s = verify_splitting_at(l, v, n, 4);
        c.expect(s.l != 0, "no split up to l = 4 at " + l.fingerprint(q.root(), n));
        for (const auto& a : s.attempts)
            if (a.l == s.l) {
                c.expect(a.multiplicity == a.expected, "multiplicity differs from r_N(V)^l");
                c.expect(a.complement_rank == 0, "complement has nonzero N-rank");
            }
        worst = std::max(worst, s.l);
    }
    return c.done(std::to_string(pairs.size()) + " pairs, r_N(V) = 1, split at l <= " + std::to_string(worst));
}

Outcome nilpotency() {
    Check c;
    std::ostringstream note;
    for (auto t : {chain_quiver(2), chain_quiver(3), subspace_quiver(3)}) {
        Lattices l(t);
        Ring r(l, 7);
        const std::size_t root = t.root();
        std::set<std::size_t> reduced;
        for (std::size_t m = 0; m < l.root_lattice().size(); ++m) reduced.insert(r.reduced_label({root, m}));
        std::map<std::size_t, Rep> found;
        Rng rng(7);
        for (int i = 0; i < 200; ++i) {
            auto d = dims_up_to(t.size(), 3, rng);
            d[root] = 1 + rng.below(3);
            Rep v = random_rep(t.quiver_ptr(), F, d, rng);
            for (auto [id, k] : r.decompose(v).terms)
                if (r.root_supported(id) && !reduced.count(id)) found.emplace(id, r.witness(id));
        }
        std::size_t worst = 0;
        for (const auto& [id, w] : found) {
            NilpotencyReport n = verify_nilpotency(r, w, 4);
            c.expect(n.indecomposable && !n.reduced, "case is not a non-reduced indecomposable");
            c.expect(n.k != 0, "no nilpotency up to k = 4 on " + t.quiver().name());
            worst = std::max(worst, n.k);
        }
        note << t.quiver().name() << ": " << found.size() << " cases";
        if (!found.empty()) note << ", k <= " << worst;
        note << "; ";
    }
    std::string s = note.str();
    return c.done(s.substr(0, s.size() - 2));
}

Outcome adjunction() {
    Check c;
    Rng rng(8);
    std::size_t elements = 0, exhaustive = 0;
    for (const auto& t : all_trees(6)) {
        Lattices l(t);
        for (std::size_t m = 0; m < l.root_lattice().size(); ++m, ++elements) {
            ReducedAdjunction adj(l, m);
            AdjunctionCheck a = check_adjunction(adj, AdjunctionLimits{}, rng);
            c.expect(a.ok, t.quiver().name() + ": " + a.failure);
            exhaustive += a.exhaustive;
        }
    }
    return c.done(std::to_string(elements) + " elements M on 37 trees, " + std::to_string(exhaustive) +
                  " with all pairs enumerated");
}

Outcome hom_pushforward() {
    Check c;
    auto trees = all_trees(5);
    Rng rng(9);
    for (int i = 0; i < 100; ++i) {
        const RootedTree& q = trees[rng.below(static_cast<u32>(trees.size()))];
        OverQuiver o = random_over_quiver(q, rng, 2, 8);
        c.expect(o.map.vertex[o.tree.root()] == q.root(), "map does not preserve the root");
        Rep v = random_rep(o.tree.quiver_ptr(), F, dims_up_to(o.tree.size(), 2, rng), rng);
        Rep w = random_rep(q.quiver_ptr(), F, dims_up_to(q.size(), 2, rng), rng);
        std::size_t lhs = hom_dim(pushforward(q.quiver_ptr(), o.map, v), w);
        std::size_t rhs = hom_dim(v, pullback(o.tree.quiver_ptr(), o.map, w));
        c.expect(lhs == rhs, "instance " + std::to_string(i) + ": " + std::to_string(lhs) + " != " + std::to_string(rhs));
    }
    return c.done("100 root preserving instances");
}

Outcome engine_soundness() {
    Check c;
    auto trees = all_trees(5);
    auto run = [&](std::vector<std::string>* log) {
        Rng rng(10);
        for (int i = 0; i < 50; ++i) {
            const RootedTree& q = trees[rng.below(static_cast<u32>(trees.size()))];
            Lattices l(q);
            Ring r(l, 10);
            Rep v = random_rep(q.quiver_ptr(), F, dims_up_to(q.size(), 3, rng), rng);
            Rep w = random_rep(q.quiver_ptr(), F, dims_up_to(q.size(), 3, rng), rng);
            Rep s = dsum(v, w);
            std::string why;
            for (const Rep* x : {&v, &w, &s}) {
                auto d = r.decompose(*x);
                c.expect(verify_certificate(*x, d.cert, &why), "certificate on instance " + std::to_string(i) + ": " + why);
            }
            RingElement ev = r.element(v), ew = r.element(w), es = r.element(s);
            c.expect(es == ev + ew, "decompose(V + W) is not the union on instance " + std::to_string(i));
            log->push_back(r.format(es));
        }
    };
    std::vector<std::string> a, b;
    run(&a);
    run(&b);
    c.expect(a == b, "results differ between identical runs");
    return c.done("50 instances, certificates verified, repeat run identical");
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double limit;
        std::function<Outcome()> fn;
    };
    const std::vector<Criterion> all{
        {"lattice counts", 1, lattice_counts},
        {"subspace lattices", 5, subspace_lattices},
        {"zeta evaluation", 30, zeta_evaluation},
        {"tensor formula", 60, tensor_formula},
        {"rank homomorphism", 60, rank_homomorphism},
        {"splitting", 120, splitting},
        {"nilpotency", 120, nilpotency},
        {"reduced adjunction", 60, adjunction},
        {"hom/pushforward adjunction", 30, hom_pushforward},
        {"engine soundness", 60, engine_soundness},
    };
    int failed = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = all[i].fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (o.ok && secs > all[i].limit) o = {false, o.note + "; over the time limit"};
        failed += !o.ok;
        std::printf("%s  %2zu  %-27s %8.2f s / %4.0f s  %s\n", o.ok ? "PASS" : "FAIL", i + 1, all[i].name, secs,
                    all[i].limit, o.note.c_str());
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
