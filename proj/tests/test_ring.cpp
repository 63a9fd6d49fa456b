#include <gtest/gtest.h>

#include <set>
#include <thread>

#include "qrank/ring.hpp"
#include "support.hpp"

using namespace qrank;
using qrank::testing::random_dims;

namespace {

const Field F(32003);

std::map<std::vector<std::size_t>, std::size_t> dims_multiset(const Ring& r, const Decomposition& d) {
    std::map<std::vector<std::size_t>, std::size_t> out;
    for (auto [id, k] : d.terms) out[r.label(id).dims] += k;
    return out;
}

// On the linearly oriented chain 0 -> 1 -> ... -> n-1 every indecomposable is an interval
// [i, j], and its multiplicity is an alternating sum of ranks of path maps.
std::map<std::vector<std::size_t>, std::size_t> interval_multiplicities(const RootedTree& t, const Rep& v) {
    const std::size_t n = t.size();
    auto r = [&](std::ptrdiff_t i, std::ptrdiff_t j) -> i64 {
        if (i < 0 || j >= static_cast<std::ptrdiff_t>(n)) return 0;
        return static_cast<i64>(path_map(t, v, i, j).rank());
    };
    std::map<std::vector<std::size_t>, std::size_t> out;
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
        for (std::ptrdiff_t j = i; j < static_cast<std::ptrdiff_t>(n); ++j) {
            i64 m = r(i, j) - r(i - 1, j) - r(i, j + 1) + r(i - 1, j + 1);
            EXPECT_GE(m, 0);
            if (m <= 0) continue;
            std::vector<std::size_t> d(n, 0);
            for (auto k = i; k <= j; ++k) d[k] = 1;
            out[d] += static_cast<std::size_t>(m);
        }
    return out;
}

Rep low_rank_rep(const RootedTree& t, const std::vector<std::size_t>& dims, Rng& rng) {
    std::vector<Matrix> mats;
    for (std::size_t a = 0; a < t.quiver().arrow_count(); ++a) {
        const Arrow& ar = t.quiver().arrow(a);
        std::size_t k = rng.below(3);
        mats.push_back(Matrix::random(F, dims[ar.head], k, rng) * Matrix::random(F, k, dims[ar.tail], rng));
    }
    return Rep(t.quiver_ptr(), F, dims, mats);
}

std::vector<i64> flat_ranks(const Lattices& l, const RankVector& rv) {
    std::vector<i64> out;
    for (const auto& e : l.all_elements()) out.push_back(static_cast<i64>(rv.at(e)));
    return out;
}

}  // namespace

TEST(Decompose, IdentitySquared) {
    RootedTree q = example_quiver();
    Lattices l(q);
    Ring r(l, 1);
    Rep id = identity_rep(q.quiver_ptr(), F);
    auto d = r.decompose(dsum(id, id));
    ASSERT_EQ(d.terms.size(), 1u);
    EXPECT_EQ(d.terms[0].second, 2u);
    EXPECT_EQ(d.terms[0].first, r.label_of_indecomposable(id));
    EXPECT_TRUE(verify_certificate(dsum(id, id), d.cert));
}

TEST(Decompose, ReducedRepsAreDistinctIndecomposables) {
    for (const auto& t : {subspace_quiver(3), example_quiver(), chain_quiver(4)}) {
        Lattices l(t);
        Ring r(l, 2);
        std::set<std::size_t> ids;
        for (const auto& e : l.all_elements()) {
            Rep x = reduced_rep(l, e);
            auto d = r.decompose(x);
            ASSERT_EQ(d.terms.size(), 1u);
            EXPECT_EQ(d.terms[0].second, 1u);
            ids.insert(d.terms[0].first);
            EXPECT_EQ(d.terms[0].first, r.reduced_label(e));
        }
        EXPECT_EQ(ids.size(), l.ring_rank());
    }
}

TEST(Decompose, ChainMatchesIntervalFormula) {
    Rng rng(3);
    for (std::size_t n : {2u, 3u, 4u}) {
        RootedTree t = chain_quiver(n);
        Lattices l(t);
        Ring r(l, 3);
        for (int i = 0; i < 15; ++i) {
            Rep v = low_rank_rep(t, random_dims(n, 3, rng), rng);
            auto d = r.decompose(v);
            EXPECT_TRUE(verify_certificate(v, d.cert));
            EXPECT_EQ(dims_multiset(r, d), interval_multiplicities(t, v));
        }
    }
}

TEST(Decompose, CertificatesAndDeterminism) {
    Rng rng(4);
    RootedTree q = subspace_quiver(3);
    Lattices l(q);
    for (int i = 0; i < 20; ++i) {
        Rep v = random_rep(q.quiver_ptr(), F, random_dims(4, 3, rng), rng);
        u64 seed = rng.next();
        KrullSchmidt a = krull_schmidt(v, seed), b = krull_schmidt(v, seed);
        std::string why;
        EXPECT_TRUE(verify_certificate(v, a, &why)) << why;
        ASSERT_EQ(a.summands.size(), b.summands.size());
        for (std::size_t k = 0; k < a.summands.size(); ++k) {
            EXPECT_EQ(a.summands[k].rep, b.summands[k].rep);
            EXPECT_EQ(a.summands[k].incl, b.summands[k].incl);
        }
    }
}

TEST(Decompose, TamperedCertificateIsRejected) {
    Rng rng(5);
    RootedTree q = subspace_quiver(2);
    Rep v = dsum(identity_rep(q.quiver_ptr(), F), random_rep(q.quiver_ptr(), F, {2, 1, 1}, rng));
    KrullSchmidt ks = krull_schmidt(v, 7);
    ASSERT_GE(ks.summands.size(), 2u);
    KrullSchmidt bad = ks;
    bad.summands.pop_back();
    EXPECT_FALSE(verify_certificate(v, bad));
    bad = ks;
    bad.summands[0].proj[q.root()] = bad.summands[0].proj[q.root()].scaled(2);
    EXPECT_FALSE(verify_certificate(v, bad));
}

TEST(Decompose, DirectSumIsUnion) {
    Rng rng(6);
    RootedTree q = example_quiver();
    Lattices l(q);
    Ring r(l, 6);
    for (int i = 0; i < 15; ++i) {
        Rep v = random_rep(q.quiver_ptr(), F, random_dims(5, 2, rng), rng);
        Rep w = random_rep(q.quiver_ptr(), F, random_dims(5, 2, rng), rng);
        EXPECT_EQ(r.element(dsum(v, w)), r.element(v) + r.element(w));
    }
}

TEST(Decompose, GuardThrows) {
    RootedTree q = chain_quiver(2);
    Rng rng(7);
    Rep v = random_rep(q.quiver_ptr(), F, {30, 30}, rng);
    EXPECT_THROW(krull_schmidt(v, 1, DecomposeOptions{16, 8, 64}), std::length_error);
}

TEST(Isomorphism, ChangeOfBasisIsFound) {
    Rng rng(8);
    RootedTree q = subspace_quiver(3);
    Rep u = random_rep(q.quiver_ptr(), F, {2, 1, 1, 1}, rng);  // generic, indecomposable
    ASSERT_EQ(krull_schmidt(u, 1).summands.size(), 1u);
    std::vector<Matrix> g, mats;
    for (std::size_t x = 0; x < 4; ++x) g.push_back(Matrix::random(F, u.dim(x), u.dim(x), rng));
    for (std::size_t a = 0; a < 3; ++a) {
        const Arrow& ar = q.quiver().arrow(a);
        mats.push_back(g[ar.head] * u.mat(a) * *g[ar.tail].inverse());
    }
    Rep w(q.quiver_ptr(), F, u.dims(), mats);
    auto iso = indecomposable_isomorphism(u, w, rng);
    ASSERT_TRUE(iso);
    EXPECT_TRUE(is_isomorphism(u, w, *iso));
    Rep other = reduced_rep(Lattices(q), {q.root(), 3});
    EXPECT_FALSE(indecomposable_isomorphism(u, other, rng));
}

TEST(SupportAlgebra, Identities) {
    RootedTree q = subspace_quiver(3);
    Lattices l(q);
    Ring r(l, 9);
    SupportAlgebra sa(r);
    EXPECT_EQ(sa.size(), 11u);
    for (std::size_t i = 0; i < sa.size(); ++i) {
        if (sa.subquiver(i).count() == 1) {
            std::size_t v = sa.subquiver(i).elements()[0];
            EXPECT_EQ(sa.idempotent(i), r.element(simple_rep(q.quiver_ptr(), F, v)));
        }
        RingElement s;
        for (auto j : sa.order().down(i).elements()) s = s + sa.idempotent(j);
        EXPECT_EQ(s, sa.identity(i));
    }
    Rng rng(10);
    for (int t = 0; t < 5; ++t) {
        auto d = random_dims(4, 2, rng);
        Rep v = random_rep(q.quiver_ptr(), F, d, rng);
        Bits supp = support(v).vertices;
        RingElement ev = r.element(v);
        for (std::size_t i = 0; i < sa.size(); ++i)
            if (!sa.subquiver(i).subset_of(supp)) EXPECT_TRUE(r.mul(sa.idempotent(i), ev).is_zero());
    }
}

TEST(FineIdempotent, BottomAndOrthogonality) {
    RootedTree q = subspace_quiver(3);
    Lattices l(q);
    Ring r(l, 11);
    const VertexLattice& L = l.root_lattice();
    EXPECT_EQ(fine_idempotent(r, L.bottom()), r.basis(r.reduced_label({q.root(), L.bottom()})));
    std::vector<RingElement> f;
    for (std::size_t m = 0; m < L.size(); ++m) f.push_back(fine_idempotent(r, m));
    std::size_t pairs = 0;
    for (std::size_t m = 0; m < L.size(); ++m)
        for (std::size_t n = m; n < L.size(); ++n) {
            RingElement p = r.project_root(r.mul(f[m], f[n]));
            if (m == n) {
                EXPECT_EQ(p, f[m]);
            } else {
                ++pairs;
                EXPECT_TRUE(p.is_zero());
            }
        }
    EXPECT_EQ(pairs, 28u);
}

TEST(FineIdempotent, CompletenessOnRandomReps) {
    RootedTree q = example_quiver();
    Lattices l(q);
    Ring r(l, 12);
    RingElement total;
    for (std::size_t m = 0; m < l.root_lattice().size(); ++m) total = total + fine_idempotent(r, m);
    Rng rng(13);
    for (int t = 0; t < 8; ++t) {
        auto d = random_dims(5, 2, rng);
        d[q.root()] = 1 + rng.below(2);
        RingElement v = r.project_root(r.element(random_rep(q.quiver_ptr(), F, d, rng)));
        EXPECT_EQ(r.project_root(r.mul(total, v)), v);
    }
}

TEST(FineIdempotent, PullbackAlongReducedQuiver) {
    for (const auto& q : {subspace_quiver(3), example_quiver()}) {
        Lattices l(q);
        Ring r(l, 14);
        for (std::size_t m = 0; m < l.root_lattice().size(); ++m) {
            auto rq = l.reduced(q.root(), m);
            Lattices lm(rq->over.tree);
            Ring rm(lm, 15);
            RingElement pulled = rm.project_root(pullback_element(r, rm, rq->over.map, fine_idempotent(r, m)));
            EXPECT_EQ(pulled, fine_idempotent(rm, lm.root_lattice().top())) << l.fingerprint(q.root(), m);
        }
    }
}

TEST(FineSupport, ReducedAndLatticeProperties) {
    RootedTree q = example_quiver();
    Lattices l(q);
    Ring r(l, 16);
    const VertexLattice& L = l.root_lattice();
    for (std::size_t m = 0; m < L.size(); ++m) EXPECT_EQ(fine_support(r, reduced_rep(l, {q.root(), m})), m);
    Rng rng(17);
    for (int t = 0; t < 10; ++t) {
        std::size_t a = rng.below(static_cast<u32>(L.size())), b = rng.below(static_cast<u32>(L.size()));
        Rep xa = reduced_rep(l, {q.root(), a}), xb = reduced_rep(l, {q.root(), b});
        EXPECT_EQ(fine_support(r, dsum(xa, xb)), L.join(a, b));
        Rep v = random_rep(q.quiver_ptr(), F, {1, 1, 1, 0, 1}, rng);
        Rep w = random_rep(q.quiver_ptr(), F, {2, 1, 1, 1, 0}, rng);
        std::size_t fv = fine_support(r, v), fw = fine_support(r, w);
        EXPECT_EQ(fine_support(r, dsum(v, w)), L.join(fv, fw));
        EXPECT_TRUE(L.leq(fine_support(r, tensor(v, w)), L.meet(fv, fw)));
    }
    Rep off_root = simple_rep(q.quiver_ptr(), F, 2);
    EXPECT_THROW(fine_support(r, off_root), std::invalid_argument);
}

TEST(TensorFormula, AllPairsOnExample) {
    RootedTree q = example_quiver();
    Lattices l(q);
    Ring r(l, 18);
    for (std::size_t x = 0; x < q.size(); ++x)
        for (std::size_t m = 0; m < l.at(x).size(); ++m)
            for (std::size_t n = 0; n < l.at(x).size(); ++n) {
                TensorCheck c = check_tensor_formula(r, {x, m}, {x, n});
                EXPECT_TRUE(c.ok) << c.failure;
            }
}

TEST(Homomorphism, RanksOfRingProducts) {
    Rng rng(19);
    RootedTree q = subspace_quiver(3);
    Lattices l(q);
    Ring r(l, 19);
    for (int t = 0; t < 10; ++t) {
        Rep v = random_rep(q.quiver_ptr(), F, random_dims(4, 2, rng), rng);
        Rep w = random_rep(q.quiver_ptr(), F, random_dims(4, 2, rng), rng);
        auto rv = flat_ranks(l, rank_vector(l, v)), rw = flat_ranks(l, rank_vector(l, w));
        EXPECT_EQ(r.ranks(r.element(v)), rv);
        auto prod = r.ranks(r.mul(r.element(v), r.element(w)));
        auto direct = flat_ranks(l, rank_vector(l, tensor(v, w)));
        for (std::size_t i = 0; i < rv.size(); ++i) {
            EXPECT_EQ(prod[i], rv[i] * rw[i]);
            EXPECT_EQ(direct[i], rv[i] * rw[i]);
        }
    }
}

// [V] minus the reduced classes with the same root ranks lies in the kernel at the root, so
// some power vanishes in R_sigma.
TEST(Kernel, RankZeroElementIsNilpotent) {
    Rng rng(20);
    RootedTree q = subspace_quiver(3);
    Lattices l(q);
    Ring r(l, 20);
    const VertexLattice& L = l.root_lattice();
    const std::size_t root = q.root();
    for (int t = 0; t < 4; ++t) {
        Rep v = random_rep(q.quiver_ptr(), F, {2, 1, 1, 1 + rng.below(2)}, rng);
        RankVector rv = rank_vector(l, v);
        RingElement z = r.project_root(r.element(v));
        for (std::size_t n = 0; n < L.size(); ++n) {
            i64 c = 0;
            for (std::size_t m = 0; m < L.size(); ++m)
                if (L.leq(n, m)) c += L.mobius(n, m) * static_cast<i64>(rv.r[root][m]);
            if (c) z = z - c * r.basis(r.reduced_label({root, n}));
        }
        auto zr = r.ranks(z);
        auto all = l.all_elements();
        for (std::size_t i = 0; i < all.size(); ++i)
            if (all[i].vertex == root) EXPECT_EQ(zr[i], 0);
        RingElement p = z;
        std::size_t k = 1;
        while (!p.is_zero() && k < 4) p = r.project_root(r.mul(p, z)), ++k;
        EXPECT_TRUE(p.is_zero()) << r.format(z);
    }
}

TEST(TensorPowers, LabelSetStabilizes) {
    RootedTree q = subspace_quiver(3);
    Lattices l(q);
    Ring r(l, 21);
    Rng rng(21);
    Rep v = random_rep(q.quiver_ptr(), F, {2, 1, 1, 1}, rng);
    RingElement a = r.element(v), p = a;
    std::vector<std::size_t> growth;
    std::set<std::size_t> seen;
    for (int i = 1; i <= 6; ++i) {
        if (i > 1) p = r.mul(p, a);
        for (auto [id, c] : p.terms) seen.insert(id);
        growth.push_back(seen.size());
    }
    EXPECT_EQ(growth[5], growth[4]);
    EXPECT_LE(growth.back(), r.interner().size());
}

TEST(Splitting, ReducedSplitsAtOnce) {
    RootedTree q = example_quiver();
    Lattices l(q);
    for (std::size_t n = 0; n < l.root_lattice().size(); ++n) {
        Rep x = reduced_rep(l, {q.root(), n});
        auto reps = verify_splitting(l, x, 2);
        ASSERT_EQ(reps.size(), 1u);
        EXPECT_EQ(reps[0].n, n);
        EXPECT_EQ(reps[0].l, 1u);
    }
}

TEST(Splitting, BottomOnly) {
    RootedTree q = subspace_quiver(3);
    Lattices l(q);
    Rng rng(22);
    // arrows zero: only the bottom element has nonzero rank
    Rep v(q.quiver_ptr(), F, {2, 1, 1, 0},
          {Matrix::zero(F, 2, 1), Matrix::zero(F, 2, 1), Matrix::zero(F, 2, 0)});
    auto reps = verify_splitting(l, v, 3);
    ASSERT_EQ(reps.size(), 1u);
    EXPECT_EQ(reps[0].n, l.root_lattice().bottom());
    EXPECT_EQ(reps[0].l, 1u);
    EXPECT_EQ(reps[0].attempts[0].multiplicity, 2u);
}

TEST(Splitting, GenericThreeSubspace) {
    RootedTree q = subspace_quiver(3);
    Lattices l(q);
    Rng rng(23);
    Rep v = random_rep(q.quiver_ptr(), F, {3, 2, 2, 2}, rng);
    auto reps = verify_splitting(l, v, 3);
    EXPECT_EQ(reps.size(), 3u);  // the three pairs of arms
    for (const auto& s : reps) {
        EXPECT_EQ(s.rank, 1u);
        EXPECT_GE(s.l, 1u);
        EXPECT_EQ(s.attempts.back().multiplicity, 1u);
        EXPECT_EQ(s.attempts.back().complement_rank, 0u);
    }
}

TEST(Nilpotency, GenericIndecomposableOnThreeSubspace) {
    RootedTree q = subspace_quiver(3);
    Lattices l(q);
    Ring r(l, 24);
    Rng rng(24);
    Rep v = random_rep(q.quiver_ptr(), F, {2, 1, 1, 1}, rng);
    NilpotencyReport n = verify_nilpotency(r, v, 4);
    EXPECT_TRUE(n.indecomposable);
    EXPECT_FALSE(n.reduced);
    EXPECT_EQ(n.rank_m, 0u);
    EXPECT_GE(n.k, 1u);
}

TEST(Nilpotency, ReducedIsNotNilpotent) {
    for (const auto& q : {chain_quiver(2), subspace_quiver(3)}) {
        Lattices l(q);
        Ring r(l, 25);
        for (std::size_t m = 0; m < l.root_lattice().size(); ++m) {
            NilpotencyReport n = verify_nilpotency(r, reduced_rep(l, {q.root(), m}), 4);
            EXPECT_TRUE(n.reduced);
            EXPECT_EQ(n.m, m);
            EXPECT_EQ(n.k, 0u);
            RingElement f = fine_idempotent(r, m);
            EXPECT_EQ(r.project_root(r.mul(f, r.basis(r.reduced_label({q.root(), m})))), f);
        }
    }
}

TEST(Interner, ConcurrentInsertsAgree) {
    RootedTree q = example_quiver();
    Lattices l(q);
    Ring r(l, 26);
    std::vector<Rep> reps;
    for (const auto& e : l.all_elements()) reps.push_back(reduced_rep(l, e));
    std::vector<std::size_t> a(reps.size()), b(reps.size());
    std::thread t1([&] {
        for (std::size_t i = 0; i < reps.size(); ++i) a[i] = r.label_of_indecomposable(reps[i]);
    });
    std::thread t2([&] {
        for (std::size_t i = reps.size(); i-- > 0;) b[i] = r.label_of_indecomposable(reps[i]);
    });
    t1.join();
    t2.join();
    EXPECT_EQ(a, b);
    EXPECT_EQ(r.interner().size(), reps.size());
}
