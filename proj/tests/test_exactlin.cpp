#include <gtest/gtest.h>

#include "qrank/matrix.hpp"
#include "qrank/poly.hpp"
#include "qrank/rational.hpp"
#include "support.hpp"

using namespace qrank;
using qrank::testing::all_vectors;
using qrank::testing::mat_vec;
using qrank::testing::naive_rank;

TEST(Field, InverseAndPow) {
    Field f(7);
    for (u32 a = 1; a < 7; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
    EXPECT_EQ(f.pow(3, 6), 1u);
    EXPECT_EQ(f.from_int(-1), 6u);
    EXPECT_EQ(f.to_signed(6), -1);
    EXPECT_THROW(Field(8), std::invalid_argument);
}

TEST(Field, RngIsReproducible) {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
}

TEST(Image, RankOneSpan) {
    Field f(7);
    Subspace s = image(Matrix::from_ints(f, 2, 2, {1, 0, 1, 0}));
    EXPECT_EQ(s.dim(), 1u);
    EXPECT_TRUE(s.contains(std::vector<u32>{1, 1}));
    EXPECT_FALSE(s.contains(std::vector<u32>{1, 0}));
}

TEST(Image, ZeroMatrix) {
    Field f(7);
    EXPECT_EQ(image(Matrix::zero(f, 4, 4)).dim(), 0u);
}

TEST(Image, RandomAgainstNaiveRank) {
    Rng rng(1);
    for (u32 p : {2u, 3u, 7u, 32003u}) {
        Field f(p);
        for (int t = 0; t < 50; ++t) {
            // product of 3x r and r x 5 random factors, so small ranks show up
            std::size_t r = rng.below(4);
            Matrix m = Matrix::random(f, 3, r, rng) * Matrix::random(f, r, 5, rng);
            std::size_t want = naive_rank(m);
            EXPECT_EQ(image(m).dim(), want);
            EXPECT_EQ(m.rank(), want);
            EXPECT_EQ(kernel(m).dim(), 5 - want);
        }
    }
}

TEST(Intersect, Lines) {
    Field f(7);
    Subspace a = Subspace::span_cols(Matrix::from_ints(f, 2, 1, {1, 0}));
    Subspace b = Subspace::span_cols(Matrix::from_ints(f, 2, 1, {1, 1}));
    EXPECT_EQ(intersect(a, b).dim(), 0u);
    EXPECT_EQ(intersect(a, a), a);
}

TEST(Intersect, RandomPlanesMembership) {
    Field f(7);
    Rng rng(2);
    for (int t = 0; t < 30; ++t) {
        Subspace a = image(Matrix::random(f, 3, 2, rng));
        Subspace b = image(Matrix::random(f, 3, 2, rng));
        Subspace c = intersect(a, b);
        EXPECT_GE(c.dim() + 3, a.dim() + b.dim());
        Matrix cols = c.basis_cols();
        for (std::size_t j = 0; j < cols.cols(); ++j) {
            Matrix v = cols.block(0, j, 3, 1);
            EXPECT_TRUE(solve(a.basis_cols(), v).has_value());
            EXPECT_TRUE(solve(b.basis_cols(), v).has_value());
        }
        EXPECT_EQ(sum(a, b).dim() + c.dim(), a.dim() + b.dim());
    }
}

TEST(Preimage, Trivial) {
    Field f(7);
    Rng rng(3);
    Matrix m = Matrix::random(f, 2, 4, rng);
    EXPECT_EQ(preimage(m, Subspace::full(f, 2)).dim(), 4u);
    EXPECT_EQ(preimage(m, Subspace::zero(f, 2)), kernel(m));
}

// Over GF(2) every vector can be listed, so the preimage is counted directly.
TEST(Preimage, EnumerationOverGF2) {
    Field f(2);
    Rng rng(4);
    for (int t = 0; t < 200; ++t) {
        std::size_t n = 1 + rng.below(4), k = 1 + rng.below(4);
        Matrix m = Matrix::random(f, k, n, rng);
        Subspace s = image(Matrix::random(f, k, rng.below(static_cast<u32>(k + 1)), rng));
        Subspace pre = preimage(m, s);
        std::size_t count = 0;
        for (const auto& v : all_vectors(2, n)) {
            bool in = s.contains(mat_vec(m, v));
            count += in;
            EXPECT_EQ(pre.contains(v), in);
        }
        EXPECT_EQ(count, std::size_t(1) << pre.dim());
        EXPECT_EQ(pre.dim(), kernel(m).dim() + intersect(s, image(m)).dim());
    }
}

TEST(Solve, IdentityAndInconsistent) {
    Field f(11);
    Rng rng(5);
    Matrix b = Matrix::random(f, 3, 2, rng);
    auto x = solve(Matrix::identity(f, 3), b);
    ASSERT_TRUE(x);
    EXPECT_EQ(*x, b);
    Matrix nz = Matrix::zero(f, 3, 1);
    nz(0, 0) = 1;
    EXPECT_FALSE(solve(Matrix::zero(f, 3, 3), nz));
}

TEST(Solve, RandomConsistentResidual) {
    Field f(32003);
    Rng rng(6);
    for (int t = 0; t < 40; ++t) {
        std::size_t r = 1 + rng.below(4), c = 1 + rng.below(4);
        Matrix a = Matrix::random(f, r, c, rng) * Matrix::random(f, c, c, rng);
        Matrix b = a * Matrix::random(f, c, 2, rng);
        auto x = solve(a, b);
        ASSERT_TRUE(x);
        EXPECT_TRUE((a * *x - b).is_zero());
    }
}

TEST(Matrix, LiteralRoundTrip) {
    Field f(7);
    Matrix m = Matrix::from_ints(f, 2, 3, {1, -2, 3, 0, 6, 5});
    EXPECT_EQ(parse_matrix_literal(f, m.literal()), m);
    EXPECT_THROW(parse_matrix_literal(f, "[[1,2],[3]]"), std::invalid_argument);
    Matrix e = parse_matrix_literal(f, "[]", 0, 3);
    EXPECT_EQ(e.cols(), 3u);
}

TEST(Matrix, KronShapeAndMixedProduct) {
    Field f(13);
    Rng rng(7);
    Matrix a = Matrix::random(f, 2, 3, rng), b = Matrix::random(f, 3, 2, rng);
    Matrix c = Matrix::random(f, 3, 2, rng), d = Matrix::random(f, 2, 2, rng);
    EXPECT_EQ(kron(a, b) * kron(c, d), kron(a * c, b * d));
    EXPECT_EQ(kron(a, b).rows(), 6u);
}

TEST(Matrix, InverseOfRandomInvertible) {
    Field f(32003);
    Rng rng(8);
    Matrix m = Matrix::random(f, 5, 5, rng);
    auto inv = m.inverse();
    ASSERT_TRUE(inv);
    EXPECT_TRUE((m * *inv).is_identity());
    EXPECT_FALSE(Matrix::zero(f, 2, 2).inverse());
}

TEST(Annihilator, Dimension) {
    Field f(5);
    Rng rng(9);
    Subspace s = image(Matrix::random(f, 4, 2, rng));
    Subspace a = annihilator(s);
    EXPECT_EQ(a.dim() + s.dim(), 4u);
    EXPECT_TRUE((a.basis() * s.basis_cols()).is_zero());
}

TEST(Factor, DifferenceOfSquares) {
    Field f(7);
    auto fs = factor(Poly::from_ints(f, {-1, 0, 1}));
    ASSERT_EQ(fs.size(), 2u);
    EXPECT_EQ(fs[0].poly, Poly::from_ints(f, {1, 1}));
    EXPECT_EQ(fs[1].poly, Poly::from_ints(f, {-1, 1}));
}

TEST(Factor, XSquaredPlusOneOverGF7) {
    Field f(7);
    Poly p = Poly::from_ints(f, {1, 0, 1});
    for (u32 x = 0; x < 7; ++x) EXPECT_NE(p.eval(x), 0u);
    auto fs = factor(p);
    ASSERT_EQ(fs.size(), 1u);
    EXPECT_EQ(fs[0].mult, 1u);
    EXPECT_TRUE(is_irreducible(p));
}

namespace {

// Irreducibility without the library: no roots for degree <= 3, otherwise no monic divisor
// of degree <= deg/2 over a small field.
bool irreducible_oracle(const Poly& q) {
    const Field& f = q.field();
    int d = q.degree();
    if (d <= 0) return false;
    if (d == 1) return true;
    for (u32 x = 0; x < f.p(); ++x)
        if (q.eval(x) == 0) return false;
    if (d <= 3) return true;
    for (int k = 2; k <= d / 2; ++k) {
        std::vector<u32> c(k + 1, 0);
        c[k] = 1;
        for (;;) {
            if (divmod(q, Poly(f, c)).second.is_zero()) return false;
            int i = 0;
            while (i < k && ++c[i] == f.p()) c[i++] = 0;
            if (i == k) break;
        }
    }
    return true;
}

}  // namespace

TEST(Factor, RandomDegreeSixReproducesInput) {
    Rng rng(10);
    for (u32 p : {3u, 5u, 7u}) {
        Field f(p);
        for (int t = 0; t < 25; ++t) {
            std::vector<u32> c(7);
            for (auto& x : c) x = rng.elem(f);
            c[6] = 1;
            Poly q(f, c);
            Poly prod = Poly::constant(f, 1);
            for (const auto& fac : factor(q, rng)) {
                EXPECT_TRUE(irreducible_oracle(fac.poly)) << fac.poly.str();
                EXPECT_EQ(fac.poly.lead(), 1u);
                for (unsigned i = 0; i < fac.mult; ++i) prod = prod * fac.poly;
            }
            EXPECT_EQ(prod, q);
        }
    }
}

TEST(Factor, LargePrimeRoots) {
    Field f(32003);
    Poly q = Poly::from_ints(f, {-2, 1}) * Poly::from_ints(f, {-2, 1}) * Poly::from_ints(f, {5, 0, 1});
    auto fs = factor(q);
    Poly prod = Poly::constant(f, 1);
    for (const auto& fac : fs)
        for (unsigned i = 0; i < fac.mult; ++i) prod = prod * fac.poly;
    EXPECT_EQ(prod, q);
}

TEST(Charpoly, CayleyHamilton) {
    Field f(32003);
    Rng rng(11);
    for (int n = 1; n <= 6; ++n) {
        Matrix a = Matrix::random(f, n, n, rng);
        Poly c = charpoly(a);
        EXPECT_EQ(c.degree(), n);
        EXPECT_TRUE(eval_matrix(c, a).is_zero());
    }
}

TEST(Rational, RankMatchesModP) {
    Rng rng(12);
    for (int t = 0; t < 20; ++t) {
        std::vector<i64> e(12);
        for (auto& x : e) x = static_cast<i64>(rng.below(7)) - 3;
        QMatrix q = QMatrix::from_ints(3, 4, e);
        Matrix m = Matrix::from_ints(Field(32003), 3, 4, e);
        EXPECT_EQ(q.rank(), m.rank());
    }
}
