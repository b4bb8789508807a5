#include <gtest/gtest.h>

#include <random>

#include "cohgate/homology.hpp"

using namespace cohgate;

TEST(Homology, SmithBasics) {
    IntMatrix a(1, 1);
    a(0, 0) = 2;
    auto s = smith_normal_form(a);
    ASSERT_EQ(s.factors.size(), 1u);
    EXPECT_EQ(s.factors[0], 2);
    auto c = circle(3);
    auto d = smith_normal_form(c->boundary[1].dense());
    EXPECT_EQ(d.factors, (std::vector<BigInt>{1, 1}));
    auto H = integer_homology(*c);
    EXPECT_EQ(H[0].str(), "Z");
    EXPECT_EQ(H[1].str(), "Z");
}

TEST(Homology, SmithInvariantUnderUnimodularMixing) {
    std::mt19937_64 rng(11);
    auto A = shipped_complex("rp2")->boundary[2].dense();
    auto base = smith_normal_form(A).factors;
    for (int trial = 0; trial < 5; ++trial) {
        IntMatrix U = IntMatrix::identity(A.rows), V = IntMatrix::identity(A.cols);
        for (int k = 0; k < 20; ++k) {
            std::size_t i = rng() % A.rows, j = rng() % A.rows;
            int64_t q = (int64_t)(rng() % 3) - 1;
            if (i != j)
                for (std::size_t c = 0; c < A.rows; ++c) U(i, c) += q * U(j, c);
            std::size_t x = rng() % A.cols, y = rng() % A.cols;
            q = (int64_t)(rng() % 3) - 1;
            if (x != y)
                for (std::size_t r = 0; r < A.cols; ++r) V(r, x) += q * V(r, y);
        }
        EXPECT_EQ(smith_normal_form(U * A * V).factors, base);
    }
}

TEST(Homology, SmithTransformsReconstruct) {
    auto A = shipped_complex("klein")->boundary[2].dense();
    auto s = smith_normal_form(A, true);
    ASSERT_TRUE(s.U && s.V);
    IntMatrix D = *s.U * A * *s.V;
    for (std::size_t i = 0; i < D.rows; ++i)
        for (std::size_t j = 0; j < D.cols; ++j)
            EXPECT_EQ(D(i, j), i == j && i < s.factors.size() ? (int64_t)s.factors[i] : 0);
    EXPECT_TRUE((*s.U * *s.Uinv) == IntMatrix::identity(A.rows));
    auto b = smith_normal_form_bigint(A);
    EXPECT_EQ(b.factors, s.factors);
}

TEST(Homology, CohomologyRanks) {
    EXPECT_EQ(cohomology_basis(shipped_complex("t2"), 1, 2).rank(), 2u);
    EXPECT_EQ(cohomology_basis(torus_lattice(2, 3), 1, 2).rank(), 2u);
    EXPECT_EQ(cohomology_basis(shipped_complex("rp2"), 1, 2).rank(), 1u);
    EXPECT_EQ(cohomology_basis(shipped_complex("rp2"), 1, 3).rank(), 0u);
    auto rp2_4 = cohomology_basis(shipped_complex("rp2"), 1, 4);
    ASSERT_EQ(rp2_4.rank(), 1u);
    EXPECT_EQ(rp2_4.orders[0], 2);
    for (auto name : {"rp2", "rp3", "cp2", "klein", "t3"}) {
        auto C = shipped_complex(name);
        for (int q = 0; q <= C->dim; ++q)
            for (int64_t N : {2, 3, 4, 6}) {
                auto B = cohomology_basis(C, q, N);
                for (const auto& r : B.reps) EXPECT_TRUE(coboundary(r).is_zero()) << name << q << N;
            }
    }
}

TEST(Homology, PrimeRankMatchesIndependentElimination) {
    for (auto name : {"rp2", "rp3", "cp2", "klein"}) {
        auto C = shipped_complex(name);
        for (int q = 0; q <= C->dim; ++q)
            for (int64_t p : {2, 3}) {
                auto dq = q < C->dim ? C->boundary[q + 1].dense().transpose() : IntMatrix(0, C->num_cells(q));
                std::size_t ker = C->num_cells(q) - rank_mod_p(dq, p);
                std::size_t im = q > 0 ? rank_mod_p(C->boundary[q].dense(), p) : 0;
                EXPECT_EQ(cohomology_basis(C, q, p).rank(), ker - im) << name << q << p;
            }
    }
}

TEST(Homology, PoincareDualityModTwo) {
    for (auto name : {"rp2", "rp3", "cp2", "klein", "t3"}) {
        auto b = betti_mod_p(*shipped_complex(name), 2);
        for (std::size_t q = 0; q < b.size(); ++q) EXPECT_EQ(b[q], b[b.size() - 1 - q]) << name;
    }
}

TEST(Homology, IsCoboundary) {
    std::mt19937_64 rng(12);
    auto t2 = shipped_complex("t2");
    for (int64_t N : {2, 4}) {
        auto g = Cochain::random(t2, 0, N, rng);
        auto r = is_coboundary(coboundary(g));
        ASSERT_TRUE(r.is_coboundary);
        EXPECT_EQ(coboundary(*r.witness).values, coboundary(g).values);
        auto gen = torus_generator(t2, 0, N);
        EXPECT_FALSE(is_coboundary(gen).is_coboundary);
        auto mixed = gen + coboundary(Cochain::random(t2, 0, N, rng));
        EXPECT_FALSE(is_coboundary(mixed).is_coboundary);
        EXPECT_TRUE(is_coboundary(mixed - gen).is_coboundary);
    }
    EXPECT_THROW(is_coboundary(Cochain::indicator(t2, 1, 0, 2)), InputError);
}

TEST(Homology, PairingT2) {
    auto t2 = shipped_complex("t2");
    CohomologyBasis B;
    B.degree = 1;
    B.N = 2;
    B.reps = {torus_generator(t2, 0, 2), torus_generator(t2, 1, 2)};
    B.orders = {2, 2};
    auto P = pairing_matrix(t2, {B, B});
    EXPECT_EQ(P.values, (std::vector<int64_t>{0, 1, 1, 0}));
    // invariance under adding coboundaries
    std::mt19937_64 rng(13);
    CohomologyBasis B2 = B;
    for (auto& r : B2.reps) r = r + coboundary(Cochain::random(t2, 0, 2, rng));
    EXPECT_EQ(pairing_matrix(t2, {B2, B2}).values, P.values);
    auto H = cohomology_basis(t2, 1, 2);
    auto Q = pairing_matrix(t2, {H, H});
    EXPECT_EQ(Q.values[0] + Q.values[3], 0);
    EXPECT_EQ(Q.values[1], 1);
    CohomologyBasis Z = B;
    for (auto& r : Z.reps) r = Cochain::zero(t2, 1, 2);
    for (auto v : pairing_matrix(t2, {B, Z}).values) EXPECT_EQ(v, 0);
    EXPECT_THROW(pairing_matrix(t2, {B}), InputError);
}

TEST(Homology, TripleProductT3) {
    auto t3 = shipped_complex("t3");
    CohomologyBasis B;
    B.degree = 1;
    B.N = 2;
    for (int a = 0; a < 3; ++a) {
        B.reps.push_back(torus_generator(t3, a, 2));
        B.orders.push_back(2);
    }
    auto P = pairing_matrix(t3, {B, B, B});
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k) {
                bool distinct = i != j && j != k && i != k;
                EXPECT_EQ(P.at({i, j, k}), distinct ? 1 : 0);
            }
}
