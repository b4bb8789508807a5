#include <gtest/gtest.h>

#include <random>

#include "cohgate/cochain.hpp"
#include "cohgate/engine.hpp"

using namespace cohgate;

namespace {

ComplexPtr simplex_closure(int d) {
    std::vector<int> f(d + 1);
    for (int i = 0; i <= d; ++i) f[i] = i;
    return build_from_facets({f}, "simplex");
}

Cochain rand_int(ComplexPtr c, int k, std::mt19937_64& rng) { return Cochain::random(c, k, 0, rng); }

int sgn(int e) { return e % 2 ? -1 : 1; }

}  // namespace

TEST(Cochain, CoboundarySquaresToZero) {
    std::mt19937_64 rng(1);
    auto c = simplex_closure(5);
    for (int k = 0; k < 4; ++k) {
        auto f = rand_int(c, k, rng);
        EXPECT_TRUE(coboundary(coboundary(f)).is_zero());
    }
    auto t = torus_lattice(3, 3);
    for (int k = 0; k < 2; ++k) {
        auto f = rand_int(t, k, rng);
        EXPECT_TRUE(coboundary(coboundary(f)).is_zero());
    }
}

TEST(Cochain, CupLeibnizSimplicial) {
    std::mt19937_64 rng(2);
    auto c = simplex_closure(6);
    for (int p = 0; p <= 3; ++p)
        for (int q = 0; q + p <= 5; ++q) {
            auto f = rand_int(c, p, rng), g = rand_int(c, q, rng);
            auto lhs = coboundary(cup(f, g));
            auto rhs = cup(coboundary(f), g) + cup(f, coboundary(g)) * sgn(p);
            EXPECT_EQ(lhs.values, rhs.values) << p << "," << q;
        }
}

TEST(Cochain, CupLeibnizCubicalModTwo) {
    std::mt19937_64 rng(3);
    auto t = torus_lattice(3, 3);
    for (int p = 0; p <= 1; ++p)
        for (int q = 0; q + p <= 2; ++q) {
            auto f = Cochain::random(t, p, 2, rng), g = Cochain::random(t, q, 2, rng);
            EXPECT_EQ(coboundary(cup(f, g)).values, (cup(coboundary(f), g) + cup(f, coboundary(g))).values);
        }
}

TEST(Cochain, CupISteenrodCoboundaryFormula) {
    std::mt19937_64 rng(4);
    auto c = simplex_closure(7);
    for (int i = 1; i <= 3; ++i)
        for (int p = 0; p <= 3; ++p)
            for (int q = 0; q <= 3; ++q) {
                if (p + q - i < 0 || p + q - i + 1 > 7) continue;
                auto f = rand_int(c, p, rng), g = rand_int(c, q, rng);
                auto lhs = coboundary(cup_i(i, f, g));
                auto rhs = cup_i(i, coboundary(f), g) + cup_i(i, f, coboundary(g)) * sgn(p) +
                           cup_i(i - 1, f, g) * sgn(p + q - i) + cup_i(i - 1, g, f) * sgn(p * q + p + q);
                EXPECT_EQ(lhs.values, rhs.values) << "i=" << i << " p=" << p << " q=" << q;
            }
}

TEST(Cochain, CupOneMatchesExplicitFormula) {
    // f cup_1 g on [0..p+q-1] = sum_j (-1)^{(p-j)(q+1)} f(0..j, j+q..p+q-1) g(j..j+q)
    std::mt19937_64 rng(5);
    auto c = simplex_closure(5);
    for (int p = 1; p <= 3; ++p)
        for (int q = 1; q <= 3; ++q) {
            int m = p + q - 1;
            if (m > 5) continue;
            auto f = rand_int(c, p, rng), g = rand_int(c, q, rng);
            auto h = cup_i(1, f, g);
            for (std::size_t cell = 0; cell < c->num_cells(m); ++cell) {
                auto v = c->simplex(m, cell);
                int64_t s = 0;
                for (int j = 0; j <= p - 1; ++j) {
                    std::vector<int> fv, gv;
                    for (int t = 0; t <= j; ++t) fv.push_back(v[t]);
                    for (int t = j + q; t <= m; ++t) fv.push_back(v[t]);
                    for (int t = j; t <= j + q; ++t) gv.push_back(v[t]);
                    s += sgn((p - j) * (q + 1)) * f.values[c->simplex_index(fv)] * g.values[c->simplex_index(gv)];
                }
                ASSERT_EQ(h.values[cell], s);
            }
        }
}

namespace {

bool hirsch_holds(ComplexPtr c, int p, int q, int r, bool printed, int64_t M, std::mt19937_64& rng) {
    auto f = Cochain::random(c, p, M, rng), g = Cochain::random(c, q, M, rng), h = Cochain::random(c, r, M, rng);
    auto lhs = cup_i(1, cup(f, g), h);
    Cochain rhs = printed ? cup(f, cup_i(1, h, g)) * sgn(p) + cup(cup_i(1, f, h), g) * sgn(q * r)
                          : cup(f, cup_i(1, g, h)) + cup(cup_i(1, f, h), g) * sgn(q * (r + 1));
    return lhs.values == rhs.values;
}

}  // namespace

TEST(Cochain, HirschCorrectedFormHolds) {
    std::mt19937_64 rng(6);
    auto c = simplex_closure(7);
    for (int p = 0; p <= 2; ++p)
        for (int q = 0; q <= 2; ++q)
            for (int r = 1; r <= 2; ++r) {
                EXPECT_TRUE(hirsch_holds(c, p, q, r, false, 0, rng)) << p << q << r;
                EXPECT_TRUE(hirsch_holds(c, p, q, r, false, 2, rng)) << p << q << r;
            }
}

TEST(Cochain, HirschPrintedFormFailsForSomeDegrees) {
    std::mt19937_64 rng(7);
    auto c = simplex_closure(7);
    int failures = 0;
    for (int p = 0; p <= 2; ++p)
        for (int q = 0; q <= 2; ++q)
            for (int r = 1; r <= 2; ++r)
                if (!hirsch_holds(c, p, q, r, true, 2, rng)) ++failures;
    EXPECT_GT(failures, 0);
}

TEST(Cochain, SquaresOnRP2) {
    auto rp2 = shipped_complex("rp2");
    // generator of H^1(RP2; Z2): any cocycle not a coboundary; Sq^1 x = x cup x integrates to 1.
    std::mt19937_64 rng(8);
    bool found = false;
    for (int trial = 0; trial < 200 && !found; ++trial) {
        auto x = Cochain::random(rp2, 1, 2, rng);
        if (!coboundary(x).is_zero()) continue;
        auto sq = steenrod_sq(1, x);
        EXPECT_EQ(sq.values, cup(x, x).values);
        if (integrate(sq) == 1) found = true;
    }
    EXPECT_TRUE(found);
    auto x = Cochain::random(rp2, 1, 2, rng);
    EXPECT_EQ(steenrod_sq(0, x).values, x.values);
    EXPECT_TRUE(steenrod_sq(2, x).is_zero());
}

TEST(Cochain, IntegrationNeedsOrientation) {
    auto rp2 = shipped_complex("rp2");
    auto f = Cochain::zero(rp2, 2, 3);
    EXPECT_THROW(integrate(f), InputError);
    EXPECT_NO_THROW(integrate(Cochain::zero(rp2, 2, 2)));
}

TEST(Cochain, PontryaginPowerRejections) {
    auto cp2 = shipped_complex("cp2");
    std::mt19937_64 rng(9);
    EXPECT_THROW(pontryagin_power(Cochain::random(cp2, 1, 2, rng), 2), InputError);
    EXPECT_THROW(pontryagin_power(Cochain::zero(cp2, 2, 3), 2), InputError);
    auto z = Cochain::zero(cp2, 2, 2);
    EXPECT_EQ(pontryagin_power(z, 1).values, z.values);
}

TEST(Cochain, JsonRoundTrip) {
    std::mt19937_64 rng(10);
    auto c = simplex_closure(3);
    auto f = Cochain::random(c, 2, 4, rng);
    auto g = cochain_from_json(cochain_to_json(f), c);
    EXPECT_EQ(f.values, g.values);
    EXPECT_EQ(f.modulus, g.modulus);
}
