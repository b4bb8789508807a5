#include <gtest/gtest.h>

#include "cohgate/complex.hpp"
#include "cohgate/homology.hpp"

using namespace cohgate;

TEST(Complex, SingleTriangle) {
    auto c = build_from_facets({{0, 1, 2}});
    EXPECT_EQ(c->f_vector(), (std::vector<std::size_t>{3, 3, 1}));
    EXPECT_TRUE(validate(*c).ok);
}

TEST(Complex, RejectsBadFacets) {
    EXPECT_THROW(build_from_facets({{0, 1}, {1, 0}}), InputError);
    EXPECT_THROW(build_from_facets({}), InputError);
    EXPECT_THROW(build_from_facets({{-1, 2}}), InputError);
}

TEST(Complex, NonPureFlagged) {
    auto c = build_from_facets({{0, 1, 2}, {2, 3}});
    EXPECT_FALSE(c->pure);
}

TEST(Complex, ShippedRP2) {
    auto c = shipped_complex("rp2");
    EXPECT_EQ(c->f_vector(), (std::vector<std::size_t>{6, 15, 10}));
    EXPECT_EQ(c->euler_characteristic(), 1);
    auto H = integer_homology(*c);
    EXPECT_EQ(H[1].rank, 0);
    ASSERT_EQ(H[1].torsion.size(), 1u);
    EXPECT_EQ(H[1].torsion[0], 2);
    EXPECT_FALSE(c->orientation.has_value());
    EXPECT_FALSE(compute_orientation(*c).has_value());
}

TEST(Complex, ShippedCP2) {
    auto c = shipped_complex("cp2");
    EXPECT_EQ(c->f_vector(), (std::vector<std::size_t>{9, 36, 84, 90, 36}));
    EXPECT_EQ(betti_mod_p(*c, 2), (std::vector<int64_t>{1, 0, 1, 0, 1}));
    EXPECT_TRUE(c->orientation.has_value());
    EXPECT_TRUE(validate(*c).ok);
}

TEST(Complex, ShippedOthersValidate) {
    for (auto n : {"rp3", "klein", "circle", "t2", "t3"}) EXPECT_TRUE(validate(*shipped_complex(n)).ok) << n;
    EXPECT_EQ(shipped_complex("rp3")->f_vector(), (std::vector<std::size_t>{11, 52, 82, 41}));
}

TEST(Complex, TorusLatticeCounts) {
    auto t = torus_lattice(2, 3);
    EXPECT_EQ(t->f_vector(), (std::vector<std::size_t>{9, 18, 9}));
    auto u = torus_lattice(3, 2);
    EXPECT_EQ(u->f_vector(), (std::vector<std::size_t>{8, 24, 24, 8}));
    EXPECT_EQ(betti_mod_p(*torus_lattice(4, 2), 2)[1], 4);
    EXPECT_THROW(torus_lattice(2, 1), InputError);
    for (int n = 1; n <= 4; ++n) EXPECT_TRUE(validate(*torus_lattice(n, 3)).ok);
}

TEST(Complex, Products) {
    auto s = circle(3);
    auto t2 = product(s, s);
    EXPECT_EQ(t2->euler_characteristic(), 0);
    EXPECT_EQ(betti_mod_p(*t2, 2)[1], 2);
    auto t3 = product(t2, s);
    EXPECT_EQ(t3->num_vertices, 27);
    EXPECT_EQ(t3->num_cells(3), 162u);
    EXPECT_TRUE(validate(*t3).ok);
    EXPECT_TRUE(t3->orientation.has_value());
    auto rp2 = shipped_complex("rp2");
    auto x = product(rp2, point());
    EXPECT_EQ(x->f_vector(), rp2->f_vector());
    auto y = product(rp2, s);
    EXPECT_EQ(y->euler_characteristic(), rp2->euler_characteristic() * s->euler_characteristic());
    EXPECT_THROW(product(torus_lattice(2, 2), s), InputError);
}

TEST(Complex, ProductOrientationIsCycle) {
    auto cp2 = shipped_complex("cp2");
    auto p = product(cp2, circle(3));
    EXPECT_TRUE(p->orientation.has_value());
    EXPECT_TRUE(validate(*p).ok);
}

TEST(Complex, ValidateCatchesFaults) {
    auto c = std::make_shared<CellComplex>(*shipped_complex("rp2"));
    c->boundary[1].col[0][0].second *= -1;
    auto r = validate(*c);
    EXPECT_FALSE(r.ok);
    EXPECT_FALSE(r.boundary_squared_zero);
    auto d = std::make_shared<CellComplex>(*shipped_complex("rp2"));
    d->orientation = std::vector<int64_t>(10, 1);
    EXPECT_FALSE(validate(*d).orientation_cycle);
}

TEST(Complex, JsonRoundTripAndErrors) {
    auto c = shipped_complex("rp3");
    auto d = parse_complex_json(complex_to_json(*c));
    EXPECT_EQ(c->f_vector(), d->f_vector());
    EXPECT_EQ(c->orientation, d->orientation);
    EXPECT_THROW(parse_complex_json("{\"kind\":\"simplicial\"}"), InputError);
    EXPECT_THROW(parse_complex_json("{\"kind\":\"simplicial\",\"facets\":[[0,\"x\"]]}"), InputError);
    EXPECT_THROW(parse_complex_json("{oops"), InputError);
    auto t = parse_complex_json("{\"name\":\"t\",\"kind\":\"torus\",\"dims\":[3,3]}");
    EXPECT_EQ(t->num_cells(1), 18u);
}
