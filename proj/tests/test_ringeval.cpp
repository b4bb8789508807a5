#include <gtest/gtest.h>

#include "cohgate/errors.hpp"
#include "cohgate/ringeval.hpp"

using namespace cohgate;

TEST(Ring, GradedSigns) {
    auto T = torus_ring(3);
    auto a = T.parse("y2 y1");
    EXPECT_EQ(T.str(a), "-y1 y2");
    EXPECT_TRUE(T.parse("y1 y1").is_zero());
    EXPECT_EQ(T.integrate(T.parse("y3 y2 y1")), -1);
    EXPECT_EQ(T.integrate(T.parse("y1 y2 y3")), 1);
}

TEST(Ring, RelationsTruncate) {
    auto R = cp_ring(2);
    EXPECT_TRUE(R.pow(R.gen(0), 3).is_zero());
    EXPECT_EQ(R.integrate(R.pow(R.parse("3*w"), 2)), 9);
}

TEST(Ring, LiftCoboundary) {
    auto R = rp_ring(8);
    EXPECT_EQ(R.str(R.d(R.parse("x"))), "2*x^2");
    EXPECT_TRUE(R.d(R.parse("x^2")).is_zero());
    EXPECT_EQ(R.str(R.d(R.parse("x^3"))), "2*x^4");
}

TEST(Ring, SteenrodSquares) {
    auto R = rp_ring(8);
    EXPECT_EQ(R.str(ring_sq(2, R.parse("x^3"), R)), "x^5");
    EXPECT_EQ(R.str(ring_sq(1, R.parse("x^3"), R)), "x^4");
    EXPECT_TRUE(ring_sq(4, R.parse("x^3"), R).is_zero());
    EXPECT_EQ(R.str(ring_sq(0, R.parse("x^3"), R)), "x^3");
    auto T = torus_ring(3);
    EXPECT_TRUE(ring_sq(1, T.parse("y1"), T).is_zero());
    auto C = cp_ring(4);
    EXPECT_EQ(C.str(ring_sq(2, C.parse("w"), C)), "w^2");
    EXPECT_TRUE(ring_sq(1, C.parse("w"), C).is_zero());
    CohomologyRing bad = C;
    bad.gens[0].sq1 = "";
    EXPECT_THROW(ring_sq(1, bad.parse("w"), bad), InputError);
}

TEST(Ring, PontRejectsOpenLift) {
    auto R = rp_ring(4);
    FlatConnection c;
    c.set_field(0, {{"n", "x"}}, R, 2);
    // the lift of x is not closed
    EXPECT_THROW(ring_evaluate(parse_expression("1/2*CUP(PONT(a1,2),a1,a1)"), R, c), InputError);
    FlatConnection c2;
    c2.set_field(0, {{"n", "x^2"}}, R, 2);
    EXPECT_NO_THROW(ring_evaluate(parse_expression("1/2*PONT(a1,2)"), R, c2));
    // finer than the torsion allows on a non-orientable top class
    EXPECT_THROW(ring_evaluate(parse_expression("1/4*PONT(a1,2)"), R, c2), InputError);
}

TEST(Ring, DegreeMismatchRejected) {
    auto R = cp_ring(2);
    FlatConnection c;
    c.set_field(0, {{"n", "w"}}, R, 2);
    EXPECT_THROW(ring_evaluate(parse_expression("1/2*a1"), R, c), InputError);
}

TEST(Ring, JsonRoundTrip) {
    auto R = ring_product({rp_ring(5), torus_ring(3)});
    auto S = ring_from_json(ring_to_json(R));
    EXPECT_EQ(S.gens.size(), 4u);
    EXPECT_EQ(S.top, R.top);
    EXPECT_EQ(S.relations, R.relations);
    EXPECT_EQ(S.str(S.d(S.parse("x"))), "2*x^2");
    auto conn = connection_from_json(R"({"fields":[{"copy":1,"order":2,"terms":[{"var":"n","element":"x^3"}]}]})", S);
    EXPECT_EQ(conn.vars.size(), 1u);
    EXPECT_THROW(ring_from_json("{"), InputError);
}

TEST(Ring, PontryaginSqGateOnCp2) {
    auto R = cp_ring(2);
    FlatConnection c;
    c.set_field(0, {{"n", "w"}}, R, 2);
    auto p = ring_evaluate(parse_expression("1/4*PONT(a1,2)"), R, c);
    EXPECT_EQ(p.named_gates(), (std::vector<std::string>{"S(n)"}));
}

TEST(Ring, ShippedScenarios) {
    std::map<std::string, bool> expect_pass = {
        {"cp2xcp2-CS", true},  {"cp2xcp2-N2-l2", false}, {"cp16-CR4", true},     {"cp8-CT", true},
        {"cp4^4-C3R2", true},  {"rp8-Z", true},          {"t3xrp5-CZ", true},    {"t2xcp2-mixed", true},
        {"cp2-P1", true},      {"cp4-P2", true},         {"cp8-P3", true},
    };
    auto sc = shipped_ring_scenarios();
    ASSERT_EQ(sc.size(), expect_pass.size());
    for (const auto& s : sc) {
        auto o = run_ring_scenario(s);
        ASSERT_TRUE(expect_pass.count(s.name)) << s.name;
        EXPECT_EQ(o.pass, expect_pass[s.name]) << s.name << ": " << o.poly.str();
    }
}

TEST(Ring, ComputedGateNames) {
    for (const auto& s : shipped_ring_scenarios()) {
        auto o = run_ring_scenario(s);
        std::vector<std::string> g = o.gates;
        if (s.name == "cp16-CR4") EXPECT_EQ(g, (std::vector<std::string>{"CR4(n,n')"}));
        if (s.name == "cp8-CT") EXPECT_EQ(g, (std::vector<std::string>{"CT(n,n')"}));
        if (s.name == "rp8-Z") EXPECT_EQ(g, (std::vector<std::string>{"Z(n)"}));
        if (s.name == "cp2xcp2-N2-l2") EXPECT_EQ(g.size(), 2u);  // no quartic term survives
        if (s.name == "cp4^4-C3R2") {
            EXPECT_EQ(g.size(), 6u);
            for (const auto& x : g) EXPECT_EQ(x.substr(0, 4), "C3S(");
        }
        if (s.name == "cp8-P3") EXPECT_EQ(g, (std::vector<std::string>{"R4(n)"}));
    }
}
