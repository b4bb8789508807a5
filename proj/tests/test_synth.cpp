#include <gtest/gtest.h>

#include <map>
#include <random>

#include <json.hpp>

#include "cohgate/errors.hpp"
#include "cohgate/synth.hpp"

using namespace cohgate;

namespace {

std::vector<int64_t> random_state(std::size_t n, int64_t N, std::mt19937_64& rng) {
    std::vector<int64_t> z(n);
    for (auto& x : z) x = (int64_t)(rng() % (uint64_t)N);
    return z;
}

Rational expression_phase(ExpressionPhase& F, const std::vector<int64_t>& z) {
    return Rational(F.total(z), F.modulus()).frac();
}

}  // namespace

TEST(Synth, ToricCzCircuit) {
    auto code = from_chain_complex(torus_lattice(2, 2), 1, 2, 2);
    auto c = synthesize_diagonal(parse_expression("1/2*CUP(a1,a2)"), code);
    EXPECT_EQ(c.gates.size(), 8u);
    for (const auto& g : c.gates) {
        EXPECT_EQ(g.qudits.size(), 2u);
        EXPECT_EQ(gate_name(g, 2), "CZ");
    }
}

TEST(Synth, ThreeTorusCczCircuit) {
    auto T = shipped_complex("t3");
    auto code = from_chain_complex(T, 1, 2, 3);
    auto c = synthesize_diagonal(parse_expression("1/2*CUP(a1,a2,a3)"), code);
    EXPECT_EQ(c.gates.size(), T->num_cells(3));
    EXPECT_EQ(c.gates.size(), 162u);
    for (const auto& g : c.gates) EXPECT_EQ(gate_name(g, 2), "CCZ");
}

TEST(Synth, ZeroCoefficientGivesEmptyCircuit) {
    auto code = from_chain_complex(torus_lattice(2, 2), 1, 2, 2);
    auto c = synthesize_diagonal(parse_expression("0*CUP(a1,a2)"), code);
    EXPECT_TRUE(c.gates.empty());
    auto d = synthesize_diagonal(parse_expression("1*CUP(a1,a2)"), code);
    EXPECT_TRUE(d.gates.empty());
}

TEST(Synth, CircuitPhaseMatchesExpression) {
    std::mt19937_64 rng(11);
    struct Case {
        ComplexPtr C;
        int q;
        int64_t N;
        int copies;
        std::string expr;
    };
    std::vector<Case> cases = {
        {torus_lattice(2, 3), 1, 2, 2, "1/2*CUP(a1,a2)"},
        {shipped_complex("t3"), 1, 2, 3, "1/2*CUP(a1,a2,a3)"},
        {shipped_complex("t2"), 1, 4, 2, "1/4*CUP(a1,a2) + 1/4*CUP(a2,a1)"},
        {shipped_complex("t2"), 1, 3, 2, "1/3*CUP(a1,a2)"},
        {torus_lattice(3, 2), 1, 2, 3, "1/2*CUP(a1,a2,a3)"},
    };
    for (const auto& k : cases) {
        auto code = from_chain_complex(k.C, k.q, k.N, k.copies);
        auto g = parse_expression(k.expr);
        auto c = synthesize_diagonal(g, code);
        ExpressionPhase F(g, code);
        for (int t = 0; t < 200; ++t) {
            auto z = random_state(code.num_qudits, k.N, rng);
            ASSERT_EQ(c.phase(z), expression_phase(F, z)) << k.expr;
        }
    }
}

TEST(Synth, GatesPerQuditBoundedByLocalCells) {
    auto T = shipped_complex("t3");
    auto code = from_chain_complex(T, 1, 2, 3);
    auto c = synthesize_diagonal(parse_expression("1/2*CUP(a1,a2,a3)"), code);
    ExpressionPhase F(parse_expression("1/2*CUP(a1,a2,a3)"), code);
    const auto& byq = F.units_by_qudit();
    auto per = c.gates_per_qudit();
    for (std::size_t q = 0; q < per.size(); ++q) EXPECT_LE(per[q], byq[q].size());
    std::size_t mx = *std::max_element(per.begin(), per.end());
    EXPECT_GT(mx, 0u);
}

TEST(Synth, SumConcatenates) {
    auto code = from_chain_complex(torus_lattice(2, 2), 1, 2, 3);
    auto a = synthesize_diagonal(parse_expression("1/2*CUP(a1,a2)"), code);
    auto b = synthesize_diagonal(parse_expression("1/2*CUP(a2,a3)"), code);
    auto ab = synthesize_diagonal(parse_expression("1/2*CUP(a1,a2) + 1/2*CUP(a2,a3)"), code);
    EXPECT_EQ(ab.gates.size(), a.gates.size() + b.gates.size());
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        auto z = random_state(code.num_qudits, 2, rng);
        EXPECT_EQ(ab.phase(z), (a.phase(z) + b.phase(z)).frac());
    }
}

TEST(Synth, OrientationRequiredBeyondZ2) {
    auto code = from_chain_complex(shipped_complex("rp2"), 1, 4, 2);
    EXPECT_THROW(synthesize_diagonal(parse_expression("1/4*CUP(a1,a2)"), code), InputError);
}

TEST(Synth, CnotLayer) {
    auto code = from_chain_complex(torus_lattice(2, 2), 1, 2, 2);
    auto m = synthesize_cnot_layer(code, 0, 1);
    EXPECT_EQ(m.cx.size(), 8u);
    std::mt19937_64 rng(5);
    auto twice = m.then(m);
    for (int t = 0; t < 20; ++t) {
        auto z = random_state(code.num_qudits, 2, rng);
        EXPECT_EQ(twice.apply(z), z);
        // Symplectic form x.z' - x'.z is preserved under conjugation.
        auto x1 = random_state(code.num_qudits, 2, rng), z1 = random_state(code.num_qudits, 2, rng);
        auto x2 = random_state(code.num_qudits, 2, rng), z2 = random_state(code.num_qudits, 2, rng);
        auto form = [](const std::vector<int64_t>& a, const std::vector<int64_t>& b, const std::vector<int64_t>& c,
                       const std::vector<int64_t>& d) {
            int64_t s = 0;
            for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * d[i] - c[i] * b[i];
            return mod(s, 2);
        };
        auto [u1, v1] = m.conjugate(x1, z1);
        auto [u2, v2] = m.conjugate(x2, z2);
        EXPECT_EQ(form(x1, z1, x2, z2), form(u1, v1, u2, v2));
    }
    EXPECT_THROW(synthesize_cnot_layer(code, 0, 0), InputError);
    auto simp = from_chain_complex(shipped_complex("t2"), 1, 2, 2);
    EXPECT_THROW(synthesize_cnot_layer(simp, 0, 1), InputError);
}

TEST(Synth, CubeCircuitGateCounts) {
    for (int L : {2, 3}) {
        auto bc = cube_code(L);
        auto c = cube_gate_circuit(bc);
        std::map<std::string, std::size_t> n;
        for (const auto& g : c.gates) ++n[gate_name(g, 2)];
        EXPECT_EQ(n.size(), 5u);
        EXPECT_EQ(n["CCZ"], 6u * L * L * L);
        EXPECT_EQ(n["CS"], 3u * L * L);
        EXPECT_EQ(n["CS^-1"], 3u * L * L);
        EXPECT_EQ(n["T"], (std::size_t)L);
        EXPECT_EQ(n["T^-1"], (std::size_t)L);
    }
}

TEST(Synth, GateNames) {
    EXPECT_EQ(gate_name({{0}, 1, 2}, 2), "Z");
    EXPECT_EQ(gate_name({{0}, 1, 4}, 2), "S");
    EXPECT_EQ(gate_name({{0}, -1, 8}, 2), "T^-1");
    EXPECT_EQ(gate_name({{0, 1}, 1, 2}, 2), "CZ");
    EXPECT_EQ(gate_name({{0, 1, 2, 3}, 1, 4}, 2), "C3S");
    EXPECT_EQ(gate_name({{0}, 1, 32}, 2), "R5");
    EXPECT_EQ(gate_name({{0}, 3, 8}, 2), "T^3");
    EXPECT_EQ(gate_name({{0}, 1, 3}, 3), "");
}

TEST(Synth, JsonExport) {
    auto code = from_chain_complex(torus_lattice(2, 2), 1, 2, 2);
    auto c = synthesize_diagonal(parse_expression("1/2*CUP(a1,a2)"), code);
    auto j = nlohmann::json::parse(circuit_to_json(c, true));
    ASSERT_EQ(j.size(), 8u);
    EXPECT_EQ(j[0]["name"], "CZ");
    EXPECT_EQ(j[0]["den"], 2);
    auto k = nlohmann::json::parse(clifford_to_json(synthesize_cnot_layer(code, 0, 1)));
    EXPECT_EQ(k.size(), 8u);
}
