#include "cohgate/synth.hpp"

#include <algorithm>
#include <array>
#include <tuple>

#include <json.hpp>

#include "cohgate/errors.hpp"

namespace cohgate {

DiagonalCircuit synthesize_diagonal(const GateExpression& g, const CssCode& code,
                                    const std::map<std::string, Cochain>& consts) {
    ExpressionPhase ph(g, code, consts);
    DiagonalCircuit out;
    out.N = code.N;
    out.num_qudits = code.num_qudits;
    for (std::size_t u = 0; u < ph.num_units(); ++u)
        for (auto& gate : ph.unit_gates(u)) {
            out.gates.push_back(std::move(gate));
            out.gate_unit.push_back(u);
        }
    return out;
}

std::vector<int64_t> CliffordMap::apply(std::vector<int64_t> z) const {
    for (auto [c, t] : cx) z[t] = mod(z[t] + z[c], N);
    return z;
}

std::pair<std::vector<int64_t>, std::vector<int64_t>> CliffordMap::conjugate(std::vector<int64_t> x,
                                                                             std::vector<int64_t> z) const {
    for (auto [c, t] : cx) {
        x[t] = mod(x[t] + x[c], N);
        z[c] = mod(z[c] - z[t], N);
    }
    return {x, z};
}

CliffordMap CliffordMap::then(const CliffordMap& o) const {
    if (o.N != N || o.num_qudits != num_qudits) throw InputError("cannot compose maps on different registers");
    CliffordMap r = *this;
    r.cx.insert(r.cx.end(), o.cx.begin(), o.cx.end());
    return r;
}

CliffordMap synthesize_cnot_layer(const CssCode& code, int control, int target) {
    int n = (int)code.copies.size();
    if (control < 0 || target < 0 || control >= n || target >= n || control == target)
        throw InputError("CNOT layer needs two distinct copies of the code");
    const auto& a = code.copies[control];
    const auto& b = code.copies[target];
    if (!a.complex || a.complex->kind == ComplexKind::Simplicial)
        throw InputError("CNOT layer needs a cubical torus; the dual pairing on simplicial complexes is out of scope");
    if (a.complex != b.complex || a.q != b.q) throw InputError("CNOT layer needs copies on the same cells");
    CliffordMap m;
    m.N = code.N;
    m.num_qudits = code.num_qudits;
    for (std::size_t e = 0; e < a.size; ++e) m.cx.emplace_back(a.offset + e, b.offset + e);
    return m;
}

DiagonalCircuit cube_gate_circuit(const BoundaryCode& bc) {
    if (bc.kind != BoundaryKind::Cube) throw InputError("cube_gate_circuit needs a cube code");
    int L = bc.L;
    DiagonalCircuit out;
    out.N = 2;
    out.num_qudits = bc.code.num_qudits;
    std::size_t family = 0;
    auto edge = [&](std::vector<int> b, int axis) {
        int64_t e = bc.cube_edge(b, axis);
        if (e < 0) throw std::logic_error("cube edge outside the box");
        return (std::size_t)e;
    };
    auto shift = [](std::vector<int> b, int axis) {
        ++b[axis];
        return b;
    };
    // a1 u a3 u a2 on every cube: path along sigma(0), sigma(1), sigma(2).
    for (int z = 0; z < L; ++z)
        for (int y = 0; y < L; ++y)
            for (int x = 0; x < L; ++x, ++family) {
                std::vector<int> b = {x, y, z};
                std::array<int, 3> s = {0, 1, 2};
                do {
                    auto b1 = shift(b, s[0]);
                    auto b2 = shift(b1, s[1]);
                    PhaseGate g;
                    g.qudits = {bc.qubit(0, edge(b, s[0])), bc.qubit(2, edge(b1, s[1])), bc.qubit(1, edge(b2, s[2]))};
                    g.num = 1;
                    g.den = 2;
                    out.gates.push_back(g);
                    out.gate_unit.push_back(family);
                } while (std::next_permutation(s.begin(), s.end()));
            }
    // (-i)^([a1] u [a2]) on plaquettes of F4 (x2 = L), F5 (x1 = L), F6 (x0 = L), with the
    // oriented cup and o the sign of (u, v) in the inward orientation of the face.
    for (auto [fixed, o] : {std::pair{2, -1}, std::pair{1, 1}, std::pair{0, -1}}) {
        int u = fixed == 0 ? 1 : 0, v = fixed == 2 ? 1 : 2;
        for (int i = 0; i < L; ++i)
            for (int j = 0; j < L; ++j, ++family) {
                std::vector<int> b(3);
                b[fixed] = L;
                b[u] = i;
                b[v] = j;
                for (auto [p, r, sgn] : {std::tuple{u, v, -o}, std::tuple{v, u, o}}) {
                    PhaseGate g;
                    g.qudits = {bc.qubit(0, edge(b, p)), bc.qubit(1, edge(shift(b, p), r))};
                    g.num = sgn;
                    g.den = 4;
                    out.gates.push_back(g);
                    out.gate_unit.push_back(family);
                }
            }
    }
    // [a1] on E35 = {x2 = 0, x1 = L} and E36 = {x2 = 0, x0 = L}.
    for (int i = 0; i < L; ++i, ++family) {
        PhaseGate g;
        g.qudits = {bc.qubit(0, edge({i, L, 0}, 0))};
        g.num = 1;
        g.den = 8;
        out.gates.push_back(g);
        out.gate_unit.push_back(family);
    }
    for (int i = 0; i < L; ++i, ++family) {
        PhaseGate g;
        g.qudits = {bc.qubit(0, edge({L, i, 0}, 1))};
        g.num = -1;
        g.den = 8;
        out.gates.push_back(g);
        out.gate_unit.push_back(family);
    }
    return out;
}

std::string gate_name(const PhaseGate& g, int64_t N) {
    if (N != 2) return "";
    Rational r = Rational(g.num, g.den).frac();
    if (r.is_zero()) return "I";
    if ((r.den & (r.den - 1)) != 0) return "";
    int m = std::countr_zero((uint64_t)r.den);
    auto q = g.qudits;
    std::sort(q.begin(), q.end());
    q.erase(std::unique(q.begin(), q.end()), q.end());
    if (q.empty()) return "phase";
    std::string base = m == 1 ? "Z" : m == 2 ? "S" : m == 3 ? "T" : "R" + std::to_string(m);
    std::size_t k = q.size() - 1;
    std::string ctl = k == 0 ? "" : k == 1 ? "C" : k == 2 ? "CC" : "C" + std::to_string(k);
    std::string pw;
    if (r.num == r.den - 1 && m > 1) pw = "^-1";
    else if (r.num != 1) pw = "^" + std::to_string(r.num);
    return ctl + base + pw;
}

std::string circuit_to_json(const DiagonalCircuit& c, bool named) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& g : c.gates) {
        nlohmann::ordered_json o;
        o["qudits"] = g.qudits;
        o["num"] = g.num;
        o["den"] = g.den;
        if (named) o["name"] = gate_name(g, c.N);
        arr.push_back(o);
    }
    return arr.dump();
}

std::string clifford_to_json(const CliffordMap& m) {
    auto arr = nlohmann::ordered_json::array();
    for (auto [c, t] : m.cx) {
        nlohmann::ordered_json o;
        o["cx"] = {c, t};
        arr.push_back(o);
    }
    return arr.dump();
}

}  // namespace cohgate
