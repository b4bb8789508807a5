#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cohgate/code.hpp"
#include "cohgate/phase.hpp"

namespace cohgate {

// One gate per (top cell x monomial of each term), cell-major.
DiagonalCircuit synthesize_diagonal(const GateExpression& g, const CssCode& code,
                                    const std::map<std::string, Cochain>& consts = {});

// Layer of CX gates (control, target). On basis states z_target += z_control.
struct CliffordMap {
    int64_t N = 2;
    std::size_t num_qudits = 0;
    std::vector<std::pair<std::size_t, std::size_t>> cx;

    std::vector<int64_t> apply(std::vector<int64_t> z) const;
    // Conjugation of the Pauli X^x Z^z (exponent vectors).
    std::pair<std::vector<int64_t>, std::vector<int64_t>> conjugate(std::vector<int64_t> x, std::vector<int64_t> z) const;
    CliffordMap then(const CliffordMap& o) const;
};

// CX from every q-cell of copy `control` onto the same cell of copy `target` (0-based copies).
CliffordMap synthesize_cnot_layer(const CssCode& code, int control, int target);

// The cube's T-gate circuit: six CCZ per cube for a1 u a3 u a2, one CS and one CS^dagger
// per plaquette on F4-F6 for [a1] u [a2], T on copy 1 along E35 and T^dagger along E36.
DiagonalCircuit cube_gate_circuit(const BoundaryCode& bc);

// Z, S, T, CZ, CS, CCZ, C^kR_m ... for N = 2 and power-of-two denominators; empty otherwise.
std::string gate_name(const PhaseGate& g, int64_t N);

std::string circuit_to_json(const DiagonalCircuit& c, bool named = false);
std::string clifford_to_json(const CliffordMap& m);

}  // namespace cohgate
