#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cohgate/cochain.hpp"
#include "cohgate/code.hpp"
#include "cohgate/engine.hpp"
#include "cohgate/expr.hpp"

namespace cohgate {

// Diagonal gate exp(2 pi i * num * prod_{q in qudits} z_q / den). Repeated qudits
// mean powers; an empty list is a global phase.
struct PhaseGate {
    std::vector<std::size_t> qudits;
    int64_t num = 0, den = 1;
};

struct DiagonalCircuit {
    int64_t N = 2;
    std::size_t num_qudits = 0;
    std::vector<PhaseGate> gates;
    std::vector<std::size_t> gate_unit;  // emitting top cell (or family index) per gate
    std::vector<std::string> notes;

    int64_t modulus() const;  // lcm of the gate denominators
    // Phase of basis state z as a fraction of a full turn, in [0, 1).
    Rational phase(const std::vector<int64_t>& z) const;
    // Gates touching each qudit.
    std::vector<std::size_t> gates_per_qudit() const;
};

// Integer polynomial in qudit values; monomials are sorted qudit multisets.
// With idem set (N = 2) repeated qudits collapse since z^2 = z on {0, 1}.
struct PhasePoly {
    std::map<std::vector<uint32_t>, int64_t> terms;
    bool idem = false;

    PhasePoly() = default;
    PhasePoly(int64_t c) {
        if (c) terms[{}] = c;
    }
    static PhasePoly var(uint32_t q, bool idem);
    PhasePoly operator+(const PhasePoly& o) const;
    PhasePoly operator-(const PhasePoly& o) const;
    PhasePoly operator*(const PhasePoly& o) const;
};

// Phase function F(z) = sum over units of integer contributions mod M, where the
// gate is exp(2 pi i F(z) / M) on basis state z (entries in [0, N)).
class PhaseFunction {
public:
    virtual ~PhaseFunction() = default;
    virtual int64_t N() const = 0;
    virtual int64_t modulus() const = 0;
    virtual std::size_t num_qudits() const = 0;
    virtual std::size_t num_units() const = 0;
    virtual std::vector<std::size_t> unit_qudits(std::size_t u) const = 0;
    virtual int64_t unit_value(std::size_t u, const std::vector<int64_t>& z) = 0;
    // Polynomial degree of F in the qudit values.
    virtual int degree() const = 0;

    int64_t total(const std::vector<int64_t>& z);
    // Units touching each qudit, built on first use.
    const std::vector<std::vector<std::size_t>>& units_by_qudit();

private:
    std::vector<std::vector<std::size_t>> by_qudit_;
    bool indexed_ = false;
};

// Gate expression bound to a code whose copies share one complex. Field aK reads
// copy K-1 as least nonnegative residues; constants enter as integer lifts.
class ExpressionPhase : public PhaseFunction {
public:
    ExpressionPhase(const GateExpression& g, const CssCode& code, std::map<std::string, Cochain> consts = {});
    ExpressionPhase(const ExpressionPhase&) = delete;
    ExpressionPhase& operator=(const ExpressionPhase&) = delete;

    int64_t N() const override { return N_; }
    int64_t modulus() const override { return M_; }
    std::size_t num_qudits() const override { return nq_; }
    std::size_t num_units() const override;
    std::vector<std::size_t> unit_qudits(std::size_t u) const override;
    int64_t unit_value(std::size_t u, const std::vector<int64_t>& z) override;
    int degree() const override { return degree_; }

    // Gates emitted by one top cell, one per monomial of each term's cell value.
    std::vector<PhaseGate> unit_gates(std::size_t u);
    const CellComplex& complex() const { return *C_; }
    int64_t orientation(std::size_t u) const;

private:
    std::size_t leaf_cell(uint32_t a, uint32_t b, int degree) const;

    ComplexPtr C_;
    int64_t N_ = 2, M_ = 1;
    std::size_t nq_ = 0;
    std::vector<std::size_t> offsets_;
    std::vector<int> used_copies_;
    std::map<std::string, Cochain> consts_;
    Program prog_;
    std::vector<int64_t> weights_;  // per term, numerator over M
    std::vector<Rational> coeffs_;
    std::vector<const Cochain*> leaf_src_;
    int degree_ = 0;
    std::unique_ptr<CellEvaluator<int64_t>> ev_;
    std::unique_ptr<CellEvaluator<PhasePoly>> poly_ev_;
    std::size_t cur_unit_ = 0;
    CubeCell cur_cube_;
};

class CircuitPhase : public PhaseFunction {
public:
    explicit CircuitPhase(DiagonalCircuit c);

    int64_t N() const override { return c_.N; }
    int64_t modulus() const override { return M_; }
    std::size_t num_qudits() const override { return c_.num_qudits; }
    std::size_t num_units() const override { return c_.gates.size(); }
    std::vector<std::size_t> unit_qudits(std::size_t u) const override;
    int64_t unit_value(std::size_t u, const std::vector<int64_t>& z) override;
    int degree() const override { return degree_; }
    const DiagonalCircuit& circuit() const { return c_; }

private:
    DiagonalCircuit c_;
    int64_t M_ = 1;
    int degree_ = 0;
};

}  // namespace cohgate
