#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cohgate/expr.hpp"
#include "cohgate/verify.hpp"

namespace cohgate {

// Monomials are exponent vectors in generator order.
using Monomial = std::vector<int>;

struct RingElement {
    std::map<Monomial, int64_t> terms;  // integer coefficients, zero terms dropped

    bool is_zero() const { return terms.empty(); }
    bool operator==(const RingElement& o) const { return terms == o.terms; }
};

struct RingGenerator {
    std::string name;
    int degree = 2;
    int64_t modulus = 0;         // 0: integral class; t > 0: t-torsion (coefficients meaningful mod t)
    bool closed = true;          // integral lift is a cocycle
    std::string d_lift;          // when not closed: d(lift) as an element string, e.g. "2*x^2"
    std::string sq1 = "";        // Sq^1 of the generator as an element string (degree >= 2)
    bool exterior = false;       // squares to zero
};

class CohomologyRing {
public:
    std::string name;
    std::vector<RingGenerator> gens;
    std::vector<Monomial> relations;  // monomial = 0
    Monomial top;                     // integral over the top monomial is 1

    int index(const std::string& g) const;
    int degree(const Monomial& m) const;
    int top_degree() const { return degree(top); }

    RingElement one() const;
    RingElement gen(int i) const;
    RingElement mul(const RingElement& a, const RingElement& b) const;
    RingElement add(const RingElement& a, const RingElement& b, int64_t scale = 1) const;
    RingElement pow(const RingElement& a, int n) const;
    RingElement reduce(const RingElement& a, int64_t M) const;  // coefficients mod M
    // Coboundary of the integral lift, by the graded Leibniz rule.
    RingElement d(const RingElement& a) const;
    // Mod-2 Steenrod square by Cartan and the generator rules.
    RingElement sq(int i, const RingElement& a) const;
    int64_t integrate(const RingElement& a) const;  // coefficient of the top monomial

    // Element syntax: terms joined by + or -, each [c*]g[^e] g[^e] ... (or 0, 1).
    RingElement parse(const std::string& s) const;
    std::string str(const RingElement& a) const;
    std::string monomial_str(const Monomial& m) const;

    // Normal form of a single monomial times a coefficient.
    RingElement normalize(Monomial m, int64_t c) const;
};

CohomologyRing cp_ring(int n, const std::string& gen = "w");  // Z[w]/(w^{n+1}), deg w = 2
CohomologyRing rp_ring(int n, const std::string& gen = "x");  // Z_2[x]/(x^{n+1}), deg x = 1
CohomologyRing torus_ring(int k, const std::string& prefix = "y");
CohomologyRing ring_product(const std::vector<CohomologyRing>& factors, const std::string& name = "");

CohomologyRing ring_from_json(const std::string& text);
std::string ring_to_json(const CohomologyRing& R);

// Field K (copy K-1) = sum_j [var_j] * element_j, variables over Z_{order}.
struct FlatConnection {
    std::vector<std::string> vars;
    std::vector<int64_t> orders;
    std::vector<std::vector<std::pair<int, RingElement>>> fields;  // per copy: (var index, element)
    std::vector<int> field_degree;

    int var(const std::string& name, int64_t order);
    void set_field(int copy, const std::vector<std::pair<std::string, std::string>>& terms, const CohomologyRing& R,
                   int64_t order);
};

FlatConnection connection_from_json(const std::string& text, const CohomologyRing& R);

// Phase polynomial of the expression over the connection's variable grid.
PhasePolynomial ring_evaluate(const GateExpression& g, const CohomologyRing& R, const FlatConnection& conn,
                              const std::map<std::string, RingElement>& consts = {});
// Sq applied to an expression with no fields (constants only).
RingElement ring_sq(int i, const RingElement& a, const CohomologyRing& R);

struct RingScenario {
    std::string name;
    std::string anchor;  // quoted claim
    CohomologyRing ring;
    FlatConnection conn;
    GateExpression expr;
    std::function<Rational(const std::vector<int64_t>&)> expected;  // phase in turns
    std::string expected_str;
    std::string note;
};

struct ScenarioOutcome {
    std::string name;
    bool pass = false;
    PhasePolynomial poly;
    std::vector<std::string> gates;
    std::size_t mismatches = 0;
    std::vector<int64_t> first_mismatch;
    std::string note;
};

std::vector<RingScenario> shipped_ring_scenarios();
ScenarioOutcome run_ring_scenario(const RingScenario& s);

}  // namespace cohgate
