#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace cohgate {

// Exact rational with positive denominator, always reduced.
struct Rational {
    int64_t num = 0, den = 1;

    Rational() = default;
    Rational(int64_t n, int64_t d = 1);

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator-() const { return Rational(-num, den); }
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rational& o) const;
    bool is_zero() const { return num == 0; }
    // Representative in [0, 1).
    Rational frac() const;
    std::string str() const;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Op { Field, Const, Cup, CupI, Sq, Pont, Coboundary, Lin };
    Op op = Op::Field;
    int copy = 0;       // Field: code copy index (0-based)
    std::string name;   // Const: cochain name
    int order = 0;      // CupI: i; Sq: i; Pont: n
    std::vector<ExprPtr> args;
    std::vector<int64_t> coeffs;  // Lin: integer combination of args

    static ExprPtr field(int copy);
    static ExprPtr constant(const std::string& name);
    static ExprPtr cup(std::vector<ExprPtr> args);
    static ExprPtr cup_i(int i, ExprPtr x, ExprPtr y);
    static ExprPtr sq(int i, ExprPtr x);
    static ExprPtr pont(ExprPtr x, int n);
    static ExprPtr coboundary(ExprPtr x);
    static ExprPtr lin(std::vector<int64_t> coeffs, std::vector<ExprPtr> args);

    std::string str() const;
};

struct Term {
    Rational coeff;
    ExprPtr expr;
};

// Phase exp(2 pi i * sum_t coeff_t * integral(expr_t)).
struct GateExpression {
    std::vector<Term> terms;

    GateExpression() = default;
    GateExpression(Rational c, ExprPtr e) { terms.push_back({c, std::move(e)}); }
    GateExpression operator+(const GateExpression& o) const;
    // lcm of the coefficient denominators.
    int64_t denominator() const;
    int max_field_copy() const;
    std::string str() const;
};

// Grammar: sum of [rational '*'] atom, atoms CUP(x,...), CUPI(i,x,y), SQ(i,x),
// PONT(x,n), D(x), aK (copy K, 1-based), CONST(name).
GateExpression parse_expression(const std::string& text);

// Degree of every node, given field and constant degrees.
struct DegreeContext {
    std::function<int(int copy)> field_degree;
    std::function<int(const std::string&)> const_degree;
};
int expr_degree(const Expr& e, const DegreeContext& ctx);

// Left-associated expansion of P(a;n) into cup and cup_1 nodes.
ExprPtr pontryagin_expansion(ExprPtr a, int n);

}  // namespace cohgate
