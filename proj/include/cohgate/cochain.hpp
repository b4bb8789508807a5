#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cohgate/complex.hpp"
#include "cohgate/expr.hpp"

namespace cohgate {

// Degree-k cochain with values mod `modulus` (0 means integer coefficients).
// An optional integer lift reduces to the values mod `base_modulus`.
struct Cochain {
    ComplexPtr complex;
    int degree = 0;
    int64_t modulus = 2;
    std::vector<int64_t> values;
    std::optional<std::vector<int64_t>> lift;
    int64_t base_modulus = 0;

    static Cochain zero(ComplexPtr c, int k, int64_t M);
    static Cochain indicator(ComplexPtr c, int k, std::size_t cell, int64_t M);
    static Cochain random(ComplexPtr c, int k, int64_t M, std::mt19937_64& rng);
    static Cochain from_values(ComplexPtr c, int k, int64_t M, std::vector<int64_t> v);

    std::size_t size() const { return values.size(); }
    // Lift if present, else the least nonnegative residue (or the integer itself).
    int64_t integer_value(std::size_t i) const;
    Cochain integer() const;
    Cochain reduce(int64_t M) const;
    Cochain with_lift(std::vector<int64_t> l, int64_t N) const;
    bool is_zero() const;

    Cochain operator+(const Cochain& o) const;
    Cochain operator-(const Cochain& o) const;
    Cochain operator*(int64_t s) const;
    bool operator==(const Cochain& o) const;
};

Cochain coboundary(const Cochain& f);
Cochain cup(const Cochain& f, const Cochain& g);
Cochain cup_i(int i, const Cochain& f, const Cochain& g);
Cochain steenrod_sq(int i, const Cochain& f);
Cochain pontryagin_power(const Cochain& a, int n);
Cochain cartan_coboundary(const Cochain& a1, const Cochain& a2);
// Sum over top cells of orientation * value, reduced mod the cochain's modulus.
int64_t integrate(const Cochain& f);

// Evaluates an expression whose leaves are CONST(name) on every cell of its degree.
// Leaves enter as integer values (lifts); the result is reduced mod out_modulus.
Cochain apply_expression(const ExprPtr& e, const std::map<std::string, Cochain>& consts, int64_t out_modulus);

// Pullback along the projection of a product complex onto one factor.
Cochain pullback(const Cochain& f, const ComplexPtr& product, int factor);

std::string cochain_to_json(const Cochain& f);
Cochain cochain_from_json(const std::string& text, ComplexPtr c);

}  // namespace cohgate
