#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cohgate {

using BigInt = boost::multiprecision::cpp_int;

// Dense row-major integer matrix.
struct IntMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<int64_t> a;

    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    int64_t& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    int64_t operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static IntMatrix identity(std::size_t n);
    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& o) const;
    bool is_zero() const;
    bool operator==(const IntMatrix& o) const = default;
};

// Column-sparse integer matrix; column j lists (row, value) pairs sorted by row.
struct SparseMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<std::vector<std::pair<int32_t, int64_t>>> col;

    SparseMatrix() = default;
    SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), col(c) {}

    IntMatrix dense() const;
    SparseMatrix transpose() const;
    // Product this * other, exact.
    SparseMatrix multiply(const SparseMatrix& other) const;
    bool is_zero() const;
};

struct OverflowError : std::runtime_error {
    OverflowError() : std::runtime_error("int64 overflow") {}
};

struct SmithDecomposition {
    std::size_t rows = 0, cols = 0;
    // Nonzero invariant factors d_1 | d_2 | ..., all positive.
    std::vector<BigInt> factors;
    // U * A * V = diag(factors). Present only when transforms were requested
    // and every entry fits in int64.
    std::optional<IntMatrix> U, V, Uinv, Vinv;
    bool used_bigint = false;

    std::size_t rank() const { return factors.size(); }
};

SmithDecomposition smith_normal_form(const IntMatrix& A, bool transforms = false);
// Forces the arbitrary-precision path; exposed for tests.
SmithDecomposition smith_normal_form_bigint(const IntMatrix& A, bool transforms = false);

int64_t mod(int64_t x, int64_t m);
int64_t inv_mod(int64_t a, int64_t m);  // throws if not invertible
int64_t gcd64(int64_t a, int64_t b);
int64_t lcm64(int64_t a, int64_t b);
bool is_prime(int64_t n);

// Row echelon data over Z_p.
struct ModpEchelon {
    int64_t p = 2;
    std::size_t cols = 0;
    std::vector<std::vector<int64_t>> rows;  // reduced rows, pivot entry 1
    std::vector<std::size_t> pivots;

    explicit ModpEchelon(int64_t p_, std::size_t n) : p(p_), cols(n) {}
    // Adds v; returns true if it was independent of the rows so far.
    bool add(std::vector<int64_t> v);
    // Reduces v against the rows; result is zero iff v is in the span.
    std::vector<int64_t> reduce(std::vector<int64_t> v) const;
    bool contains(const std::vector<int64_t>& v) const;
    // Coefficients c with v = sum c_i rows[i]; nullopt if not in span.
    std::optional<std::vector<int64_t>> coordinates(const std::vector<int64_t>& v) const;
    std::size_t rank() const { return rows.size(); }
};

std::size_t rank_mod_p(const IntMatrix& A, int64_t p);
// Basis of {x : A x = 0 mod p}, fully reduced, deterministic.
std::vector<std::vector<int64_t>> kernel_mod_p(const IntMatrix& A, int64_t p);
std::vector<std::vector<int64_t>> kernel_mod_p(const SparseMatrix& A, int64_t p);

// A finitely generated Z_N-module presented as a subgroup of Z_N^n.
// Generators g_i with orders o_i give an internal direct sum decomposition.
struct ModuleBasis {
    int64_t N = 2;
    std::vector<std::vector<int64_t>> gens;
    std::vector<int64_t> orders;
    BigInt order() const;
};

// Subgroup of Z_N^n generated by the given vectors, as a direct sum of cyclic pieces.
ModuleBasis subgroup_basis(const std::vector<std::vector<int64_t>>& gens, std::size_t n, int64_t N);
// Kernel of A : Z_N^cols -> Z_N^rows.
ModuleBasis kernel_mod_n(const IntMatrix& A, int64_t N);
// Quotient K / I of two subgroups of Z_N^n with I inside K; returned generators
// are representatives in Z_N^n of the cyclic summands (trivial summands dropped).
ModuleBasis quotient_mod_n(const std::vector<std::vector<int64_t>>& K,
                           const std::vector<std::vector<int64_t>>& I, std::size_t n, int64_t N);
// Membership of v in the subgroup generated by gens.
bool in_span_mod_n(const std::vector<std::vector<int64_t>>& gens, const std::vector<int64_t>& v,
                   int64_t N);
// Integer coefficients c with sum c_i gens_i = v mod N, if any.
std::optional<std::vector<int64_t>> solve_span_mod_n(const std::vector<std::vector<int64_t>>& gens,
                                                     const std::vector<int64_t>& v, int64_t N);

}  // namespace cohgate
