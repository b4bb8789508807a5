#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "cohgate/complex.hpp"
#include "cohgate/expr.hpp"

namespace cohgate {

// Expression lowered to a DAG with degrees resolved. PONT and SQ are expanded
// into cup, cup_i, coboundary and integer combinations.
struct CompiledNode {
    Expr::Op op = Expr::Op::Field;
    int degree = 0;
    int copy = 0;
    std::string name;
    int order = 0;
    std::vector<int> args;
    std::vector<int64_t> coeffs;
};

struct Program {
    ComplexKind kind = ComplexKind::Simplicial;
    int dim = 0;
    std::vector<CompiledNode> nodes;
    std::vector<int> roots;  // one per term
    std::vector<Rational> coeffs;
    std::vector<int> leaf_nodes;
};

// Every term must have degree `top_degree` unless it is negative.
Program compile(const GateExpression& g, ComplexKind kind, int dim, const DegreeContext& ctx, int top_degree);
Program compile(ExprPtr e, ComplexKind kind, int dim, const DegreeContext& ctx, int top_degree);

// Terms of a cup_i on positions 0..p+q-i: (mask of f's vertices, mask of g's, sign).
struct CupIPattern {
    uint32_t f, g;
    int sign;
};
const std::vector<CupIPattern>& cup_i_patterns(int p, int q, int i);

inline uint32_t deposit_bits(uint32_t rel, const int* pos) {
    uint32_t out = 0;
    for (int t = 0; rel; ++t, rel >>= 1)
        if (rel & 1) out |= 1u << pos[t];
    return out;
}

// Evaluates a program on one top cell at a time. Faces are (a, b): for simplices
// a is a vertex-position mask and b is unused; for cubes a is the offset mask and
// b the axis mask, both relative to the top cell's base vertex.
template <class V>
class CellEvaluator {
public:
    using LeafFn = std::function<V(const CompiledNode&, uint32_t, uint32_t)>;

    explicit CellEvaluator(const Program& p) : prog_(p) {
        int bits = p.kind == ComplexKind::Simplicial ? p.dim + 1 : 2 * p.dim;
        width_ = 1u << bits;
        memo_.assign(p.nodes.size() * width_, V());
        stamp_.assign(p.nodes.size() * width_, 0);
    }

    void begin_cell() { ++epoch_; }

    uint32_t full_face_a() const {
        return prog_.kind == ComplexKind::Simplicial ? (uint32_t)((1u << (prog_.dim + 1)) - 1) : 0u;
    }
    uint32_t full_face_b() const {
        return prog_.kind == ComplexKind::Simplicial ? 0u : (uint32_t)((1u << prog_.dim) - 1);
    }

    V eval_term(std::size_t term, const LeafFn& leaf) { return eval(prog_.roots[term], full_face_a(), full_face_b(), leaf); }

    V eval(int n, uint32_t a, uint32_t b, const LeafFn& leaf) {
        const CompiledNode& node = prog_.nodes[n];
        if (node.op == Expr::Op::Field || node.op == Expr::Op::Const) return leaf(node, a, b);
        std::size_t slot = (std::size_t)n * width_ +
                           (prog_.kind == ComplexKind::Simplicial ? a : ((a << prog_.dim) | b));
        if (stamp_[slot] == epoch_) return memo_[slot];
        V v = prog_.kind == ComplexKind::Simplicial ? eval_simplex(node, a, leaf) : eval_cube(node, a, b, leaf);
        stamp_[slot] = epoch_;
        memo_[slot] = v;
        return v;
    }

private:
    V eval_simplex(const CompiledNode& node, uint32_t mask, const LeafFn& leaf) {
        int pos[32];
        int m = 0;
        for (uint32_t t = mask; t; t &= t - 1) pos[m++] = std::countr_zero(t);
        switch (node.op) {
            case Expr::Op::Cup: {
                V acc(1);
                int start = 0;
                for (int c : node.args) {
                    int d = prog_.nodes[c].degree;
                    uint32_t sub = 0;
                    for (int t = start; t <= start + d; ++t) sub |= 1u << pos[t];
                    acc = acc * eval(c, sub, 0, leaf);
                    start += d;
                }
                return acc;
            }
            case Expr::Op::CupI: {
                int p = prog_.nodes[node.args[0]].degree, q = prog_.nodes[node.args[1]].degree;
                V acc(0);
                for (const auto& pat : cup_i_patterns(p, q, node.order)) {
                    V term = eval(node.args[0], deposit_bits(pat.f, pos), 0, leaf) *
                             eval(node.args[1], deposit_bits(pat.g, pos), 0, leaf);
                    if (pat.sign > 0) acc = acc + term;
                    else acc = acc - term;
                }
                return acc;
            }
            case Expr::Op::Coboundary: {
                V acc(0);
                for (int t = 0; t < m; ++t) {
                    V f = eval(node.args[0], mask & ~(1u << pos[t]), 0, leaf);
                    if (t % 2) acc = acc - f;
                    else acc = acc + f;
                }
                return acc;
            }
            case Expr::Op::Lin: return lin(node, mask, 0, leaf);
            default: break;
        }
        throw std::logic_error("uncompiled node in evaluation");
    }

    V eval_cube(const CompiledNode& node, uint32_t off, uint32_t axes, const LeafFn& leaf) {
        switch (node.op) {
            case Expr::Op::Cup: return cube_cup(node, 0, off, axes, leaf);
            case Expr::Op::Coboundary: {
                V acc(0);
                int j = 0;
                for (uint32_t t = axes; t; t &= t - 1, ++j) {
                    uint32_t ax = t & (~t + 1);
                    V diff = eval(node.args[0], off | ax, axes & ~ax, leaf) - eval(node.args[0], off, axes & ~ax, leaf);
                    if (j % 2) acc = acc - diff;
                    else acc = acc + diff;
                }
                return acc;
            }
            case Expr::Op::Lin: return lin(node, off, axes, leaf);
            default: break;
        }
        throw std::logic_error("operation unavailable on cubical complexes");
    }

    V cube_cup(const CompiledNode& node, std::size_t j, uint32_t off, uint32_t axes, const LeafFn& leaf) {
        int c = node.args[j];
        if (j + 1 == node.args.size()) return eval(c, off, axes, leaf);
        int d = prog_.nodes[c].degree;
        V acc(0);
        // Subsets J of axes with |J| = d; f on (off, J), rest on (off|J, axes\J).
        for (uint32_t J = axes;; J = (J - 1) & axes) {
            if (std::popcount(J) == d)
                acc = acc + eval(c, off, J, leaf) * cube_cup(node, j + 1, off | J, axes & ~J, leaf);
            if (J == 0) break;
        }
        return acc;
    }

    V lin(const CompiledNode& node, uint32_t a, uint32_t b, const LeafFn& leaf) {
        V acc(0);
        for (std::size_t t = 0; t < node.args.size(); ++t) {
            V v = eval(node.args[t], a, b, leaf);
            acc = acc + v * V(node.coeffs[t]);
        }
        return acc;
    }

    const Program& prog_;
    std::size_t width_;
    std::vector<V> memo_;
    std::vector<uint64_t> stamp_;
    uint64_t epoch_ = 0;
};

}  // namespace cohgate
