#include "cohgate/phase.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "cohgate/errors.hpp"

namespace cohgate {

namespace {

int64_t mulmod(int64_t a, int64_t b, int64_t m) { return (int64_t)((__int128)mod(a, m) * mod(b, m) % m); }

}  // namespace

// ---- DiagonalCircuit ----

int64_t DiagonalCircuit::modulus() const {
    int64_t M = 1;
    for (const auto& g : gates) M = lcm64(M, g.den);
    return M;
}

Rational DiagonalCircuit::phase(const std::vector<int64_t>& z) const {
    Rational acc(0);
    for (const auto& g : gates) {
        int64_t v = mod(g.num, g.den);
        for (std::size_t q : g.qudits) v = mulmod(v, z[q], g.den);
        if (v) acc = (acc + Rational(v, g.den)).frac();
    }
    return acc.frac();
}

std::vector<std::size_t> DiagonalCircuit::gates_per_qudit() const {
    std::vector<std::size_t> out(num_qudits, 0);
    for (const auto& g : gates) {
        auto q = g.qudits;
        q.erase(std::unique(q.begin(), q.end()), q.end());
        for (std::size_t x : q) ++out[x];
    }
    return out;
}

// ---- PhasePoly ----

PhasePoly PhasePoly::var(uint32_t q, bool idem) {
    PhasePoly p;
    p.terms[{q}] = 1;
    p.idem = idem;
    return p;
}

PhasePoly PhasePoly::operator+(const PhasePoly& o) const {
    PhasePoly r = *this;
    r.idem = idem || o.idem;
    for (const auto& [k, c] : o.terms) {
        int64_t& x = r.terms[k];
        x += c;
        if (x == 0) r.terms.erase(k);
    }
    return r;
}

PhasePoly PhasePoly::operator-(const PhasePoly& o) const { return *this + o * PhasePoly(-1); }

PhasePoly PhasePoly::operator*(const PhasePoly& o) const {
    PhasePoly r;
    r.idem = idem || o.idem;
    for (const auto& [a, ca] : terms)
        for (const auto& [b, cb] : o.terms) {
            std::vector<uint32_t> k;
            k.reserve(a.size() + b.size());
            std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(k));
            if (r.idem) k.erase(std::unique(k.begin(), k.end()), k.end());
            int64_t& x = r.terms[k];
            x += ca * cb;
            if (x == 0) r.terms.erase(k);
        }
    return r;
}

// ---- PhaseFunction ----

int64_t PhaseFunction::total(const std::vector<int64_t>& z) {
    int64_t M = modulus(), acc = 0;
    for (std::size_t u = 0; u < num_units(); ++u) acc = mod(acc + unit_value(u, z), M);
    return acc;
}

const std::vector<std::vector<std::size_t>>& PhaseFunction::units_by_qudit() {
    if (!indexed_) {
        by_qudit_.assign(num_qudits(), {});
        for (std::size_t u = 0; u < num_units(); ++u)
            for (std::size_t q : unit_qudits(u)) by_qudit_[q].push_back(u);
        indexed_ = true;
    }
    return by_qudit_;
}

// ---- ExpressionPhase ----

ExpressionPhase::ExpressionPhase(const GateExpression& g, const CssCode& code, std::map<std::string, Cochain> consts)
    : consts_(std::move(consts)) {
    if (code.copies.empty()) throw InputError("code has no copies");
    N_ = code.N;
    nq_ = code.num_qudits;
    int maxc = g.max_field_copy();
    if (maxc >= (int)code.copies.size())
        throw InputError("expression uses field a" + std::to_string(maxc + 1) + " but the code has " +
                         std::to_string(code.copies.size()) + " copies");
    for (const auto& cp : code.copies) offsets_.push_back(cp.offset);
    GateExpression used;
    for (const auto& t : g.terms)
        if (!t.coeff.frac().is_zero()) used.terms.push_back(t);
    C_ = code.copies[0].complex;
    for (int c = 0; c <= maxc; ++c)
        if (code.copies[c].complex != C_) throw InputError("expression fields must live on one complex");
    if (!C_) throw InputError("code copies carry no complex");
    for (const auto& [n, c] : consts_)
        if (c.complex != C_) throw InputError("constant " + n + " lives on a different complex");
    DegreeContext ctx;
    ctx.field_degree = [&](int c) { return code.copies.at(c).q; };
    ctx.const_degree = [&](const std::string& n) {
        auto it = consts_.find(n);
        if (it == consts_.end()) throw InputError("unknown constant " + n);
        return it->second.degree;
    };
    prog_ = compile(used, C_->kind, C_->dim, ctx, C_->dim);
    for (const auto& t : used.terms) {
        M_ = lcm64(M_, t.coeff.den);
        coeffs_.push_back(t.coeff);
    }
    for (const auto& t : used.terms) weights_.push_back(mod(t.coeff.num, t.coeff.den) * (M_ / t.coeff.den));
    if (!C_->orientation && M_ > 2) throw InputError("orientation required for phases beyond Z_2");
    leaf_src_.assign(prog_.nodes.size(), nullptr);
    std::vector<bool> used_copy(code.copies.size(), false);
    for (int id : prog_.leaf_nodes) {
        const auto& n = prog_.nodes[id];
        if (n.op == Expr::Op::Const) leaf_src_[id] = &consts_.at(n.name);
        else used_copy[n.copy] = true;
    }
    for (std::size_t c = 0; c < used_copy.size(); ++c)
        if (used_copy[c]) used_copies_.push_back((int)c);
    // Degree in the qudit values.
    std::vector<int> deg(prog_.nodes.size(), 0);
    for (std::size_t i = 0; i < prog_.nodes.size(); ++i) {
        const auto& n = prog_.nodes[i];
        switch (n.op) {
            case Expr::Op::Field: deg[i] = 1; break;
            case Expr::Op::Const: deg[i] = 0; break;
            case Expr::Op::Cup:
            case Expr::Op::CupI:
                for (int a : n.args) deg[i] += deg[a];
                break;
            default:
                for (int a : n.args) deg[i] = std::max(deg[i], deg[a]);
        }
    }
    for (int r : prog_.roots) degree_ = std::max(degree_, deg[r]);
    ev_ = std::make_unique<CellEvaluator<int64_t>>(prog_);
}

std::size_t ExpressionPhase::num_units() const { return C_->num_cells(C_->dim); }

int64_t ExpressionPhase::orientation(std::size_t u) const { return C_->orientation ? (*C_->orientation)[u] : 1; }

std::size_t ExpressionPhase::leaf_cell(uint32_t a, uint32_t b, int degree) const {
    const CellComplex& C = *C_;
    if (C.kind == ComplexKind::Simplicial) {
        const int32_t* v = C.simplices[C.dim][cur_unit_];
        int32_t sub[32];
        int w = 0;
        for (int t = 0; t <= C.dim; ++t)
            if (a >> t & 1) sub[w++] = v[t];
        if (!C.has_cells(w - 1)) throw InputError("leaf degree not stored");
        int64_t id = C.simplices[w - 1].find(sub);
        if (id < 0) throw std::logic_error("face lookup failed");
        return (std::size_t)id;
    }
    auto base = cur_cube_.base;
    for (int ax = 0; ax < C.dim; ++ax)
        if (a >> ax & 1) base[ax] += 1;
    return (std::size_t)C.cube_index(degree, base, b);
}

std::vector<std::size_t> ExpressionPhase::unit_qudits(std::size_t u) const {
    const CellComplex& C = *C_;
    std::vector<std::size_t> out;
    auto& self = const_cast<ExpressionPhase&>(*this);
    self.cur_unit_ = u;
    if (C.kind != ComplexKind::Simplicial) self.cur_cube_ = C.cube_cell(C.dim, u);
    for (int c : used_copies_) {
        int q = -1;
        for (int id : prog_.leaf_nodes)
            if (prog_.nodes[id].op == Expr::Op::Field && prog_.nodes[id].copy == c) q = prog_.nodes[id].degree;
        if (C.kind == ComplexKind::Simplicial) {
            uint32_t full = (1u << (C.dim + 1)) - 1;
            for (uint32_t m = full;; m = (m - 1) & full) {
                if (std::popcount(m) == q + 1) out.push_back(offsets_[c] + leaf_cell(m, 0, q));
                if (m == 0) break;
            }
        } else {
            uint32_t full = (1u << C.dim) - 1;
            for (uint32_t axes = 0; axes <= full; ++axes) {
                if (std::popcount(axes) != q) continue;
                uint32_t rest = full & ~axes;
                for (uint32_t off = rest;; off = (off - 1) & rest) {
                    out.push_back(offsets_[c] + leaf_cell(off, axes, q));
                    if (off == 0) break;
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

int64_t ExpressionPhase::unit_value(std::size_t u, const std::vector<int64_t>& z) {
    cur_unit_ = u;
    if (C_->kind != ComplexKind::Simplicial) cur_cube_ = C_->cube_cell(C_->dim, u);
    ev_->begin_cell();
    auto leaf = [&](const CompiledNode& n, uint32_t a, uint32_t b) -> int64_t {
        std::size_t id = leaf_cell(a, b, n.degree);
        if (n.op == Expr::Op::Field) return mod(z[offsets_[n.copy] + id], N_);
        return leaf_src_[&n - prog_.nodes.data()]->integer_value(id);
    };
    int64_t acc = 0;
    for (std::size_t t = 0; t < prog_.roots.size(); ++t) acc = mod(acc + mulmod(weights_[t], ev_->eval_term(t, leaf), M_), M_);
    return mod(acc * orientation(u), M_);
}

std::vector<PhaseGate> ExpressionPhase::unit_gates(std::size_t u) {
    if (!poly_ev_) poly_ev_ = std::make_unique<CellEvaluator<PhasePoly>>(prog_);
    cur_unit_ = u;
    if (C_->kind != ComplexKind::Simplicial) cur_cube_ = C_->cube_cell(C_->dim, u);
    poly_ev_->begin_cell();
    bool idem = N_ == 2;
    auto leaf = [&](const CompiledNode& n, uint32_t a, uint32_t b) -> PhasePoly {
        std::size_t id = leaf_cell(a, b, n.degree);
        if (n.op == Expr::Op::Field) return PhasePoly::var((uint32_t)(offsets_[n.copy] + id), idem);
        return PhasePoly(leaf_src_[&n - prog_.nodes.data()]->integer_value(id));
    };
    std::vector<PhaseGate> out;
    int64_t o = orientation(u);
    for (std::size_t t = 0; t < prog_.roots.size(); ++t) {
        PhasePoly p = poly_ev_->eval_term(t, leaf);
        for (const auto& [k, c] : p.terms) {
            Rational r = coeffs_[t] * Rational(c * o);
            if (r.den == 1) continue;
            PhaseGate g;
            g.qudits.assign(k.begin(), k.end());
            g.num = r.num;
            g.den = r.den;
            out.push_back(std::move(g));
        }
    }
    return out;
}

// ---- CircuitPhase ----

CircuitPhase::CircuitPhase(DiagonalCircuit c) : c_(std::move(c)) {
    M_ = c_.modulus();
    for (const auto& g : c_.gates) {
        for (std::size_t q : g.qudits)
            if (q >= c_.num_qudits) throw InputError("gate qudit index out of range");
        degree_ = std::max(degree_, (int)g.qudits.size());
    }
}

std::vector<std::size_t> CircuitPhase::unit_qudits(std::size_t u) const {
    auto q = c_.gates[u].qudits;
    std::sort(q.begin(), q.end());
    q.erase(std::unique(q.begin(), q.end()), q.end());
    return q;
}

int64_t CircuitPhase::unit_value(std::size_t u, const std::vector<int64_t>& z) {
    const auto& g = c_.gates[u];
    int64_t v = mod(g.num, g.den);
    for (std::size_t q : g.qudits) {
        if (!v) return 0;
        v = mulmod(v, mod(z[q], c_.N), g.den);
    }
    return mulmod(v, M_ / g.den, M_);
}

}  // namespace cohgate
