#include "cohgate/cochain.hpp"

#include <algorithm>

#include <json.hpp>

#include "cohgate/engine.hpp"
#include "cohgate/errors.hpp"

namespace cohgate {

namespace {

int64_t reduce_value(int64_t v, int64_t M) { return M == 0 ? v : mod(v, M); }

void require_same(const Cochain& f, const Cochain& g, const char* op) {
    if (f.complex != g.complex) throw InputError(std::string(op) + ": cochains live on different complexes");
    if (f.modulus != g.modulus) throw InputError(std::string(op) + ": mismatched moduli");
}

}  // namespace

Cochain Cochain::zero(ComplexPtr c, int k, int64_t M) {
    Cochain f;
    f.degree = k;
    f.modulus = M;
    f.values.assign(c->num_cells(k), 0);
    f.complex = std::move(c);
    return f;
}

Cochain Cochain::indicator(ComplexPtr c, int k, std::size_t cell, int64_t M) {
    Cochain f = zero(std::move(c), k, M);
    if (cell >= f.values.size()) throw InputError("indicator cell out of range");
    f.values[cell] = 1;
    return f;
}

Cochain Cochain::random(ComplexPtr c, int k, int64_t M, std::mt19937_64& rng) {
    Cochain f = zero(std::move(c), k, M);
    std::uniform_int_distribution<int64_t> dist(M == 0 ? -3 : 0, M == 0 ? 3 : M - 1);
    for (auto& v : f.values) v = dist(rng);
    return f;
}

Cochain Cochain::from_values(ComplexPtr c, int k, int64_t M, std::vector<int64_t> v) {
    Cochain f = zero(std::move(c), k, M);
    if (v.size() != f.values.size()) throw InputError("cochain length mismatch");
    for (std::size_t i = 0; i < v.size(); ++i) f.values[i] = reduce_value(v[i], M);
    return f;
}

int64_t Cochain::integer_value(std::size_t i) const {
    if (lift) return (*lift)[i];
    return values[i];
}

Cochain Cochain::integer() const {
    Cochain r = *this;
    r.modulus = 0;
    for (std::size_t i = 0; i < values.size(); ++i) r.values[i] = integer_value(i);
    r.lift.reset();
    r.base_modulus = 0;
    return r;
}

Cochain Cochain::reduce(int64_t M) const {
    Cochain r = *this;
    r.modulus = M;
    for (std::size_t i = 0; i < values.size(); ++i) r.values[i] = reduce_value(integer_value(i), M);
    r.lift.reset();
    r.base_modulus = 0;
    return r;
}

Cochain Cochain::with_lift(std::vector<int64_t> l, int64_t N) const {
    if (l.size() != values.size()) throw InputError("lift length mismatch");
    for (std::size_t i = 0; i < l.size(); ++i)
        if (mod(l[i] - values[i], N) != 0) throw InputError("lift does not reduce to the values");
    Cochain r = *this;
    r.lift = std::move(l);
    r.base_modulus = N;
    return r;
}

bool Cochain::is_zero() const {
    return std::all_of(values.begin(), values.end(), [](int64_t v) { return v == 0; });
}

Cochain Cochain::operator+(const Cochain& o) const {
    require_same(*this, o, "+");
    if (degree != o.degree) throw InputError("+: mismatched degrees");
    Cochain r = zero(complex, degree, modulus);
    for (std::size_t i = 0; i < values.size(); ++i) r.values[i] = reduce_value(values[i] + o.values[i], modulus);
    return r;
}

Cochain Cochain::operator-(const Cochain& o) const { return *this + o * -1; }

Cochain Cochain::operator*(int64_t s) const {
    Cochain r = zero(complex, degree, modulus);
    for (std::size_t i = 0; i < values.size(); ++i) r.values[i] = reduce_value(values[i] * s, modulus);
    return r;
}

bool Cochain::operator==(const Cochain& o) const {
    return complex == o.complex && degree == o.degree && modulus == o.modulus && values == o.values;
}

Cochain coboundary(const Cochain& f) {
    const CellComplex& C = *f.complex;
    int k = f.degree;
    if (k >= C.dim) {
        Cochain r;
        r.complex = f.complex;
        r.degree = k + 1;
        r.modulus = f.modulus;
        return r;
    }
    if (!C.has_cells(k) || !C.has_cells(k + 1)) throw InputError("coboundary needs both degrees stored");
    Cochain r = Cochain::zero(f.complex, k + 1, f.modulus);
    const auto& B = C.boundary[k + 1];
    for (std::size_t j = 0; j < B.cols; ++j) {
        int64_t s = 0;
        for (auto [i, v] : B.col[j]) s += v * f.values[i];
        r.values[j] = reduce_value(s, f.modulus);
    }
    return r;
}

Cochain apply_expression(const ExprPtr& e, const std::map<std::string, Cochain>& consts, int64_t out_modulus) {
    if (consts.empty()) throw InputError("expression has no cochain inputs");
    ComplexPtr cx = consts.begin()->second.complex;
    for (const auto& [n, c] : consts)
        if (c.complex != cx) throw InputError("inputs live on different complexes");
    const CellComplex& C = *cx;
    DegreeContext ctx;
    ctx.field_degree = [](int) -> int { throw InputError("fields are not allowed here"); };
    ctx.const_degree = [&](const std::string& n) {
        auto it = consts.find(n);
        if (it == consts.end()) throw InputError("unknown constant " + n);
        return it->second.degree;
    };
    int k = expr_degree(*e, ctx);
    if (k > C.dim) {
        Cochain r;
        r.complex = cx;
        r.degree = k;
        r.modulus = out_modulus;
        return r;
    }
    if (!C.has_cells(k)) throw InputError("output degree not stored");
    int pdim = C.kind == ComplexKind::Simplicial ? k : C.dim;
    Program prog = compile(e, C.kind, pdim, ctx, k);
    std::vector<const Cochain*> leaf_src(prog.nodes.size(), nullptr);
    for (int id : prog.leaf_nodes) leaf_src[id] = &consts.at(prog.nodes[id].name);
    CellEvaluator<int64_t> ev(prog);
    Cochain out = Cochain::zero(cx, k, out_modulus);
    if (C.kind == ComplexKind::Simplicial) {
        const auto& T = C.simplices[k];
        int32_t sub[32];
        for (std::size_t cell = 0; cell < T.size(); ++cell) {
            const int32_t* v = T[cell];
            ev.begin_cell();
            auto leaf = [&](const CompiledNode& n, uint32_t mask, uint32_t) -> int64_t {
                int w = 0;
                for (int t = 0; t <= k; ++t)
                    if (mask >> t & 1) sub[w++] = v[t];
                int d = w - 1;
                if (!C.has_cells(d)) throw InputError("leaf degree not stored");
                int64_t id = C.simplices[d].find(sub);
                return leaf_src[&n - prog.nodes.data()]->integer_value(id);
            };
            out.values[cell] = reduce_value(ev.eval(prog.roots[0], (1u << (k + 1)) - 1, 0, leaf), out_modulus);
        }
    } else {
        for (std::size_t cell = 0; cell < C.num_cells(k); ++cell) {
            CubeCell cc = C.cube_cell(k, cell);
            ev.begin_cell();
            auto leaf = [&](const CompiledNode& n, uint32_t off, uint32_t axes) -> int64_t {
                auto b = cc.base;
                for (int ax = 0; ax < C.dim; ++ax)
                    if (off >> ax & 1) b[ax] += 1;
                int64_t id = C.cube_index(std::popcount(axes), b, axes);
                return leaf_src[&n - prog.nodes.data()]->integer_value(id);
            };
            out.values[cell] = reduce_value(ev.eval(prog.roots[0], 0, cc.axes, leaf), out_modulus);
        }
    }
    return out;
}

Cochain cup(const Cochain& f, const Cochain& g) {
    require_same(f, g, "cup");
    return apply_expression(Expr::cup({Expr::constant("f"), Expr::constant("g")}),
                            {{"f", f.reduce(f.modulus)}, {"g", g.reduce(g.modulus)}}, f.modulus);
}

Cochain cup_i(int i, const Cochain& f, const Cochain& g) {
    require_same(f, g, "cup_i");
    if (i < 0) throw InputError("cup_i order must be nonnegative");
    if (i > 0 && f.complex->kind != ComplexKind::Simplicial)
        throw InputError("higher cup on cubical lattice out of scope");
    return apply_expression(Expr::cup_i(i, Expr::constant("f"), Expr::constant("g")),
                            {{"f", f.reduce(f.modulus)}, {"g", g.reduce(g.modulus)}}, f.modulus);
}

Cochain steenrod_sq(int i, const Cochain& f) {
    if (i < 0) throw InputError("Steenrod square order must be nonnegative");
    if (f.modulus != 2) throw InputError("Steenrod squares act on mod 2 cochains");
    return apply_expression(Expr::sq(i, Expr::constant("f")), {{"f", f.reduce(2)}}, 2);
}

Cochain pontryagin_power(const Cochain& a, int n) {
    int64_t N = a.modulus;
    if (n < 1 || N == 0 || N % n != 0) throw InputError("Pontryagin power needs n dividing the modulus");
    if (a.degree % 2 != 0) throw InputError("Pontryagin power needs an even-degree cochain");
    if (a.complex->kind != ComplexKind::Simplicial) throw InputError("Pontryagin power needs a simplicial complex");
    if (!coboundary(a.reduce(N)).is_zero()) throw InputError("Pontryagin power needs a cocycle mod N");
    Cochain lifted = a.integer();
    return apply_expression(Expr::pont(Expr::constant("a"), n), {{"a", lifted}}, n * N);
}

Cochain cartan_coboundary(const Cochain& a1, const Cochain& a2) {
    if (a1.degree != 2 || a2.degree != 2) throw InputError("Cartan coboundary takes two 2-cochains");
    require_same(a1, a2, "cartan_coboundary");
    const CellComplex& C = *a1.complex;
    if (C.kind != ComplexKind::Simplicial) throw InputError("Cartan coboundary needs a simplicial complex");
    if (C.dim < 5) {
        Cochain r;
        r.complex = a1.complex;
        r.degree = 5;
        r.modulus = 2;
        return r;
    }
    Cochain r = Cochain::zero(a1.complex, 5, 2);
    const auto& T = C.simplices[5];
    auto val = [&](const Cochain& a, const int32_t* v, int x, int y, int z) {
        int32_t s[3] = {v[x], v[y], v[z]};
        return mod(a.integer_value(C.simplices[2].find(s)), 2);
    };
    for (std::size_t c = 0; c < T.size(); ++c) {
        const int32_t* v = T[c];
        r.values[c] = val(a1, v, 0, 2, 3) * val(a1, v, 0, 1, 2) * val(a2, v, 3, 4, 5) * val(a2, v, 2, 3, 5) % 2;
    }
    return r;
}

int64_t integrate(const Cochain& f) {
    const CellComplex& C = *f.complex;
    if (f.degree != C.dim) throw InputError("integration needs a top-degree cochain");
    if (f.modulus == 2) {
        int64_t s = 0;
        for (auto v : f.values) s += v;
        return mod(s, 2);
    }
    if (!C.orientation) throw InputError("orientation required for Z_M integration");
    int64_t s = 0;
    for (std::size_t i = 0; i < f.values.size(); ++i) s += (*C.orientation)[i] * f.values[i];
    return f.modulus == 0 ? s : mod(s, f.modulus);
}

Cochain pullback(const Cochain& f, const ComplexPtr& product, int factor) {
    const CellComplex& P = *product;
    if (factor < 0 || factor >= (int)P.factors.size()) throw InputError("not a factor of this product");
    if (P.factors[factor] != f.complex) throw InputError("cochain does not live on that factor");
    const CellComplex& A = *f.complex;
    int k = f.degree;
    Cochain r = Cochain::zero(product, k, f.modulus);
    std::vector<int64_t> lift;
    if (f.lift) lift.assign(r.values.size(), 0);
    const auto& proj = P.vertex_projection[factor];
    std::vector<int32_t> img(k + 1);
    const auto& T = P.simplices[k];
    for (std::size_t c = 0; c < T.size(); ++c) {
        const int32_t* v = T[c];
        bool ok = true;
        for (int t = 0; t <= k; ++t) {
            img[t] = proj[v[t]];
            if (t && img[t] <= img[t - 1]) ok = false;
        }
        if (!ok) continue;
        int64_t id = A.simplices[k].find(img.data());
        if (id < 0) continue;
        r.values[c] = f.values[id];
        if (f.lift) lift[c] = (*f.lift)[id];
    }
    if (f.lift) {
        r.lift = std::move(lift);
        r.base_modulus = f.base_modulus;
    }
    return r;
}

std::string cochain_to_json(const Cochain& f) {
    nlohmann::json j;
    j["degree"] = f.degree;
    j["modulus"] = f.modulus;
    j["values"] = f.values;
    if (f.lift) {
        j["lift"] = *f.lift;
        j["base_modulus"] = f.base_modulus;
    }
    return j.dump();
}

Cochain cochain_from_json(const std::string& text, ComplexPtr c) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError("cochain JSON parse error at byte " + std::to_string(e.byte));
    }
    if (!j.is_object() || !j.contains("degree") || !j.contains("modulus") || !j.contains("values"))
        throw InputError("cochain JSON needs degree, modulus and values");
    Cochain f;
    f.complex = std::move(c);
    f.degree = j["degree"].get<int>();
    f.modulus = j["modulus"].get<int64_t>();
    f.values = j["values"].get<std::vector<int64_t>>();
    if (f.values.size() != f.complex->num_cells(f.degree)) throw InputError("/values: wrong length for this complex");
    if (j.contains("lift")) {
        f.lift = j["lift"].get<std::vector<int64_t>>();
        f.base_modulus = j.value("base_modulus", f.modulus);
        if (f.lift->size() != f.values.size()) throw InputError("/lift: wrong length");
    }
    return f;
}

}  // namespace cohgate
