#include "cohgate/homology.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "cohgate/errors.hpp"

namespace cohgate {

namespace {

using SVec = std::vector<std::pair<int32_t, int64_t>>;

// v += c * w over Z_p, both sorted by index.
SVec axpy(const SVec& v, int64_t c, const SVec& w, int64_t p) {
    SVec out;
    out.reserve(v.size() + w.size());
    std::size_t i = 0, j = 0;
    while (i < v.size() || j < w.size()) {
        if (j == w.size() || (i < v.size() && v[i].first < w[j].first)) {
            out.push_back(v[i++]);
        } else if (i == v.size() || w[j].first < v[i].first) {
            int64_t x = mod(c * w[j].second, p);
            if (x) out.emplace_back(w[j].first, x);
            ++j;
        } else {
            int64_t x = mod(v[i].second + c * w[j].second, p);
            if (x) out.emplace_back(v[i].first, x);
            ++i;
            ++j;
        }
    }
    return out;
}

// Column reduction over Z_p keyed by the largest nonzero index.
class SparseReducer {
public:
    SparseReducer(int64_t p, bool track) : p_(p), track_(track) {}

    // Reduces v, accumulating the subtracted combination into combo.
    void reduce(SVec& v, SVec& combo) const {
        while (!v.empty()) {
            auto it = pivot_.find(v.back().first);
            if (it == pivot_.end()) return;
            const auto& [col, cmb] = cols_[it->second];
            int64_t c = mod(-v.back().second * inv_mod(col.back().second, p_), p_);
            v = axpy(v, c, col, p_);
            if (track_) combo = axpy(combo, c, cmb, p_);
        }
    }

    // Returns true and stores the reduced column if it is independent.
    bool add(SVec v, SVec combo) {
        reduce(v, combo);
        if (v.empty()) {
            last_combo_ = std::move(combo);
            return false;
        }
        pivot_[v.back().first] = cols_.size();
        cols_.emplace_back(std::move(v), std::move(combo));
        return true;
    }

    const SVec& last_combo() const { return last_combo_; }
    std::size_t rank() const { return cols_.size(); }

private:
    int64_t p_;
    bool track_;
    std::unordered_map<int32_t, std::size_t> pivot_;
    std::vector<std::pair<SVec, SVec>> cols_;
    SVec last_combo_;
};

SVec reduce_col(const std::vector<std::pair<int32_t, int64_t>>& c, int64_t p) {
    SVec out;
    for (auto [i, v] : c)
        if (int64_t x = mod(v, p)) out.emplace_back(i, x);
    return out;
}

// Coboundary delta_q : C^q -> C^{q+1} as a column-sparse matrix (columns = q-cells).
SparseMatrix coboundary_matrix(const CellComplex& C, int q) {
    if (q + 1 > C.dim || !C.has_cells(q + 1)) return SparseMatrix(0, C.num_cells(q));
    return C.boundary[q + 1].transpose();
}

std::size_t rank_sparse_mod_p(const SparseMatrix& A, int64_t p) {
    SparseReducer r(p, false);
    for (const auto& c : A.col) r.add(reduce_col(c, p), {});
    return r.rank();
}

Cochain from_svec(const ComplexPtr& C, int q, int64_t N, const SVec& v) {
    Cochain f = Cochain::zero(C, q, N);
    for (auto [i, x] : v) f.values[i] = mod(x, N);
    return f;
}

SVec to_svec(const Cochain& f, int64_t p) {
    SVec v;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        if (int64_t x = mod(f.values[i], p)) v.emplace_back((int32_t)i, x);
    return v;
}

constexpr std::size_t kDenseLimit = 4'000'000;

void check_dense(std::size_t r, std::size_t c, const char* what) {
    if (r * c > kDenseLimit) throw InputError(std::string(what) + ": complex too large for dense Smith normal form");
}

}  // namespace

std::string HomologyGroup::str() const {
    std::ostringstream s;
    bool first = true;
    if (rank > 0) {
        s << "Z";
        if (rank > 1) s << "^" << rank;
        first = false;
    }
    for (const auto& t : torsion) {
        s << (first ? "" : " + ") << "Z_" << t;
        first = false;
    }
    if (first) s << "0";
    return s.str();
}

std::vector<HomologyGroup> integer_homology(const CellComplex& C) {
    std::vector<HomologyGroup> out(C.dim + 1);
    std::vector<SmithDecomposition> snf(C.dim + 2);
    for (int k = 1; k <= C.dim; ++k) {
        if (!C.has_cells(k) || !C.has_cells(k - 1)) throw InputError("integer homology needs every degree stored");
        check_dense(C.boundary[k].rows, C.boundary[k].cols, "integer_homology");
        snf[k] = smith_normal_form(C.boundary[k].dense());
    }
    for (int k = 0; k <= C.dim; ++k) {
        int64_t rk = k >= 1 ? (int64_t)snf[k].rank() : 0;
        int64_t rk1 = k + 1 <= C.dim ? (int64_t)snf[k + 1].rank() : 0;
        out[k].rank = (int64_t)C.num_cells(k) - rk - rk1;
        if (k + 1 <= C.dim)
            for (const auto& d : snf[k + 1].factors)
                if (d > 1) out[k].torsion.push_back(d);
    }
    return out;
}

std::vector<int64_t> betti_mod_p(const CellComplex& C, int64_t p) {
    if (!is_prime(p)) throw InputError("betti_mod_p needs a prime");
    std::vector<int64_t> rk(C.dim + 2, 0);
    for (int k = 1; k <= C.dim; ++k) {
        if (!C.has_cells(k) || !C.has_cells(k - 1)) throw InputError("betti numbers need every degree stored");
        rk[k] = (int64_t)rank_sparse_mod_p(C.boundary[k], p);
    }
    std::vector<int64_t> b(C.dim + 1);
    for (int k = 0; k <= C.dim; ++k) b[k] = (int64_t)C.num_cells(k) - rk[k] - rk[k + 1];
    return b;
}

std::size_t rank_mod_p(const SparseMatrix& A, int64_t p) { return rank_sparse_mod_p(A, p); }

ModuleBasis kernel_quotient(const SparseMatrix& A, const SparseMatrix& image, int64_t N) {
    if (N < 2) throw InputError("modulus must be at least 2");
    if (image.rows != A.cols) throw std::invalid_argument("kernel_quotient: shape mismatch");
    ModuleBasis out;
    out.N = N;
    std::size_t n = A.cols;
    if (is_prime(N)) {
        SparseReducer table(N, false);
        for (const auto& c : image.col) table.add(reduce_col(c, N), {});
        SparseReducer ker(N, true);
        for (std::size_t j = 0; j < n; ++j) {
            if (ker.add(reduce_col(A.col[j], N), SVec{{(int32_t)j, 1}})) continue;
            const SVec& z = ker.last_combo();
            if (table.add(z, {})) {
                std::vector<int64_t> v(n, 0);
                for (auto [i, x] : z) v[i] = mod(x, N);
                out.gens.push_back(std::move(v));
                out.orders.push_back(N);
            }
        }
        return out;
    }
    check_dense(A.rows, A.cols, "kernel_quotient");
    check_dense(image.rows, image.cols, "kernel_quotient");
    ModuleBasis K = kernel_mod_n(A.dense(), N);
    std::vector<std::vector<int64_t>> I;
    for (const auto& c : image.col) {
        std::vector<int64_t> v(n, 0);
        for (auto [i, x] : c) v[i] = mod(x, N);
        I.push_back(std::move(v));
    }
    return quotient_mod_n(K.gens, I, n, N);
}

CohomologyBasis cohomology_basis(const ComplexPtr& Cp, int q, int64_t N) {
    const CellComplex& C = *Cp;
    if (N < 2) throw InputError("cohomology modulus must be at least 2");
    if (q < 0 || q > C.dim || !C.has_cells(q)) throw InputError("degree out of range");
    CohomologyBasis out;
    out.degree = q;
    out.N = N;
    SparseMatrix dq = coboundary_matrix(C, q);
    SparseMatrix dq1 = q > 0 ? coboundary_matrix(C, q - 1) : SparseMatrix(C.num_cells(q), 0);
    try {
        ModuleBasis Q = kernel_quotient(dq, dq1, N);
        for (std::size_t t = 0; t < Q.gens.size(); ++t) {
            out.reps.push_back(Cochain::from_values(Cp, q, N, Q.gens[t]));
            out.orders.push_back(Q.orders[t]);
        }
    } catch (const InputError& e) {
        if (std::string(e.what()).find("too large") == std::string::npos) throw;
        throw InputError("cohomology_basis: complex too large for dense Smith normal form");
    }
    return out;
}

CoboundaryCheck is_coboundary(const Cochain& f) {
    const CellComplex& C = *f.complex;
    int64_t N = f.modulus;
    if (N < 2) throw InputError("is_coboundary needs a modulus");
    if (!coboundary(f).is_zero()) throw InputError("is_coboundary needs a cocycle");
    int q = f.degree;
    CoboundaryCheck out;
    if (q == 0) {
        out.is_coboundary = f.is_zero();
        if (out.is_coboundary) out.witness = Cochain();
        return out;
    }
    SparseMatrix dq1 = coboundary_matrix(C, q - 1);
    if (is_prime(N)) {
        SparseReducer table(N, true);
        for (std::size_t j = 0; j < dq1.cols; ++j) table.add(reduce_col(dq1.col[j], N), SVec{{(int32_t)j, 1}});
        SVec v = to_svec(f, N), combo;
        table.reduce(v, combo);
        if (!v.empty()) return out;
        out.is_coboundary = true;
        Cochain g = from_svec(f.complex, q - 1, N, combo) * -1;
        out.witness = g;
        return out;
    }
    std::vector<std::vector<int64_t>> gens;
    for (const auto& c : dq1.col) {
        std::vector<int64_t> v(C.num_cells(q), 0);
        for (auto [i, x] : c) v[i] = mod(x, N);
        gens.push_back(std::move(v));
    }
    auto sol = solve_span_mod_n(gens, f.values, N);
    if (!sol) return out;
    out.is_coboundary = true;
    out.witness = Cochain::from_values(f.complex, q - 1, N, *sol);
    return out;
}

int64_t PairingTensor::at(const std::vector<std::size_t>& idx) const {
    std::size_t off = 0;
    for (std::size_t t = 0; t < shape.size(); ++t) off = off * shape[t] + idx[t];
    return values.at(off);
}

PairingTensor pairing_matrix(const ComplexPtr& C, const std::vector<CohomologyBasis>& bases, const ExprPtr& pattern) {
    if (bases.empty()) throw InputError("pairing needs at least one basis");
    int64_t N = bases[0].N;
    int deg = 0;
    for (const auto& b : bases) {
        if (b.N != N) throw InputError("pairing bases have different moduli");
        deg += b.degree;
    }
    ExprPtr e = pattern;
    if (!e) {
        std::vector<ExprPtr> xs;
        for (std::size_t t = 0; t < bases.size(); ++t) xs.push_back(Expr::constant("x" + std::to_string(t + 1)));
        e = Expr::cup(xs);
        if (deg != C->dim) throw InputError("pairing degrees must sum to the dimension");
    }
    PairingTensor out;
    std::size_t total = 1;
    for (const auto& b : bases) {
        out.shape.push_back(b.rank());
        total *= b.rank();
    }
    out.values.assign(total, 0);
    std::vector<std::size_t> idx(bases.size(), 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t r = flat;
        for (std::size_t t = bases.size(); t-- > 0;) {
            idx[t] = r % out.shape[t];
            r /= out.shape[t];
        }
        std::map<std::string, Cochain> consts;
        for (std::size_t t = 0; t < bases.size(); ++t) consts["x" + std::to_string(t + 1)] = bases[t].reps[idx[t]];
        Cochain v = apply_expression(e, consts, N);
        if (v.degree != C->dim) throw InputError("pairing pattern must have top degree");
        out.values[flat] = integrate(v);
    }
    return out;
}

Cochain circle_generator(const ComplexPtr& circle, int64_t M) {
    if (circle->kind != ComplexKind::Simplicial || circle->dim != 1) throw InputError("not a circle");
    int64_t n = circle->num_vertices;
    int64_t id = circle->simplex_index({0, (int)n - 1});
    if (id < 0) throw InputError("circle has no closing edge");
    return Cochain::indicator(circle, 1, id, M);
}

Cochain torus_generator(const ComplexPtr& torus, int axis, int64_t M) {
    if (torus->factors.empty()) {
        if (axis != 0) throw InputError("axis out of range");
        return circle_generator(torus, M);
    }
    const auto& left = torus->factors[0];
    int left_dim = left->dim;
    if (axis >= left_dim) {
        if (axis != left_dim) throw InputError("axis out of range");
        return pullback(circle_generator(torus->factors[1], M), torus, 1);
    }
    return pullback(torus_generator(left, axis, M), torus, 0);
}

}  // namespace cohgate
