#include "cohgate/code.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

#include <json.hpp>

#include "cohgate/errors.hpp"

namespace cohgate {

namespace {

// Checks as columns of a (num_qudits x checks) matrix.
SparseMatrix checks_as_columns(const std::vector<Check>& checks, std::size_t n, int64_t N) {
    SparseMatrix M(n, checks.size());
    for (std::size_t j = 0; j < checks.size(); ++j)
        for (auto [q, e] : checks[j].terms)
            if (int64_t x = mod(e, N)) M.col[j].emplace_back((int32_t)q, x);
    return M;
}

std::vector<std::vector<int64_t>> dense_checks(const std::vector<Check>& checks, std::size_t n, int64_t N) {
    std::vector<std::vector<int64_t>> out;
    for (const auto& c : checks) {
        std::vector<int64_t> v(n, 0);
        for (auto [q, e] : c.terms) v[q] = mod(v[q] + e, N);
        out.push_back(std::move(v));
    }
    return out;
}

BigInt group_order(const std::vector<Check>& checks, std::size_t n, int64_t N) {
    if (is_prime(N)) {
        std::size_t r = rank_mod_p(checks_as_columns(checks, n, N), N);
        BigInt out = 1;
        for (std::size_t i = 0; i < r; ++i) out *= N;
        return out;
    }
    return subgroup_basis(dense_checks(checks, n, N), n, N).order();
}

Check make_check(std::map<std::size_t, int64_t> terms, int64_t N, std::string label) {
    Check c;
    c.label = std::move(label);
    for (auto [q, e] : terms)
        if (int64_t x = mod(e, N)) c.terms.emplace_back(q, x);
    return c;
}

std::string mask_str(uint32_t m) {
    std::string s;
    for (int i = 0; i < 32; ++i)
        if (m >> i & 1) s += std::to_string(i + 1);
    return s;
}

// Stabilizers of Nc copies of the Z_2 code on a labeled geometry; qubit (copy, edge).
CssCode boundary_css(const BoundaryGeometry& g, int Nc, const std::string& name) {
    CssCode code;
    code.name = name;
    code.N = 2;
    std::size_t E = g.edges.size();
    for (int i = 0; i < Nc; ++i) {
        CodeCopy cp;
        cp.q = 1;
        cp.offset = (std::size_t)i * E;
        cp.size = E;
        code.copies.push_back(cp);
    }
    code.num_qudits = (std::size_t)Nc * E;
    std::vector<std::vector<std::size_t>> star(g.num_vertices);
    for (std::size_t e = 0; e < E; ++e) {
        star[g.edges[e].first].push_back(e);
        star[g.edges[e].second].push_back(e);
    }
    for (std::size_t v = 0; v < g.num_vertices; ++v) {
        for (uint32_t m : g.vertex_label[v].basis) {
            std::map<std::size_t, int64_t> t;
            for (int i = 0; i < Nc; ++i)
                if (m >> i & 1)
                    for (std::size_t e : star[v]) t[(std::size_t)i * E + e] += 1;
            code.x_checks.push_back(make_check(std::move(t), 2, "A" + mask_str(m) + "@" + g.vertex_name[v]));
        }
    }
    for (std::size_t e = 0; e < E; ++e) {
        for (uint32_t m : g.edge_label[e].annihilator().basis) {
            std::map<std::size_t, int64_t> t;
            for (int i = 0; i < Nc; ++i)
                if (m >> i & 1) t[(std::size_t)i * E + e] = 1;
            code.z_checks.push_back(make_check(std::move(t), 2, "Z" + mask_str(m) + "@" + g.edge_name[e]));
        }
    }
    for (std::size_t p = 0; p < g.plaquettes.size(); ++p) {
        for (int i = 0; i < Nc; ++i) {
            std::map<std::size_t, int64_t> t;
            for (std::size_t e : g.plaquettes[p]) t[(std::size_t)i * E + e] += 1;
            code.z_checks.push_back(make_check(std::move(t), 2, "B" + std::to_string(i + 1) + "@p" + std::to_string(p)));
        }
    }
    return code;
}

}  // namespace

CssCode from_copies(const std::vector<std::pair<ComplexPtr, int>>& copies, int64_t N) {
    if (N < 2) throw InputError("qudit dimension must be at least 2");
    if (copies.empty()) throw InputError("code needs at least one copy");
    CssCode code;
    code.N = N;
    for (const auto& [C, q] : copies) {
        if (!C) throw InputError("null complex");
        if (q < 1 || q > C->dim - 1) throw InputError("code degree q must satisfy 1 <= q <= dim - 1");
        if (!C->has_cells(q - 1) || !C->has_cells(q) || !C->has_cells(q + 1))
            throw InputError("complex lacks the cells needed for a degree-" + std::to_string(q) + " code");
        CodeCopy cp;
        cp.complex = C;
        cp.q = q;
        cp.offset = code.num_qudits;
        cp.size = C->num_cells(q);
        code.num_qudits += cp.size;
        int copy = (int)code.copies.size();
        code.copies.push_back(cp);
        // X check per (q-1)-cell: row of boundary_q.
        SparseMatrix rows = C->boundary[q].transpose();
        for (std::size_t v = 0; v < rows.cols; ++v) {
            std::map<std::size_t, int64_t> t;
            for (auto [s, o] : rows.col[v]) t[cp.offset + s] += o;
            code.x_checks.push_back(make_check(std::move(t), N, "X" + std::to_string(copy) + ":" + std::to_string(v)));
        }
        // Z check per (q+1)-cell: column of boundary_{q+1}.
        const SparseMatrix& up = C->boundary[q + 1];
        for (std::size_t p = 0; p < up.cols; ++p) {
            std::map<std::size_t, int64_t> t;
            for (auto [s, o] : up.col[p]) t[cp.offset + s] += o;
            code.z_checks.push_back(make_check(std::move(t), N, "Z" + std::to_string(copy) + ":" + std::to_string(p)));
        }
    }
    std::ostringstream nm;
    nm << copies[0].first->name << ":q" << copies[0].second << ":N" << N;
    if (copies.size() > 1) nm << ":x" << copies.size();
    code.name = nm.str();
    return code;
}

CssCode from_chain_complex(const ComplexPtr& C, int q, int64_t N, int copies) {
    if (copies < 1) throw InputError("copies must be positive");
    return from_copies(std::vector<std::pair<ComplexPtr, int>>(copies, {C, q}), N);
}

CommutationReport check_css_commutation(const CssCode& code) {
    CommutationReport r;
    // Index Z checks by qudit.
    std::vector<std::vector<std::pair<std::size_t, int64_t>>> byq(code.num_qudits);
    for (std::size_t j = 0; j < code.z_checks.size(); ++j)
        for (auto [q, e] : code.z_checks[j].terms) byq[q].emplace_back(j, e);
    for (std::size_t i = 0; i < code.x_checks.size(); ++i) {
        std::map<std::size_t, int64_t> acc;
        for (auto [q, e] : code.x_checks[i].terms)
            for (auto [j, f] : byq[q]) acc[j] = mod(acc[j] + (int64_t)((__int128)e * f % code.N), code.N);
        for (auto [j, v] : acc)
            if (v != 0) {
                r.ok = false;
                r.x_index = i;
                r.z_index = j;
                r.overlap = v;
                return r;
            }
    }
    return r;
}

LogicalBasis logical_basis(const CssCode& code) {
    SparseMatrix HZ = checks_as_columns(code.z_checks, code.num_qudits, code.N).transpose();
    SparseMatrix X = checks_as_columns(code.x_checks, code.num_qudits, code.N);
    ModuleBasis Q = kernel_quotient(HZ, X, code.N);
    LogicalBasis out;
    out.N = code.N;
    out.reps = std::move(Q.gens);
    out.orders = std::move(Q.orders);
    return out;
}

LogicalBasis cohomology_logical_basis(const CssCode& code) {
    LogicalBasis out;
    out.N = code.N;
    for (const auto& cp : code.copies) {
        if (!cp.complex) throw InputError("code copy has no complex");
        CohomologyBasis b = cohomology_basis(cp.complex, cp.q, code.N);
        for (std::size_t t = 0; t < b.rank(); ++t) {
            std::vector<int64_t> v(code.num_qudits, 0);
            for (std::size_t i = 0; i < cp.size; ++i) v[cp.offset + i] = b.reps[t].values[i];
            out.reps.push_back(std::move(v));
            out.orders.push_back(b.orders[t]);
        }
    }
    return out;
}

BigInt logical_dimension(const CssCode& code) {
    BigInt total = 1;
    for (std::size_t i = 0; i < code.num_qudits; ++i) total *= code.N;
    BigInt sx = group_order(code.x_checks, code.num_qudits, code.N);
    BigInt sz = group_order(code.z_checks, code.num_qudits, code.N);
    return total / (sx * sz);
}

CssCode condense(const CssCode& code, int64_t ell) {
    int64_t cur = code.condensed ? code.condensed : code.N;
    if (ell < 1 || cur % ell != 0)
        throw InputError("condensation order " + std::to_string(ell) + " must divide " + std::to_string(cur));
    CssCode out = code;
    int64_t s = cur / ell;
    for (auto& c : out.x_checks) {
        std::vector<std::pair<std::size_t, int64_t>> t;
        for (auto [q, e] : c.terms)
            if (int64_t x = mod(e * s, code.N)) t.emplace_back(q, x);
        c.terms = std::move(t);
    }
    out.x_checks.erase(std::remove_if(out.x_checks.begin(), out.x_checks.end(),
                                      [](const Check& c) { return c.terms.empty(); }),
                       out.x_checks.end());
    if (ell % code.N != 0)
        for (std::size_t q = 0; q < code.num_qudits; ++q)
            out.z_checks.push_back({{{q, ell}}, "Zpow" + std::to_string(ell) + ":" + std::to_string(q)});
    out.condensed = ell;
    out.name = code.name + ":ell" + std::to_string(ell);
    return out;
}

bool same_stabilizer_group(const CssCode& a, const CssCode& b) {
    if (a.N != b.N || a.num_qudits != b.num_qudits) return false;
    auto contained = [&](const std::vector<Check>& x, const std::vector<Check>& y) {
        auto gy = dense_checks(y, a.num_qudits, a.N);
        for (const auto& v : dense_checks(x, a.num_qudits, a.N))
            if (!in_span_mod_n(gy, v, a.N)) return false;
        return true;
    };
    return contained(a.x_checks, b.x_checks) && contained(b.x_checks, a.x_checks) &&
           contained(a.z_checks, b.z_checks) && contained(b.z_checks, a.z_checks);
}

CssCode effective_code(const CssCode& code) {
    if (!code.condensed) return code;
    int64_t ell = code.condensed, s = code.N / ell;
    CssCode out = code;
    out.N = ell;
    out.condensed = 0;
    out.x_checks.clear();
    out.z_checks.clear();
    for (const auto& c : code.x_checks) {
        Check e{{}, c.label};
        for (auto [q, x] : c.terms) {
            if (x % s != 0) throw CheckFailure("X check " + c.label + " leaves the condensed subspace");
            if (int64_t y = mod(x / s, ell)) e.terms.emplace_back(q, y);
        }
        if (!e.terms.empty()) out.x_checks.push_back(std::move(e));
    }
    for (const auto& c : code.z_checks) {
        Check e{{}, c.label};
        for (auto [q, z] : c.terms)
            if (int64_t y = mod(z, ell)) e.terms.emplace_back(q, y);
        if (!e.terms.empty()) out.z_checks.push_back(std::move(e));
    }
    out.name = code.name + ":eff";
    return out;
}

// ---- Subgroups of Z_2^n ----

Subgroup Subgroup::span(int n, const std::vector<uint32_t>& gens) {
    if (n < 0 || n > 20) throw InputError("subgroup rank out of range");
    Subgroup s;
    s.n = n;
    std::vector<uint32_t> rows;
    for (uint32_t g : gens) {
        for (uint32_t r : rows)
            if (g & std::bit_floor(r)) g ^= r;
        if (!g) continue;
        uint32_t top = std::bit_floor(g);
        for (auto& r : rows)
            if (r & top) r ^= g;
        rows.push_back(g);
    }
    std::sort(rows.begin(), rows.end());
    s.basis = std::move(rows);
    return s;
}

Subgroup Subgroup::full(int n) {
    std::vector<uint32_t> g;
    for (int i = 0; i < n; ++i) g.push_back(1u << i);
    return span(n, g);
}

bool Subgroup::contains(uint32_t v) const {
    for (auto it = basis.rbegin(); it != basis.rend(); ++it)
        if (v & std::bit_floor(*it)) v ^= *it;
    return v == 0;
}

Subgroup Subgroup::annihilator() const {
    std::vector<uint32_t> g;
    for (uint32_t c = 1; c < (1u << n); ++c) {
        bool ok = true;
        for (uint32_t b : basis)
            if (std::popcount(b & c) % 2) {
                ok = false;
                break;
            }
        if (ok) g.push_back(c);
    }
    return span(n, g);
}

Subgroup Subgroup::intersect(const Subgroup& o) const {
    if (n != o.n) throw std::invalid_argument("subgroup rank mismatch");
    std::vector<uint32_t> g;
    for (uint32_t c = 1; c < (1u << n); ++c)
        if (contains(c) && o.contains(c)) g.push_back(c);
    return span(n, g);
}

std::string Subgroup::str() const {
    if (basis.empty()) return "<>";
    std::string s = "<";
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (i) s += ",";
        std::string t;
        for (int k = 0; k < n; ++k)
            if (basis[i] >> k & 1) t += (t.empty() ? "e" : "+e") + std::to_string(k + 1);
        s += t;
    }
    return s + ">";
}

// ---- Simplex code ----

Subgroup simplex_label(const std::vector<int>& simplex, int Nc) {
    if (simplex.empty()) return Subgroup::span(Nc, {});
    std::vector<uint32_t> g;
    if (simplex[0] == 0) {
        for (std::size_t t = 1; t < simplex.size(); ++t) g.push_back(1u << (simplex[t] - 1));
    } else {
        for (std::size_t t = 0; t + 1 < simplex.size(); ++t)
            g.push_back((1u << (simplex[t] - 1)) | (1u << (simplex[t + 1] - 1)));
    }
    return Subgroup::span(Nc, g);
}

BoundaryCode simplex_code(int Nc) {
    if (Nc < 2 || Nc > 5) throw InputError("simplex code needs 2 <= N <= 5");
    std::vector<int> top(Nc + 1);
    for (int i = 0; i <= Nc; ++i) top[i] = i;
    BoundaryCode bc;
    bc.kind = BoundaryKind::Simplex;
    bc.Nc = Nc;
    bc.simplex = build_from_facets({top}, "simplex" + std::to_string(Nc));
    const CellComplex& C = *bc.simplex;
    BoundaryGeometry& g = bc.geometry;
    g.num_vertices = C.num_cells(0);
    auto name = [](const std::vector<int>& s) {
        std::string out = "(";
        for (int v : s) out += std::to_string(v);
        return out + ")";
    };
    for (std::size_t v = 0; v < g.num_vertices; ++v) {
        auto s = C.simplex(0, v);
        g.vertex_label.push_back(simplex_label(s, Nc));
        g.vertex_name.push_back(name(s));
    }
    for (std::size_t e = 0; e < C.num_cells(1); ++e) {
        auto s = C.simplex(1, e);
        g.edges.emplace_back((std::size_t)C.simplex_index({s[0]}), (std::size_t)C.simplex_index({s[1]}));
        g.edge_label.push_back(simplex_label(s, Nc));
        g.edge_name.push_back(name(s));
    }
    for (std::size_t p = 0; p < C.num_cells(2); ++p) {
        auto s = C.simplex(2, p);
        g.plaquettes.push_back({(std::size_t)C.simplex_index({s[1], s[2]}), (std::size_t)C.simplex_index({s[0], s[2]}),
                                (std::size_t)C.simplex_index({s[0], s[1]})});
        g.plaquette_label.push_back(simplex_label(s, Nc));
    }
    bc.code = boundary_css(g, Nc, "simplex-code:N" + std::to_string(Nc));
    bc.code.copies.clear();
    for (int i = 0; i < Nc; ++i) bc.code.copies.push_back({bc.simplex, 1, (std::size_t)i * g.edges.size(), g.edges.size()});
    // |1>: copy i carries 1 on every edge with endpoint i.
    bc.one_state.assign(bc.code.num_qudits, 0);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        auto s = C.simplex(1, e);
        for (int i = 1; i <= Nc; ++i)
            if (s[0] == i || s[1] == i) bc.one_state[bc.qubit(i - 1, e)] = 1;
    }
    return bc;
}

// ---- Cube code ----

std::size_t CubeBox::vertex(int x, int y, int z) const {
    return (std::size_t)x + (std::size_t)(L + 1) * ((std::size_t)y + (std::size_t)(L + 1) * (std::size_t)z);
}

std::vector<int> CubeBox::coords(std::size_t v) const {
    int s = L + 1;
    return {(int)(v % s), (int)(v / s % s), (int)(v / s / s)};
}

std::vector<int> CubeBox::faces_of(const std::vector<int>& base, uint32_t axes) const {
    std::vector<int> out;
    for (int a = 0; a < 3; ++a) {
        if (axes >> a & 1) continue;
        if (base[a] == 0) out.push_back(a + 1);
        if (base[a] == L) out.push_back(6 - a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Subgroup cube_face_label(int face) {
    if (face < 1 || face > 6) throw InputError("cube face index out of range");
    if (face <= 3) {
        std::vector<uint32_t> g;
        for (int j = 1; j <= 3; ++j)
            if (j != face) g.push_back(1u << (j - 1));
        return Subgroup::span(3, g);
    }
    return Subgroup::span(3, {0b011, 0b110});
}

namespace {

Subgroup cube_cell_label(const CubeBox& box, const std::vector<int>& base, uint32_t axes) {
    Subgroup k = Subgroup::full(3);
    for (int f : box.faces_of(base, axes)) k = k.intersect(cube_face_label(f));
    return k;
}

std::string region_name(const CubeBox& box, const std::vector<int>& base, uint32_t axes) {
    auto f = box.faces_of(base, axes);
    if (f.empty()) return "bulk";
    std::string s = f.size() == 1 ? "F" : f.size() == 2 ? "E" : "v";
    for (int x : f) s += std::to_string(x);
    return s;
}

}  // namespace

int64_t BoundaryCode::cube_edge(const std::vector<int>& base, int axis) const {
    if (kind != BoundaryKind::Cube) throw InputError("not a cube code");
    for (int a = 0; a < 3; ++a)
        if (base[a] < 0 || base[a] > L) return -1;
    CubeBox box{L};
    return edge_lookup[box.vertex(base[0], base[1], base[2]) * 3 + axis];
}

BoundaryCode cube_code(int L) {
    if (L < 2) throw InputError("cube code needs side length L >= 2");
    BoundaryCode bc;
    bc.kind = BoundaryKind::Cube;
    bc.Nc = 3;
    bc.L = L;
    CubeBox box{L};
    BoundaryGeometry& g = bc.geometry;
    g.num_vertices = (std::size_t)(L + 1) * (L + 1) * (L + 1);
    for (std::size_t v = 0; v < g.num_vertices; ++v) {
        auto c = box.coords(v);
        g.vertex_label.push_back(cube_cell_label(box, c, 0));
        g.vertex_name.push_back("(" + std::to_string(c[0]) + "," + std::to_string(c[1]) + "," + std::to_string(c[2]) +
                                ")" + region_name(box, c, 0));
    }
    bc.edge_lookup.assign(g.num_vertices * 3, -1);
    for (std::size_t v = 0; v < g.num_vertices; ++v) {
        auto c = box.coords(v);
        for (int a = 0; a < 3; ++a) {
            if (c[a] == L) continue;
            auto d = c;
            ++d[a];
            bc.edge_lookup[v * 3 + a] = (int64_t)g.edges.size();
            g.edges.emplace_back(v, box.vertex(d[0], d[1], d[2]));
            g.edge_label.push_back(cube_cell_label(box, c, 1u << a));
            g.edge_name.push_back(g.vertex_name[v].substr(0, g.vertex_name[v].find(')') + 1) + "+" + "xyz"[a] +
                                  region_name(box, c, 1u << a));
        }
    }
    for (std::size_t v = 0; v < g.num_vertices; ++v) {
        auto c = box.coords(v);
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) {
                if (c[a] == L || c[b] == L) continue;
                auto ca = c, cb = c;
                ++ca[a];
                ++cb[b];
                g.plaquettes.push_back({(std::size_t)bc.cube_edge(c, a), (std::size_t)bc.cube_edge(ca, b),
                                        (std::size_t)bc.cube_edge(cb, a), (std::size_t)bc.cube_edge(c, b)});
                g.plaquette_label.push_back(cube_cell_label(box, c, (1u << a) | (1u << b)));
            }
    }
    bc.code = boundary_css(g, 3, "cube-code:L" + std::to_string(L));
    bc.code.notes.push_back(
        "boundary stabilizers away from the drawn faces (F2, E24, ...) are generated from the face labels "
        "by intersection; flagged for manual inspection");
    LogicalBasis lb = logical_basis(bc.code);
    if (lb.size() != 1) throw CheckFailure("cube code logical dimension is not 2");
    bc.one_state = lb.reps[0];
    return bc;
}

std::string code_to_json(const CssCode& code) {
    nlohmann::ordered_json j;
    j["name"] = code.name;
    j["N"] = code.N;
    j["num_qudits"] = code.num_qudits;
    j["condensed"] = code.condensed;
    auto copies = nlohmann::ordered_json::array();
    for (const auto& c : code.copies) {
        nlohmann::ordered_json o;
        o["complex"] = c.complex ? c.complex->name : std::string();
        o["q"] = c.q;
        o["offset"] = c.offset;
        o["size"] = c.size;
        copies.push_back(o);
    }
    j["copies"] = copies;
    auto dump = [](const std::vector<Check>& cs) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& c : cs) {
            nlohmann::ordered_json o;
            o["label"] = c.label;
            auto t = nlohmann::ordered_json::array();
            for (auto [q, e] : c.terms) t.push_back({q, e});
            o["terms"] = t;
            arr.push_back(o);
        }
        return arr;
    };
    j["x_checks"] = dump(code.x_checks);
    j["z_checks"] = dump(code.z_checks);
    j["notes"] = code.notes;
    return j.dump(1);
}

}  // namespace cohgate
