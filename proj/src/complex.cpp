#include "cohgate/complex.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cohgate/errors.hpp"

namespace cohgate {

SimplexTable::SimplexTable(int k, int64_t num_vertices) : k_(k), nv_(std::max<int64_t>(num_vertices, 1)) {
    long double cap = 1;
    for (int i = 0; i <= k; ++i) cap *= (long double)nv_;
    if (cap >= 1.8e19L) throw InputError("simplex key space too large for " + std::to_string(nv_) + " vertices");
}

uint64_t SimplexTable::key(const int32_t* v) const {
    uint64_t h = 0;
    for (int i = 0; i <= k_; ++i) h = h * (uint64_t)nv_ + (uint64_t)v[i];
    return h;
}

std::vector<int> SimplexTable::simplex(std::size_t i) const {
    const int32_t* p = (*this)[i];
    return std::vector<int>(p, p + k_ + 1);
}

int64_t SimplexTable::insert(const int32_t* v) {
    auto [it, fresh] = index_.try_emplace(key(v), (int64_t)size());
    if (fresh) verts_.insert(verts_.end(), v, v + k_ + 1);
    return it->second;
}

int64_t SimplexTable::find(const int32_t* v) const {
    for (int i = 0; i <= k_; ++i)
        if (v[i] < 0 || v[i] >= nv_) return -1;
    auto it = index_.find(key(v));
    return it == index_.end() ? -1 : it->second;
}

int64_t SimplexTable::find(const std::vector<int>& v) const {
    if ((int)v.size() != k_ + 1) return -1;
    std::vector<int32_t> w(v.begin(), v.end());
    return find(w.data());
}

std::size_t CellComplex::num_cells(int k) const {
    if (k < 0 || k > dim) return 0;
    if (kind == ComplexKind::CubicalTorus) return axis_sets[k].size() * (std::size_t)lattice_volume();
    return simplices[k].size();
}

bool CellComplex::has_cells(int k) const {
    if (k < 0 || k > dim) return false;
    if (kind == ComplexKind::CubicalTorus) return true;
    return k <= stored_max || k == dim;
}

std::vector<std::size_t> CellComplex::f_vector() const {
    std::vector<std::size_t> f;
    for (int k = 0; k <= dim; ++k) f.push_back(num_cells(k));
    return f;
}

int64_t CellComplex::euler_characteristic() const {
    int64_t chi = 0;
    for (int k = 0; k <= dim; ++k) {
        if (!has_cells(k)) throw std::logic_error("Euler characteristic needs every degree stored");
        chi += (k % 2 ? -1 : 1) * (int64_t)num_cells(k);
    }
    return chi;
}

int64_t CellComplex::lattice_volume() const {
    int64_t v = 1;
    for (int s : sides) v *= s;
    return v;
}

std::vector<int> CellComplex::base_coords(int64_t idx) const {
    std::vector<int> b(sides.size());
    for (std::size_t i = 0; i < sides.size(); ++i) {
        b[i] = (int)(idx % sides[i]);
        idx /= sides[i];
    }
    return b;
}

int64_t CellComplex::base_index(const std::vector<int>& base) const {
    int64_t idx = 0;
    for (std::size_t i = sides.size(); i-- > 0;) idx = idx * sides[i] + (((base[i] % sides[i]) + sides[i]) % sides[i]);
    return idx;
}

CubeCell CellComplex::cube_cell(int k, std::size_t id) const {
    int64_t V = lattice_volume();
    return CubeCell{base_coords((int64_t)id % V), axis_sets[k][id / V]};
}

int64_t CellComplex::cube_index(int k, const std::vector<int>& base, uint32_t axes) const {
    const auto& sets = axis_sets[k];
    auto it = std::lower_bound(sets.begin(), sets.end(), axes);
    if (it == sets.end() || *it != axes) return -1;
    return (int64_t)(it - sets.begin()) * lattice_volume() + base_index(base);
}

int64_t CellComplex::simplex_index(const std::vector<int>& v) const {
    int k = (int)v.size() - 1;
    if (!has_cells(k)) return -1;
    return simplices[k].find(v);
}

namespace {

std::vector<std::vector<int32_t>> sorted_unique(std::vector<int32_t>& flat, int width) {
    std::size_t n = flat.size() / width;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto less = [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(flat.begin() + a * width, flat.begin() + (a + 1) * width,
                                            flat.begin() + b * width, flat.begin() + (b + 1) * width);
    };
    std::sort(order.begin(), order.end(), less);
    std::vector<std::vector<int32_t>> out;
    for (std::size_t idx = 0; idx < n; ++idx) {
        std::size_t o = order[idx];
        std::vector<int32_t> s(flat.begin() + o * width, flat.begin() + (o + 1) * width);
        if (out.empty() || out.back() != s) out.push_back(std::move(s));
    }
    return out;
}

void build_simplicial_boundaries(CellComplex& C) {
    C.boundary.assign(C.dim + 1, SparseMatrix());
    C.boundary[0] = SparseMatrix(0, C.num_cells(0));
    for (int k = 1; k <= C.dim; ++k) {
        if (!C.has_cells(k) || !C.has_cells(k - 1)) continue;
        const auto& T = C.simplices[k];
        const auto& F = C.simplices[k - 1];
        SparseMatrix B(F.size(), T.size());
        std::vector<int32_t> face(k);
        for (std::size_t j = 0; j < T.size(); ++j) {
            const int32_t* s = T[j];
            for (int i = 0; i <= k; ++i) {
                int w = 0;
                for (int t = 0; t <= k; ++t)
                    if (t != i) face[w++] = s[t];
                int64_t r = F.find(face.data());
                if (r < 0) throw std::logic_error("face closure violated");
                B.col[j].push_back({(int32_t)r, (i % 2) ? -1 : 1});
            }
            std::sort(B.col[j].begin(), B.col[j].end());
        }
        C.boundary[k] = std::move(B);
    }
}

}  // namespace

ComplexPtr build_from_facets(const std::vector<std::vector<int>>& facets_in, const std::string& name,
                             int max_degree) {
    if (facets_in.empty()) throw InputError("facet list is empty");
    std::vector<std::vector<int>> facets;
    int dim = 0;
    int64_t nv = 0;
    std::set<std::vector<int>> seen;
    for (std::size_t i = 0; i < facets_in.size(); ++i) {
        auto f = facets_in[i];
        if (f.empty()) throw InputError("facet " + std::to_string(i) + " is empty");
        for (int v : f)
            if (v < 0) throw InputError("facet " + std::to_string(i) + " has a negative vertex id");
        std::sort(f.begin(), f.end());
        if (std::adjacent_find(f.begin(), f.end()) != f.end())
            throw InputError("facet " + std::to_string(i) + " repeats a vertex");
        if (!seen.insert(f).second) throw InputError("duplicate facet at index " + std::to_string(i));
        dim = std::max(dim, (int)f.size() - 1);
        nv = std::max<int64_t>(nv, f.back() + 1);
        facets.push_back(std::move(f));
    }
    if (dim > 30) throw InputError("dimension too large");
    auto C = std::make_shared<CellComplex>();
    C->name = name;
    C->kind = ComplexKind::Simplicial;
    C->dim = dim;
    C->num_vertices = nv;
    C->stored_max = (max_degree < 0 || max_degree >= dim) ? dim : max_degree;
    C->pure = std::all_of(facets.begin(), facets.end(), [&](const auto& f) { return (int)f.size() == dim + 1; });
    if (!C->pure && C->stored_max < dim) throw InputError("partial skeleton requires a pure complex");

    std::vector<std::vector<int32_t>> flat(dim + 1);
    for (const auto& f : facets) {
        int m = (int)f.size();
        for (uint32_t mask = 1; mask < (1u << m); ++mask) {
            int k = std::popcount(mask) - 1;
            if (k > C->stored_max && k != dim) continue;
            for (int t = 0; t < m; ++t)
                if (mask >> t & 1) flat[k].push_back(f[t]);
        }
    }
    C->simplices.clear();
    for (int k = 0; k <= dim; ++k) {
        SimplexTable T(k, nv);
        for (const auto& s : sorted_unique(flat[k], k + 1)) T.insert(s.data());
        flat[k].clear();
        flat[k].shrink_to_fit();
        C->simplices.push_back(std::move(T));
    }
    build_simplicial_boundaries(*C);
    return C;
}

ComplexPtr torus_lattice(int n, int L) { return torus_lattice(std::vector<int>(n, L)); }

ComplexPtr torus_lattice(const std::vector<int>& sides) {
    int n = (int)sides.size();
    if (n < 1) throw InputError("torus dimension must be at least 1");
    if (n > 16) throw InputError("torus dimension too large");
    for (int L : sides)
        if (L < 2) throw InputError("torus side length must be at least 2");
    auto C = std::make_shared<CellComplex>();
    C->kind = ComplexKind::CubicalTorus;
    C->dim = n;
    C->stored_max = n;
    C->sides = sides;
    std::ostringstream nm;
    nm << "T" << n << "(";
    for (int i = 0; i < n; ++i) nm << (i ? "x" : "") << sides[i];
    nm << ")";
    C->name = nm.str();
    C->axis_sets.assign(n + 1, {});
    for (uint32_t m = 0; m < (1u << n); ++m) C->axis_sets[std::popcount(m)].push_back(m);
    int64_t V = C->lattice_volume();
    C->boundary.assign(n + 1, SparseMatrix());
    C->boundary[0] = SparseMatrix(0, C->num_cells(0));
    for (int k = 1; k <= n; ++k) {
        SparseMatrix B(C->num_cells(k - 1), C->num_cells(k));
        for (std::size_t id = 0; id < C->num_cells(k); ++id) {
            CubeCell c = C->cube_cell(k, id);
            int j = 0;
            std::map<int32_t, int64_t> acc;
            for (int ax = 0; ax < n; ++ax) {
                if (!(c.axes >> ax & 1)) continue;
                int sgn = (j % 2) ? -1 : 1;
                uint32_t rest = c.axes & ~(1u << ax);
                auto up = c.base;
                up[ax] += 1;
                acc[(int32_t)C->cube_index(k - 1, up, rest)] += sgn;
                acc[(int32_t)C->cube_index(k - 1, c.base, rest)] -= sgn;
                ++j;
            }
            for (auto [r, v] : acc)
                if (v) B.col[id].push_back({r, v});
        }
        C->boundary[k] = std::move(B);
    }
    C->orientation = std::vector<int64_t>(V, 1);
    return C;
}

ComplexPtr circle(int vertices) {
    if (vertices < 3) throw InputError("a simplicial circle needs at least 3 vertices");
    std::vector<std::vector<int>> f;
    for (int i = 0; i < vertices; ++i) f.push_back({i, (i + 1) % vertices});
    auto C = build_from_facets(f, "circle");
    return with_orientation(C, compute_orientation(*C));
}

ComplexPtr point() { return build_from_facets({{0}}, "point"); }

namespace {

std::vector<std::vector<int>> maximal_simplices(const CellComplex& C) {
    std::vector<std::vector<int>> out;
    if (C.pure) {
        for (std::size_t i = 0; i < C.num_cells(C.dim); ++i) out.push_back(C.simplex(C.dim, i));
        return out;
    }
    for (int k = 0; k <= C.dim; ++k) {
        std::vector<char> covered(C.num_cells(k), 0);
        if (k < C.dim)
            for (const auto& col : C.boundary[k + 1].col)
                for (auto [r, v] : col) covered[r] = 1;
        for (std::size_t i = 0; i < covered.size(); ++i)
            if (!covered[i]) out.push_back(C.simplex(k, i));
    }
    return out;
}

}  // namespace

ProductTops product_tops(const CellComplex& A, const CellComplex& B) {
    if (A.kind != ComplexKind::Simplicial || B.kind != ComplexKind::Simplicial)
        throw InputError("product is defined for simplicial complexes only");
    ProductTops P;
    int64_t nB = B.num_vertices;
    P.num_vertices = A.num_vertices * nB;
    auto MA = maximal_simplices(A);
    auto MB = maximal_simplices(B);
    bool oriented = A.orientation && B.orientation && A.pure && B.pure;
    std::vector<std::pair<std::vector<int>, int64_t>> tops;
    for (std::size_t ia = 0; ia < MA.size(); ++ia)
        for (std::size_t ib = 0; ib < MB.size(); ++ib) {
            const auto& s = MA[ia];
            const auto& t = MB[ib];
            int p = (int)s.size() - 1, q = (int)t.size() - 1;
            int64_t base = oriented ? (*A.orientation)[ia] * (*B.orientation)[ib] : 0;
            // Steps: bit set = A-step.
            for (uint32_t mask = 0; mask < (1u << (p + q)); ++mask) {
                if (std::popcount(mask) != p) continue;
                std::vector<int> v;
                int i = 0, j = 0, inv = 0, bsteps = 0;
                v.push_back((int)(s[0] * nB + t[0]));
                for (int st = 0; st < p + q; ++st) {
                    if (mask >> st & 1) {
                        ++i;
                        inv += bsteps;
                    } else {
                        ++j;
                        ++bsteps;
                    }
                    v.push_back((int)(s[i] * nB + t[j]));
                }
                tops.push_back({std::move(v), base * ((inv % 2) ? -1 : 1)});
            }
        }
    std::sort(tops.begin(), tops.end());
    for (auto& [v, o] : tops) {
        P.tops.push_back(v);
        if (oriented) P.orientation.push_back(o);
    }
    P.vertex_projection.assign(2, std::vector<int>(P.num_vertices));
    for (int64_t v = 0; v < P.num_vertices; ++v) {
        P.vertex_projection[0][v] = (int)(v / nB);
        P.vertex_projection[1][v] = (int)(v % nB);
    }
    return P;
}

ComplexPtr product(const ComplexPtr& A, const ComplexPtr& B, int max_degree) {
    auto P = product_tops(*A, *B);
    auto built = build_from_facets(P.tops, A->name + "x" + B->name, max_degree);
    auto C = std::make_shared<CellComplex>(*built);
    C->num_vertices = P.num_vertices;
    if (!P.orientation.empty() && C->pure) {
        std::vector<int64_t> o(C->num_cells(C->dim), 0);
        for (std::size_t i = 0; i < P.tops.size(); ++i) {
            int64_t id = C->simplices[C->dim].find(P.tops[i]);
            o[id] = P.orientation[i];
        }
        C->orientation = std::move(o);
    }
    C->factors = {A, B};
    C->vertex_projection = P.vertex_projection;
    return C;
}

std::optional<std::vector<int64_t>> compute_orientation(const CellComplex& C) {
    if (C.kind == ComplexKind::CubicalTorus) return std::vector<int64_t>(C.lattice_volume(), 1);
    if (!C.pure) return std::nullopt;
    const auto& T = C.simplices[C.dim];
    std::size_t n = T.size();
    int d = C.dim;
    if (d == 0) return std::nullopt;
    std::unordered_map<std::string, std::vector<std::pair<std::size_t, int>>> ridges;
    ridges.reserve(n * (d + 1));
    for (std::size_t j = 0; j < n; ++j) {
        const int32_t* s = T[j];
        for (int i = 0; i <= d; ++i) {
            std::string key;
            for (int t = 0; t <= d; ++t)
                if (t != i) key.append(reinterpret_cast<const char*>(&s[t]), sizeof(int32_t));
            ridges[key].push_back({j, (i % 2) ? -1 : 1});
        }
    }
    std::vector<std::vector<std::pair<std::size_t, int>>> adj(n);
    for (auto& [k, lst] : ridges) {
        if (lst.size() != 2) return std::nullopt;
        adj[lst[0].first].push_back({lst[1].first, -lst[0].second * lst[1].second});
        adj[lst[1].first].push_back({lst[0].first, -lst[0].second * lst[1].second});
    }
    std::vector<int64_t> o(n, 0);
    for (std::size_t root = 0; root < n; ++root) {
        if (o[root]) continue;
        o[root] = 1;
        std::vector<std::size_t> stack{root};
        while (!stack.empty()) {
            std::size_t j = stack.back();
            stack.pop_back();
            for (auto [k, rel] : adj[j]) {
                int64_t want = o[j] * rel;
                if (!o[k]) {
                    o[k] = want;
                    stack.push_back(k);
                } else if (o[k] != want) {
                    return std::nullopt;
                }
            }
        }
    }
    return o;
}

ComplexPtr with_orientation(const ComplexPtr& C, std::optional<std::vector<int64_t>> orientation) {
    auto D = std::make_shared<CellComplex>(*C);
    D->orientation = std::move(orientation);
    return D;
}

ValidationReport validate(const CellComplex& C) {
    ValidationReport r;
    for (int k = 2; k <= C.dim; ++k) {
        if (!C.has_cells(k) || !C.has_cells(k - 1) || !C.has_cells(k - 2)) continue;
        if (!C.boundary[k - 1].multiply(C.boundary[k]).is_zero()) {
            r.boundary_squared_zero = false;
            r.failures.push_back("boundary^2 != 0 in degree " + std::to_string(k));
        }
    }
    if (C.kind == ComplexKind::Simplicial) {
        for (int k = 1; k <= C.dim; ++k) {
            if (!C.has_cells(k) || !C.has_cells(k - 1)) continue;
            const auto& T = C.simplices[k];
            std::vector<int32_t> face(k);
            for (std::size_t j = 0; j < T.size() && r.faces_closed; ++j) {
                const int32_t* s = T[j];
                for (int t = 0; t + 1 <= k; ++t)
                    if (s[t] >= s[t + 1]) {
                        r.faces_closed = false;
                        r.failures.push_back("simplex vertices not strictly increasing");
                        break;
                    }
                for (int i = 0; i <= k && r.faces_closed; ++i) {
                    int w = 0;
                    for (int t = 0; t <= k; ++t)
                        if (t != i) face[w++] = s[t];
                    if (C.simplices[k - 1].find(face.data()) < 0) {
                        r.faces_closed = false;
                        r.failures.push_back("missing face of a " + std::to_string(k) + "-simplex");
                    }
                }
            }
        }
    }
    if (C.orientation) {
        const auto& o = *C.orientation;
        if (o.size() != C.num_cells(C.dim)) {
            r.orientation_cycle = false;
            r.failures.push_back("orientation length differs from the number of top cells");
        } else if (C.has_cells(C.dim - 1) && C.dim >= 1) {
            std::vector<int64_t> acc(C.num_cells(C.dim - 1), 0);
            for (std::size_t j = 0; j < o.size(); ++j)
                for (auto [i, v] : C.boundary[C.dim].col[j]) acc[i] += v * o[j];
            if (std::any_of(acc.begin(), acc.end(), [](int64_t x) { return x != 0; })) {
                r.orientation_cycle = false;
                r.failures.push_back("orientation is not a cycle over Z");
            }
        }
    }
    r.ok = r.boundary_squared_zero && r.faces_closed && r.orientation_cycle;
    return r;
}

ComplexPtr parse_complex_json(const std::string& text, const std::string& origin) {
    using nlohmann::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(origin + ": JSON parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    auto where = [&](const std::string& ptr) { return origin + ": " + ptr + ": "; };
    if (!j.is_object()) throw InputError(where("/") + "expected an object");
    std::string kind = "simplicial";
    if (j.contains("kind")) {
        if (!j["kind"].is_string()) throw InputError(where("/kind") + "expected a string");
        kind = j["kind"].get<std::string>();
    }
    std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "";
    ComplexPtr C;
    if (kind == "simplicial") {
        if (!j.contains("facets") || !j["facets"].is_array()) throw InputError(where("/facets") + "expected an array");
        std::vector<std::vector<int>> facets;
        for (std::size_t i = 0; i < j["facets"].size(); ++i) {
            const auto& f = j["facets"][i];
            if (!f.is_array()) throw InputError(where("/facets/" + std::to_string(i)) + "expected an array");
            std::vector<int> v;
            for (std::size_t t = 0; t < f.size(); ++t) {
                if (!f[t].is_number_integer() || f[t].get<int64_t>() < 0)
                    throw InputError(where("/facets/" + std::to_string(i) + "/" + std::to_string(t)) +
                                     "expected a nonnegative integer");
                v.push_back(f[t].get<int>());
            }
            facets.push_back(std::move(v));
        }
        try {
            C = build_from_facets(facets, name);
        } catch (const InputError& e) {
            throw InputError(where("/facets") + e.what());
        }
    } else if (kind == "torus") {
        if (!j.contains("dims") || !j["dims"].is_array()) throw InputError(where("/dims") + "expected an array");
        std::vector<int> dims;
        for (std::size_t i = 0; i < j["dims"].size(); ++i) {
            if (!j["dims"][i].is_number_integer())
                throw InputError(where("/dims/" + std::to_string(i)) + "expected an integer");
            dims.push_back(j["dims"][i].get<int>());
        }
        try {
            C = torus_lattice(dims);
        } catch (const InputError& e) {
            throw InputError(where("/dims") + e.what());
        }
    } else {
        throw InputError(where("/kind") + "unknown kind '" + kind + "'");
    }
    if (j.contains("orientation")) {
        const auto& o = j["orientation"];
        if (!o.is_array()) throw InputError(where("/orientation") + "expected an array");
        std::vector<int64_t> ov;
        for (std::size_t i = 0; i < o.size(); ++i) {
            if (!o[i].is_number_integer())
                throw InputError(where("/orientation/" + std::to_string(i)) + "expected an integer");
            ov.push_back(o[i].get<int64_t>());
        }
        if (ov.size() != C->num_cells(C->dim))
            throw InputError(where("/orientation") + "length " + std::to_string(ov.size()) + " but " +
                             std::to_string(C->num_cells(C->dim)) + " top cells");
        // Facets may be listed in any order; reorder onto the sorted top cells.
        if (C->kind == ComplexKind::Simplicial) {
            std::vector<int64_t> sorted(ov.size(), 0);
            for (std::size_t i = 0; i < ov.size(); ++i) {
                auto f = j["facets"][i].get<std::vector<int>>();
                std::sort(f.begin(), f.end());
                sorted[C->simplex_index(f)] = ov[i];
            }
            ov = std::move(sorted);
        }
        C = with_orientation(C, ov);
    }
    if (!name.empty()) {
        auto D = std::make_shared<CellComplex>(*C);
        D->name = name;
        C = D;
    }
    return C;
}

ComplexPtr load_complex_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_complex_json(ss.str(), path);
}

std::string complex_to_json(const CellComplex& C) {
    nlohmann::json j;
    j["name"] = C.name;
    if (C.kind == ComplexKind::CubicalTorus) {
        j["kind"] = "torus";
        j["dims"] = C.sides;
    } else {
        j["kind"] = "simplicial";
        auto& f = j["facets"] = nlohmann::json::array();
        for (std::size_t i = 0; i < C.num_cells(C.dim); ++i) f.push_back(C.simplex(C.dim, i));
    }
    if (C.orientation) j["orientation"] = *C.orientation;
    return j.dump();
}

std::string data_dir() {
    if (const char* e = std::getenv("COHGATE_DATA")) return e;
#ifdef COHGATE_DATA_DIR
    return COHGATE_DATA_DIR;
#else
    return "data";
#endif
}

}  // namespace cohgate
