#include "cohgate/grpcoh.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cohgate/errors.hpp"

namespace cohgate {

namespace {

constexpr std::size_t kGroupSizeCap = std::size_t(1) << 16;
constexpr std::size_t kDenseCap = 20'000'000;  // matrix entries for one linear solve
constexpr int64_t kModulusCap = int64_t(1) << 30;

std::size_t checked_power(std::size_t base, int n, std::size_t cap, const std::string& what) {
    std::size_t r = 1;
    for (int i = 0; i < n; ++i) {
        if (base != 0 && r > cap / base) {
            throw InputError(what + ": table of " + std::to_string(base) + "^" + std::to_string(n) +
                             " entries exceeds the cap of " + std::to_string(cap));
        }
        r *= base;
    }
    if (r > cap) throw InputError(what + ": table of " + std::to_string(r) + " entries exceeds the cap");
    return r;
}

void check_modulus(int64_t M) {
    if (M < 2 || M > kModulusCap) throw InputError("coefficient modulus must lie in [2, 2^30]");
}

// Odometer over tuples in {lo, ..., k-1}^n.
template <class F>
void for_tuples(std::size_t k, int n, std::size_t lo, F&& f) {
    std::vector<std::size_t> t(n, lo);
    if (lo >= k && n > 0) return;
    while (true) {
        f(t);
        int i = n - 1;
        while (i >= 0 && ++t[i] == k) t[i--] = lo;
        if (i < 0) break;
    }
}

// ---- linear systems over Z_M ----

std::vector<std::pair<int64_t, int>> factor(int64_t M) {
    std::vector<std::pair<int64_t, int>> out;
    for (int64_t p = 2; p * p <= M; ++p) {
        if (M % p) continue;
        int k = 0;
        while (M % p == 0) M /= p, ++k;
        out.push_back({p, k});
    }
    if (M > 1) out.push_back({M, 1});
    return out;
}

struct ZmSystem {
    int64_t M = 2;
    std::size_t cols = 0;
    std::vector<std::vector<std::pair<std::size_t, int64_t>>> rows;  // sparse input rows
    std::vector<int64_t> rhs;

    void add_row(std::vector<std::pair<std::size_t, int64_t>> r, int64_t b) {
        rows.push_back(std::move(r));
        rhs.push_back(b);
    }
};

struct ZmResult {
    bool consistent = false;
    std::vector<int64_t> x;
    BigInt image = 1;  // order of the column span
};

// Elimination over the local ring Z_{p^k} with full pivoting on the p-adic valuation:
// after each step every remaining entry is divisible by the pivot's power of p.
ZmResult solve_prime_power(const ZmSystem& S, int64_t p, int k) {
    int64_t q = 1;
    for (int i = 0; i < k; ++i) q *= p;
    std::size_t R = S.rows.size(), C = S.cols;
    if (R * (C + 1) > kDenseCap)
        throw InputError("linear system of " + std::to_string(R) + " x " + std::to_string(C) +
                         " exceeds the dense solver cap");
    std::vector<std::vector<int64_t>> A(R, std::vector<int64_t>(C + 1, 0));
    for (std::size_t i = 0; i < R; ++i) {
        for (auto [c, v] : S.rows[i]) A[i][c] = mod(A[i][c] + v, q);
        A[i][C] = mod(S.rhs[i], q);
    }
    auto val = [&](int64_t x) {
        int v = 0;
        while (x % p == 0) x /= p, ++v;
        return v;
    };
    std::vector<std::size_t> order(C);
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> pv;
    std::size_t r = 0;
    for (; r < std::min(R, C); ++r) {
        int best = k;
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = r; i < R && best > 0; ++i)
            for (std::size_t j = r; j < C; ++j) {
                int64_t x = A[i][order[j]];
                if (!x) continue;
                int v = val(x);
                if (v < best) {
                    best = v, bi = i, bj = j;
                    if (!v) break;
                }
            }
        if (best == k) break;
        std::swap(A[r], A[bi]);
        std::swap(order[r], order[bj]);
        std::size_t pc = order[r];
        int64_t pk = 1;
        for (int i = 0; i < best; ++i) pk *= p;
        int64_t uinv = inv_mod((A[r][pc] / pk) % q, q);
        pv.push_back(best);
        for (std::size_t i = r + 1; i < R; ++i) {
            int64_t e = A[i][pc];
            if (!e) continue;
            int64_t f = mod((e / pk) * uinv, q);
            A[i][pc] = 0;
            for (std::size_t j = r + 1; j < C; ++j) {
                std::size_t c = order[j];
                if (A[r][c]) A[i][c] = mod(A[i][c] - f * A[r][c], q);
            }
            A[i][C] = mod(A[i][C] - f * A[r][C], q);
        }
    }
    ZmResult out;
    for (int v : pv)
        for (int i = v; i < k; ++i) out.image *= p;
    for (std::size_t i = r; i < R; ++i)
        if (A[i][C]) return out;
    out.x.assign(C, 0);
    for (std::size_t ii = r; ii-- > 0;) {
        std::size_t pc = order[ii];
        int64_t s = A[ii][C];
        for (std::size_t j = ii + 1; j < r; ++j) s = mod(s - A[ii][order[j]] * out.x[order[j]], q);
        int64_t pk = 1;
        for (int i = 0; i < pv[ii]; ++i) pk *= p;
        if (s % pk) return out;
        int64_t rest = q / pk;
        out.x[pc] = mod((s / pk) * inv_mod((A[ii][pc] / pk) % q, q), rest);
    }
    out.consistent = true;
    return out;
}

ZmResult solve_zm(const ZmSystem& S) {
    ZmResult out;
    out.consistent = true;
    out.x.assign(S.cols, 0);
    int64_t modsofar = 1;
    for (auto [p, k] : factor(S.M)) {
        int64_t q = 1;
        for (int i = 0; i < k; ++i) q *= p;
        auto r = solve_prime_power(S, p, k);
        out.image *= r.image;
        if (!r.consistent) out.consistent = false;
        if (!out.consistent) continue;
        // CRT: x = x_old mod modsofar, x = r.x mod q
        int64_t inv = modsofar == 1 ? 0 : inv_mod(mod(modsofar, q), q);
        for (std::size_t j = 0; j < S.cols; ++j) {
            int64_t t = modsofar == 1 ? r.x[j] : mod((r.x[j] - out.x[j] % q) * inv, q);
            out.x[j] = out.x[j] + modsofar * t;
        }
        modsofar *= q;
    }
    if (!out.consistent) out.x.clear();
    return out;
}

BigInt big_pow(int64_t M, std::size_t e) {
    BigInt r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= M;
    return r;
}

// Variables of a cochain space: all tuples, or only tuples avoiding the identity.
struct Space {
    const AbelianSubgroup* K = nullptr;
    int deg = 0;
    bool normalized = true;
    std::size_t count = 0;

    Space(const AbelianSubgroup& k, int d, bool n) : K(&k), deg(d), normalized(n) {
        std::size_t base = normalized ? K->size() - 1 : K->size();
        count = checked_power(base, deg, kGroupTableCap, "cochain space");
    }
    // -1 for degenerate tuples in normalized mode
    long var(const std::vector<std::size_t>& t) const {
        std::size_t k = K->size(), idx = 0;
        for (std::size_t x : t) {
            if (normalized) {
                if (x == 0) return -1;
                idx = idx * (k - 1) + (x - 1);
            } else {
                idx = idx * k + x;
            }
        }
        return (long)idx;
    }
    template <class F>
    void for_each(F&& f) const {
        for_tuples(K->size(), deg, normalized ? 1 : 0, [&](const std::vector<std::size_t>& t) { f(t, var(t)); });
    }
};

// Terms (sign, tuple) of (d f)(t) for f of degree t.size() - 1.
std::vector<std::pair<int, std::vector<std::size_t>>> coboundary_terms(const AbelianSubgroup& K,
                                                                        const std::vector<std::size_t>& t) {
    int m = (int)t.size() - 1;
    std::vector<std::pair<int, std::vector<std::size_t>>> out;
    out.push_back({1, std::vector<std::size_t>(t.begin() + 1, t.end())});
    for (int i = 1; i <= m; ++i) {
        std::vector<std::size_t> u;
        for (int j = 0; j < (int)t.size(); ++j) {
            if (j == i - 1) {
                u.push_back(K.sum[t[j]][t[j + 1]]);
                ++j;
            } else {
                u.push_back(t[j]);
            }
        }
        out.push_back({(i % 2) ? -1 : 1, u});
    }
    out.push_back({((m + 1) % 2) ? -1 : 1, std::vector<std::size_t>(t.begin(), t.end() - 1)});
    return out;
}

std::size_t tuple_index(const std::vector<std::size_t>& t, std::size_t k) {
    std::size_t idx = 0;
    for (std::size_t x : t) idx = idx * k + x;
    return idx;
}

// Image order of d on the given space (degree deg -> deg + 1), over Z_M.
BigInt coboundary_image(const AbelianSubgroup& K, int deg, int64_t M, bool normalized) {
    if (deg < 0) return 1;
    Space src(K, deg, normalized), dst(K, deg + 1, normalized);
    ZmSystem S;
    S.M = M;
    S.cols = src.count;
    dst.for_each([&](const std::vector<std::size_t>& t, long) {
        std::vector<std::pair<std::size_t, int64_t>> row;
        for (auto& [s, u] : coboundary_terms(K, t)) {
            long v = src.var(u);
            if (v >= 0) row.push_back({(std::size_t)v, s});
        }
        S.add_row(std::move(row), 0);
    });
    return solve_zm(S).image;
}

std::vector<std::size_t> map_into(const AbelianSubgroup& H, const AbelianSubgroup& K) {
    std::vector<std::size_t> m(H.size());
    for (std::size_t i = 0; i < H.size(); ++i) {
        auto l = K.local(H.elements[i]);
        if (!l) throw InputError("subgroup " + H.str() + " is not contained in " + K.str());
        m[i] = *l;
    }
    return m;
}

}  // namespace

// ---- groups ----

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<int64_t> o) : orders(std::move(o)) {
    std::size_t s = 1;
    for (int64_t n : orders) {
        if (n < 1) throw InputError("group factor orders must be positive");
        s *= (std::size_t)n;
        if (s > kGroupSizeCap) throw InputError("group order exceeds 2^16");
    }
}

std::size_t FiniteAbelianGroup::size() const {
    std::size_t s = 1;
    for (int64_t n : orders) s *= (std::size_t)n;
    return s;
}

std::vector<int64_t> FiniteAbelianGroup::element(std::size_t i) const {
    std::vector<int64_t> g(orders.size());
    for (std::size_t j = orders.size(); j-- > 0;) {
        g[j] = (int64_t)(i % (std::size_t)orders[j]);
        i /= (std::size_t)orders[j];
    }
    return g;
}

std::size_t FiniteAbelianGroup::index(const std::vector<int64_t>& g) const {
    if (g.size() != orders.size()) throw InputError("element has the wrong number of components");
    std::size_t i = 0;
    for (std::size_t j = 0; j < orders.size(); ++j) i = i * (std::size_t)orders[j] + (std::size_t)mod(g[j], orders[j]);
    return i;
}

std::vector<int64_t> FiniteAbelianGroup::add(const std::vector<int64_t>& a, const std::vector<int64_t>& b) const {
    std::vector<int64_t> c(orders.size());
    for (std::size_t j = 0; j < orders.size(); ++j) c[j] = mod(a[j] + b[j], orders[j]);
    return c;
}

bool FiniteAbelianGroup::valid(const std::vector<int64_t>& g) const {
    if (g.size() != orders.size()) return false;
    for (std::size_t j = 0; j < g.size(); ++j)
        if (g[j] < 0 || g[j] >= orders[j]) return false;
    return true;
}

std::string FiniteAbelianGroup::str() const {
    if (orders.empty()) return "1";
    std::string s;
    for (std::size_t j = 0; j < orders.size(); ++j) s += (j ? " x Z" : "Z") + std::to_string(orders[j]);
    return s;
}

AbelianSubgroup AbelianSubgroup::generated(const FiniteAbelianGroup& G, const std::vector<std::vector<int64_t>>& gens) {
    AbelianSubgroup K;
    K.G = G;
    for (const auto& g : gens) {
        if (g.size() != G.rank()) throw InputError("generator has the wrong number of components");
        std::vector<int64_t> r(g.size());
        for (std::size_t j = 0; j < g.size(); ++j) r[j] = mod(g[j], G.orders[j]);
        K.generators.push_back(r);
    }
    std::set<std::size_t> seen = {0};
    std::vector<std::size_t> frontier = {0};
    while (!frontier.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t e : frontier)
            for (const auto& g : K.generators) {
                std::size_t s = G.index(G.add(G.element(e), g));
                if (seen.insert(s).second) next.push_back(s);
            }
        frontier = std::move(next);
    }
    K.elements.assign(seen.begin(), seen.end());
    std::size_t k = K.size();
    std::vector<long> loc(G.size(), -1);
    for (std::size_t i = 0; i < k; ++i) loc[K.elements[i]] = (long)i;
    K.sum.assign(k, std::vector<std::size_t>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            K.sum[i][j] = (std::size_t)loc[G.index(G.add(G.element(K.elements[i]), G.element(K.elements[j])))];
    return K;
}

AbelianSubgroup AbelianSubgroup::whole(const FiniteAbelianGroup& G) {
    std::vector<std::vector<int64_t>> gens;
    for (std::size_t j = 0; j < G.rank(); ++j) {
        std::vector<int64_t> e(G.rank(), 0);
        e[j] = 1;
        gens.push_back(e);
    }
    return generated(G, gens);
}

std::optional<std::size_t> AbelianSubgroup::local(std::size_t g_index) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), g_index);
    if (it == elements.end() || *it != g_index) return std::nullopt;
    return (std::size_t)(it - elements.begin());
}

bool AbelianSubgroup::contains(const std::vector<int64_t>& g) const {
    return G.valid(g) && local(G.index(g)).has_value();
}

bool AbelianSubgroup::contains(const AbelianSubgroup& H) const {
    if (H.G.orders != G.orders) return false;
    for (std::size_t e : H.elements)
        if (!local(e)) return false;
    return true;
}

AbelianSubgroup AbelianSubgroup::intersect(const AbelianSubgroup& o) const {
    if (o.G.orders != G.orders) throw InputError("intersection of subgroups of different groups");
    std::vector<std::vector<int64_t>> gens;
    for (std::size_t e : elements)
        if (o.local(e)) gens.push_back(G.element(e));
    return generated(G, gens);
}

std::string AbelianSubgroup::str() const {
    std::string s = "<";
    for (std::size_t i = 0; i < generators.size(); ++i) {
        s += i ? ", (" : "(";
        for (std::size_t j = 0; j < generators[i].size(); ++j)
            s += (j ? "," : "") + std::to_string(generators[i][j]);
        s += ")";
    }
    return s + "> in " + G.str();
}

AbelianSubgroup from_z2_label(const Subgroup& s) {
    FiniteAbelianGroup G(std::vector<int64_t>(s.n, 2));
    std::vector<std::vector<int64_t>> gens;
    for (uint32_t b : s.basis) {
        std::vector<int64_t> g(s.n);
        for (int j = 0; j < s.n; ++j) g[j] = (b >> j) & 1u;
        gens.push_back(g);
    }
    return AbelianSubgroup::generated(G, gens);
}

// ---- cochains ----

GroupCochain GroupCochain::zero(const AbelianSubgroup& K, int n, int64_t M) {
    check_modulus(M);
    if (n < 0) throw InputError("cochain degree must be non-negative");
    GroupCochain f;
    f.domain = K;
    f.degree = n;
    f.modulus = M;
    f.values.assign(checked_power(K.size(), n, kGroupTableCap, "group cochain"), 0);
    return f;
}

GroupCochain GroupCochain::from_function(const AbelianSubgroup& K, int n, int64_t M,
                                         const std::function<int64_t(const std::vector<std::vector<int64_t>>&)>& fn) {
    GroupCochain f = zero(K, n, M);
    std::vector<std::vector<int64_t>> els(K.size());
    for (std::size_t i = 0; i < K.size(); ++i) els[i] = K.element(i);
    std::size_t idx = 0;
    for_tuples(K.size(), n, 0, [&](const std::vector<std::size_t>& t) {
        std::vector<std::vector<int64_t>> args;
        for (std::size_t x : t) args.push_back(els[x]);
        f.values[idx++] = mod(fn(args), M);
    });
    return f;
}

GroupCochain GroupCochain::lift_product(const AbelianSubgroup& K, const std::vector<int>& comps, int64_t num,
                                        int64_t M) {
    for (int c : comps)
        if (c < 0 || c >= (int)K.G.rank()) throw InputError("component index out of range");
    return from_function(K, (int)comps.size(), M, [&](const std::vector<std::vector<int64_t>>& g) {
        int64_t v = mod(num, M);
        for (std::size_t i = 0; i < comps.size(); ++i) v = mod(v * g[i][comps[i]], M);
        return v;
    });
}

int64_t GroupCochain::at(const std::vector<std::size_t>& t) const {
    if ((int)t.size() != degree) throw InputError("cochain evaluated with the wrong number of arguments");
    return values[tuple_index(t, domain.size())];
}

GroupCochain GroupCochain::restrict_to(const AbelianSubgroup& H) const {
    auto m = map_into(H, domain);
    GroupCochain f = zero(H, degree, modulus);
    std::size_t idx = 0, k = domain.size();
    for_tuples(H.size(), degree, 0, [&](const std::vector<std::size_t>& t) {
        std::size_t j = 0;
        for (std::size_t x : t) j = j * k + m[x];
        f.values[idx++] = values[j];
    });
    return f;
}

GroupCochain GroupCochain::rescale(int64_t M2) const {
    check_modulus(M2);
    if (M2 % modulus) throw InputError("target modulus must be a multiple of " + std::to_string(modulus));
    GroupCochain f = *this;
    f.modulus = M2;
    for (auto& v : f.values) v = mod(v * (M2 / modulus), M2);
    return f;
}

GroupCochain GroupCochain::operator+(const GroupCochain& o) const {
    if (!(domain == o.domain) || degree != o.degree || modulus != o.modulus)
        throw InputError("adding incompatible group cochains");
    GroupCochain f = *this;
    for (std::size_t i = 0; i < values.size(); ++i) f.values[i] = mod(values[i] + o.values[i], modulus);
    return f;
}

GroupCochain GroupCochain::operator-(const GroupCochain& o) const {
    GroupCochain n = o;
    for (auto& v : n.values) v = mod(-v, modulus);
    return *this + n;
}

bool GroupCochain::is_zero() const {
    return std::all_of(values.begin(), values.end(), [](int64_t v) { return v == 0; });
}

bool GroupCochain::is_normalized() const {
    bool ok = true;
    std::size_t idx = 0;
    for_tuples(domain.size(), degree, 0, [&](const std::vector<std::size_t>& t) {
        if (values[idx++] && std::find(t.begin(), t.end(), 0) != t.end()) ok = false;
    });
    return ok;
}

bool GroupCochain::operator==(const GroupCochain& o) const {
    return domain == o.domain && degree == o.degree && modulus == o.modulus && values == o.values;
}

std::string GroupCochain::str() const {
    std::ostringstream os;
    std::size_t idx = 0;
    for_tuples(domain.size(), degree, 0, [&](const std::vector<std::size_t>& t) {
        int64_t v = values[idx++];
        if (!v) return;
        os << "f(";
        for (std::size_t i = 0; i < t.size(); ++i) {
            auto g = domain.element(t[i]);
            os << (i ? ", (" : "(");
            for (std::size_t j = 0; j < g.size(); ++j) os << (j ? "," : "") << g[j];
            os << ")";
        }
        os << ") = " << v << "/" << modulus << "\n";
    });
    return os.str();
}

GroupCochain bar_coboundary(const GroupCochain& f) {
    GroupCochain d = GroupCochain::zero(f.domain, f.degree + 1, f.modulus);
    std::size_t k = f.domain.size(), idx = 0;
    for_tuples(k, f.degree + 1, 0, [&](const std::vector<std::size_t>& t) {
        int64_t s = 0;
        for (auto& [sg, u] : coboundary_terms(f.domain, t)) s += sg * f.values[tuple_index(u, k)];
        d.values[idx++] = mod(s, f.modulus);
    });
    return d;
}

GroupCochain group_cup(const GroupCochain& f, const GroupCochain& g) {
    if (!(f.domain == g.domain) || f.modulus != g.modulus) throw InputError("cup of incompatible group cochains");
    GroupCochain c = GroupCochain::zero(f.domain, f.degree + g.degree, f.modulus);
    std::size_t gs = g.values.size();
    for (std::size_t i = 0; i < f.values.size(); ++i)
        for (std::size_t j = 0; j < gs; ++j) c.values[i * gs + j] = mod(f.values[i] * g.values[j], f.modulus);
    return c;
}

bool is_group_cocycle(const GroupCochain& f) { return bar_coboundary(f).is_zero(); }

bool same_up_to_cocycle(const GroupCochain& a, const GroupCochain& b) { return is_group_cocycle(a - b); }

// ---- boundary operation ----

namespace {

struct ChainSolve {
    bool consistent = false;
    std::vector<GroupCochain> images;
};

// Joint system: alpha_i = s_i x_i over Z_Mf with s_i = Mf / M_i, d alpha_1 = omega|_{K_1},
// d alpha_i = alpha_{i-1}|_{K_i}, and optionally alpha_last = target.
ChainSolve solve_chain(const GroupCochain& omega, const std::vector<BoundaryStep>& steps, std::size_t len,
                       const GroupCochain* target, bool normalized) {
    int n = omega.degree;
    int64_t Mf = steps[len - 1].modulus;
    std::vector<Space> spaces;
    std::vector<std::size_t> offset;
    std::size_t cols = 0;
    for (std::size_t i = 0; i < len; ++i) {
        spaces.emplace_back(steps[i].K, n - 1 - (int)i, normalized);
        offset.push_back(cols);
        cols += spaces.back().count;
    }
    ZmSystem S;
    S.M = Mf;
    S.cols = cols;
    GroupCochain w = omega.restrict_to(steps[0].K);
    for (std::size_t i = 0; i < len; ++i) {
        const AbelianSubgroup& K = steps[i].K;
        int64_t si = Mf / steps[i].modulus;
        std::vector<std::size_t> up;
        int64_t sprev = 0;
        if (i > 0) {
            up = map_into(K, steps[i - 1].K);
            sprev = Mf / steps[i - 1].modulus;
        }
        Space eq(K, n - (int)i, normalized);
        eq.for_each([&](const std::vector<std::size_t>& t, long) {
            std::vector<std::pair<std::size_t, int64_t>> row;
            for (auto& [s, u] : coboundary_terms(K, t)) {
                long v = spaces[i].var(u);
                if (v >= 0) row.push_back({offset[i] + (std::size_t)v, s * si});
            }
            int64_t b = 0;
            if (i == 0) {
                b = w.values[tuple_index(t, K.size())] * (Mf / omega.modulus);
            } else {
                std::vector<std::size_t> tu;
                for (std::size_t x : t) tu.push_back(up[x]);
                long v = spaces[i - 1].var(tu);
                if (v >= 0) row.push_back({offset[i - 1] + (std::size_t)v, -sprev});
            }
            S.add_row(std::move(row), b);
        });
    }
    for (std::size_t i = 0; i < len; ++i) {
        const GroupCochain* pin = steps[i].choice ? &*steps[i].choice : nullptr;
        if (i + 1 == len && target) pin = target;
        if (!pin) continue;
        int64_t si = Mf / steps[i].modulus;
        spaces[i].for_each([&](const std::vector<std::size_t>& t, long v) {
            S.add_row({{offset[i] + (std::size_t)v, si}}, pin->values[tuple_index(t, steps[i].K.size())] * si);
        });
    }
    auto r = solve_zm(S);
    ChainSolve out;
    out.consistent = r.consistent;
    if (!r.consistent) return out;
    for (std::size_t i = 0; i < len; ++i) {
        GroupCochain a = GroupCochain::zero(steps[i].K, spaces[i].deg, steps[i].modulus);
        std::size_t idx = 0;
        for_tuples(steps[i].K.size(), spaces[i].deg, 0, [&](const std::vector<std::size_t>& t) {
            long v = spaces[i].var(t);
            if (v >= 0) a.values[idx] = mod(r.x[offset[i] + (std::size_t)v], steps[i].modulus);
            ++idx;
        });
        out.images.push_back(std::move(a));
    }
    return out;
}

void validate_chain(const GroupCochain& omega, const std::vector<BoundaryStep>& steps) {
    if (steps.size() > (std::size_t)omega.degree)
        throw InputError("chain of " + std::to_string(steps.size()) + " steps is longer than the degree " +
                         std::to_string(omega.degree));
    const AbelianSubgroup* prev = &omega.domain;
    int64_t Mprev = omega.modulus;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        check_modulus(steps[i].modulus);
        if (!prev->contains(steps[i].K))
            throw InputError("step " + std::to_string(i + 1) + ": " + steps[i].K.str() + " is not a subgroup of " +
                             prev->str());
        if (steps[i].modulus % Mprev)
            throw InputError("step " + std::to_string(i + 1) + ": modulus " + std::to_string(steps[i].modulus) +
                             " is not a multiple of " + std::to_string(Mprev));
        const auto& c = steps[i].choice;
        if (c && (!(c->domain == steps[i].K) || c->degree != omega.degree - 1 - (int)i ||
                  c->modulus != steps[i].modulus))
            throw InputError("step " + std::to_string(i + 1) + ": pinned choice has the wrong domain, degree or modulus");
        prev = &steps[i].K;
        Mprev = steps[i].modulus;
    }
}

}  // namespace

Trivialization trivialization_solve(const GroupCochain& omega, const AbelianSubgroup& K, int64_t Mp) {
    if (omega.degree < 1) throw InputError("trivialization needs a cochain of degree >= 1");
    std::vector<BoundaryStep> steps = {{K, Mp}};
    validate_chain(omega, steps);
    GroupCochain w = omega.restrict_to(K);
    bool normalized = w.is_normalized();
    Trivialization t;
    auto s = solve_chain(omega, steps, 1, nullptr, normalized);
    int m = omega.degree - 1;
    Space sp(K, m, normalized);
    BigInt im_m = coboundary_image(K, m, Mp, normalized);
    t.cocycles = big_pow(Mp, sp.count) / im_m;
    t.classes = t.cocycles / (m >= 1 ? coboundary_image(K, m - 1, Mp, normalized) : BigInt(1));
    t.solvable = s.consistent;
    if (s.consistent) {
        t.alpha = s.images[0];
        t.note = "alpha is unique up to adding one of " + t.cocycles.str() + (normalized ? " normalized" : "") +
                 " cocycles of K";
    } else {
        t.alpha = GroupCochain::zero(K, m, Mp);
        t.note = "no solution: omega restricted to K is not exact over Z_" + std::to_string(Mp);
    }
    return t;
}

BoundaryChain iterate_boundary(const GroupCochain& omega, const std::vector<BoundaryStep>& steps,
                               const std::optional<GroupCochain>& target) {
    validate_chain(omega, steps);
    BoundaryChain c;
    c.images.push_back(omega);
    if (steps.empty()) {
        c.solvable = true;
        if (target) c.reaches_target = (*target == omega);
        c.note = "empty chain";
        return c;
    }
    const std::size_t s = steps.size();
    if (target) {
        if (!(target->domain == steps[s - 1].K) || target->degree != omega.degree - (int)s ||
            target->modulus != steps[s - 1].modulus)
            throw InputError("target must be a degree " + std::to_string(omega.degree - (int)s) + " cochain on " +
                             steps[s - 1].K.str() + " over Z_" + std::to_string(steps[s - 1].modulus));
    }
    bool normalized = omega.restrict_to(steps[0].K).is_normalized() && (!target || target->is_normalized());
    for (const auto& st : steps)
        if (st.choice && !st.choice->is_normalized()) normalized = false;
    auto full = solve_chain(omega, steps, s, nullptr, normalized);
    if (!full.consistent) {
        for (std::size_t len = 1; len <= s; ++len) {
            auto p = solve_chain(omega, steps, len, nullptr, normalized);
            if (!p.consistent) {
                c.obstructed_step = (int)len - 1;
                break;
            }
            c.images.resize(1);
            for (auto& a : p.images) c.images.push_back(a);
        }
        c.note = "step " + std::to_string(c.obstructed_step + 1) + " has no solution for any earlier choice";
        if (target) c.reaches_target = false;
        return c;
    }
    c.solvable = true;
    for (auto& a : full.images) c.images.push_back(std::move(a));
    if (target) {
        auto pinned = solve_chain(omega, steps, s, &*target, normalized);
        c.reaches_target = pinned.consistent;
        if (pinned.consistent) {
            c.images.resize(1);
            for (auto& a : pinned.images) c.images.push_back(std::move(a));
            c.note = "a chain of choices ends at the target";
        } else {
            c.note = "no chain of choices ends at the target";
        }
    }
    return c;
}

// ---- cohomology counts ----

std::vector<int64_t> u1_cohomology_factors(const std::vector<int64_t>& N, int m) {
    if (m < 1 || m > 4) throw InputError("U(1) table covers degrees 1..4");
    std::vector<int64_t> out;
    std::size_t r = N.size();
    auto g2 = [&](std::size_t i, std::size_t j) { return gcd64(N[i], N[j]); };
    auto g3 = [&](std::size_t i, std::size_t j, std::size_t k) { return gcd64(g2(i, j), N[k]); };
    if (m == 1 || m == 3)
        for (std::size_t i = 0; i < r; ++i) out.push_back(N[i]);
    if (m >= 2)
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = i + 1; j < r; ++j)
                for (int c = 0; c < (m == 4 ? 2 : 1); ++c) out.push_back(g2(i, j));
    if (m >= 3)
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = i + 1; j < r; ++j)
                for (std::size_t k = j + 1; k < r; ++k)
                    for (int c = 0; c < (m == 4 ? 2 : 1); ++c) out.push_back(g3(i, j, k));
    if (m == 4)
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = i + 1; j < r; ++j)
                for (std::size_t k = j + 1; k < r; ++k)
                    for (std::size_t l = k + 1; l < r; ++l) out.push_back(gcd64(g3(i, j, k), N[l]));
    return out;
}

CohomologyCount cohomology_counts(const FiniteAbelianGroup& G, int n, int64_t M) {
    check_modulus(M);
    if (n < 0) throw InputError("degree must be non-negative");
    checked_power(G.size(), n + 1, kGroupTableCap, "cohomology count");
    AbelianSubgroup K = AbelianSubgroup::whole(G);
    Space sp(K, n, true);
    CohomologyCount c;
    c.cocycles = big_pow(M, sp.count) / coboundary_image(K, n, M, true);
    c.coboundaries = n >= 1 ? coboundary_image(K, n - 1, M, true) : BigInt(1);
    c.order = c.cocycles / c.coboundaries;
    std::ostringstream note;
    note << "H^" << n << "(" << G.str() << "; Z_" << M << ") has order " << c.order << " (normalized bar cochains)";
    if (n >= 1 && n <= 4) {
        BigInt pred = 1;
        if (n >= 2)
            for (int64_t f : u1_cohomology_factors(G.orders, n - 1)) pred *= gcd64(f, M);
        for (int64_t f : u1_cohomology_factors(G.orders, n)) pred *= gcd64(f, M);
        c.from_u1_table = pred;
        note << "; Z_M coefficients also see the Bockstein image of H^" << n - 1
             << "(G;U(1)), and the universal coefficient count from the U(1) table is " << pred;
    }
    c.note = note.str();
    return c;
}

// ---- examples and JSON ----

std::vector<BoundaryExample> boundary_examples() {
    std::vector<BoundaryExample> out;
    {
        FiniteAbelianGroup G({2, 2});
        auto W = AbelianSubgroup::whole(G);
        auto K = AbelianSubgroup::generated(G, {{1, 1}});
        out.push_back({"cz-to-s", "(-1)^{a u a'} -> i^{[a]}", GroupCochain::lift_product(W, {0, 1}, 1, 2),
                       {{K, 4}}, GroupCochain::lift_product(K, {0}, 1, 4)});
    }
    {
        FiniteAbelianGroup G({2, 2, 2});  // components a, a', a''
        auto W = AbelianSubgroup::whole(G);
        auto K = AbelianSubgroup::generated(G, {{1, 0, 1}, {0, 1, 1}});
        auto K2 = AbelianSubgroup::generated(G, {{1, 1, 0}});
        auto w = GroupCochain::lift_product(W, {0, 2, 1}, 1, 2);
        out.push_back({"ccz-to-cs", "(-1)^{a u a'' u a'} -> i^{[a] u [a']}", w, {{K, 4}},
                       GroupCochain::lift_product(K, {0, 1}, 1, 4)});
        out.push_back({"ccz-twice", "B^2: (-1)^{a u a'' u a'} -> e^{2 pi i [a] / 8}", w, {{K, 4}, {K2, 8}},
                       GroupCochain::lift_product(K2, {0}, 1, 8)});
    }
    for (int Nc : {3, 4}) {
        FiniteAbelianGroup G(std::vector<int64_t>(Nc, 2));
        auto W = AbelianSubgroup::whole(G);
        // a_1 u a_Nc u ... u a_2
        std::vector<int> comps = {0};
        for (int j = Nc - 1; j >= 1; --j) comps.push_back(j);
        auto w = GroupCochain::lift_product(W, comps, 1, 2);
        std::vector<BoundaryStep> steps;
        int64_t M = 2;
        for (int k = Nc - 1; k >= 1; --k) {
            std::vector<int> face;
            for (int v = 1; v <= k + 1; ++v) face.push_back(v);
            M *= 2;
            steps.push_back({from_z2_label(simplex_label(face, Nc)), M});
        }
        const auto& K12 = steps.back().K;
        std::string n = std::to_string(Nc);
        if (Nc == 4) {
            std::vector<BoundaryStep> hinge(steps.begin(), steps.begin() + 2);
            out.push_back({"simplex4-hinge", "B^2(omega_4) = [a_1] u [a_2] / 4 in units of pi on (123)", w, hinge,
                           GroupCochain::lift_product(hinge.back().K, {0, 1}, 1, 8)});
        }
        out.push_back({"simplex" + n + "-corner",
                       "[a_1] / " + std::to_string(1 << (Nc - 1)) + " in units of pi on (12)", w, steps,
                       GroupCochain::lift_product(K12, {0}, 1, (int64_t)1 << Nc)});
    }
    return out;
}

namespace {

GroupCochain cochain_from_json(const nlohmann::json& j, const AbelianSubgroup& K) {
    auto comps = j.at("comps").get<std::vector<int>>();
    return GroupCochain::lift_product(K, comps, j.value("num", (int64_t)1), j.at("modulus").get<int64_t>());
}

}  // namespace

BoundaryExample boundary_example_from_json(const std::string& text) {
    try {
        auto j = nlohmann::json::parse(text);
        FiniteAbelianGroup G(j.at("group").get<std::vector<int64_t>>());
        BoundaryExample ex;
        ex.name = j.value("name", std::string("custom"));
        ex.anchor = j.value("anchor", std::string());
        ex.omega = cochain_from_json(j.at("omega"), AbelianSubgroup::whole(G));
        for (const auto& s : j.at("steps")) {
            ex.steps.push_back({AbelianSubgroup::generated(G, s.at("generators").get<std::vector<std::vector<int64_t>>>()),
                                s.at("modulus").get<int64_t>()});
        }
        if (j.contains("expected")) {
            const auto& K = ex.steps.empty() ? ex.omega.domain : ex.steps.back().K;
            ex.expected = cochain_from_json(j.at("expected"), K);
        }
        return ex;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("boundary JSON: ") + e.what());
    }
}

std::string boundary_chain_json(const BoundaryChain& c, const std::optional<GroupCochain>& expected) {
    nlohmann::ordered_json j;
    j["solvable"] = c.solvable;
    j["obstructed_step"] = c.obstructed_step < 0 ? nlohmann::ordered_json(nullptr)
                                                 : nlohmann::ordered_json(c.obstructed_step + 1);
    if (c.reaches_target) j["reaches_target"] = *c.reaches_target;
    auto imgs = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < c.images.size(); ++i) {
        const auto& f = c.images[i];
        nlohmann::ordered_json e;
        e["step"] = i;
        e["subgroup"] = f.domain.str();
        e["degree"] = f.degree;
        e["modulus"] = f.modulus;
        std::size_t nz = 0;
        auto entries = nlohmann::ordered_json::array();
        std::size_t idx = 0;
        for_tuples(f.domain.size(), f.degree, 0, [&](const std::vector<std::size_t>& t) {
            int64_t v = f.values[idx++];
            if (!v) return;
            ++nz;
            if (entries.size() >= 256) return;
            auto args = nlohmann::ordered_json::array();
            for (std::size_t x : t) args.push_back(f.domain.element(x));
            entries.push_back({{"args", args}, {"value", v}});
        });
        e["nonzero"] = nz;
        e["entries"] = entries;
        imgs.push_back(e);
    }
    j["images"] = imgs;
    if (expected && c.solvable) j["differs_by_cocycle"] = same_up_to_cocycle(c.result(), *expected);
    j["note"] = c.note;
    return j.dump(2);
}

}  // namespace cohgate
