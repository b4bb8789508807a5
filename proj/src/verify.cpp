#include "cohgate/verify.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "cohgate/errors.hpp"
#include "cohgate/homology.hpp"

namespace cohgate {

namespace {

bool power_of_two(int64_t x) { return x > 0 && (x & (x - 1)) == 0; }

// Saturating count of sum_{k <= d} C(r, k) (N-1)^k.
std::size_t combo_count(std::size_t r, int d, int64_t N, std::size_t cap) {
    long double total = 0, c = 1;
    for (int k = 0; k <= d && (std::size_t)k <= r; ++k) {
        if (k > 0) c = c * (long double)(r - k + 1) / k * (long double)(N - 1);
        total += c;
        if (total > (long double)cap) return cap + 1;
    }
    return (std::size_t)total;
}

std::size_t grid_count(const std::vector<int64_t>& orders, std::size_t cap) {
    long double t = 1;
    for (auto o : orders) {
        t *= (long double)o;
        if (t > (long double)cap) return cap + 1;
    }
    return (std::size_t)t;
}

// Visits every sum_j c_j g_j over the full coefficient grid.
template <class Fn>
bool for_grid(const std::vector<std::vector<int64_t>>& gens, const std::vector<int64_t>& orders, std::size_t len,
              int64_t N, Fn&& fn) {
    std::vector<int64_t> x(len, 0), digit(gens.size(), 0);
    while (true) {
        if (!fn(x)) return false;
        std::size_t j = 0;
        for (; j < gens.size(); ++j) {
            for (std::size_t i = 0; i < len; ++i) x[i] = mod(x[i] + gens[j][i], N);
            if (++digit[j] < orders[j]) break;
            digit[j] = 0;
        }
        if (j == gens.size()) return true;
    }
}

// Visits every combination of at most d generators with nonzero coefficients.
template <class Fn>
bool for_combos(const std::vector<std::vector<int64_t>>& gens, const std::vector<int64_t>& orders, std::size_t len,
                int64_t N, int d, Fn&& fn) {
    std::vector<int64_t> x(len, 0);
    std::function<bool(std::size_t, int)> rec = [&](std::size_t start, int left) -> bool {
        if (!fn(x)) return false;
        if (left == 0) return true;
        for (std::size_t j = start; j < gens.size(); ++j) {
            for (int64_t c = 1; c < orders[j]; ++c) {
                for (std::size_t i = 0; i < len; ++i) x[i] = mod(x[i] + gens[j][i], N);
                if (!rec(j + 1, left - 1)) return false;
            }
            // back to the state before generator j (orders[j] * g_j = 0)
            for (std::size_t i = 0; i < len; ++i) x[i] = mod(x[i] + gens[j][i], N);
        }
        return true;
    };
    return rec(0, d);
}

std::vector<int64_t> random_code_cocycle(const CssCode& code, const LogicalBasis& basis, std::mt19937_64& rng) {
    int64_t N = code.N;
    std::vector<int64_t> z(code.num_qudits, 0);
    for (std::size_t a = 0; a < basis.size(); ++a) {
        int64_t c = (int64_t)(rng() % (uint64_t)N);
        if (c)
            for (std::size_t i = 0; i < z.size(); ++i) z[i] = mod(z[i] + c * basis.reps[a][i], N);
    }
    for (const auto& x : code.x_checks) {
        int64_t c = (int64_t)(rng() % (uint64_t)N);
        if (c)
            for (auto [q, e] : x.terms) z[q] = mod(z[q] + c * e, N);
    }
    return z;
}

int64_t binom_mod(int64_t n, int64_t k, int64_t M) {
    if (k < 0 || k > n) return 0;
    // exact for the small arguments used here
    __int128 r = 1;
    for (int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return mod((int64_t)(r % M), M);
}

}  // namespace

int coordinate_degree(int64_t N, int64_t M, int D, bool delta) {
    if (M <= 1) return 0;
    if (N == 2) {
        if (!power_of_two(M)) return -1;
        int t = std::countr_zero((uint64_t)M);
        if (t == 1) return delta ? std::max(D - 1, 0) : D;
        return D + t - 1;
    }
    if (is_prime(N) && M == N) return delta ? std::max(D - 1, 0) : D;
    return -1;
}

CommutationResult check_stabilizer_commutation(PhaseFunction& F, const CssCode& code, const LogicalBasis& basis,
                                               const VerifyOptions& opt) {
    CommutationResult res;
    int64_t N = code.N, M = F.modulus();
    if (F.num_qudits() != code.num_qudits) throw InputError("phase function and code have different registers");
    if (M == 1) {
        res.method = "constant phase";
        return res;
    }
    const auto& byq = F.units_by_qudit();
    std::vector<std::vector<std::size_t>> x_by_q(code.num_qudits);
    for (std::size_t w = 0; w < code.x_checks.size(); ++w)
        for (auto [q, e] : code.x_checks[w].terms) x_by_q[q].push_back(w);
    int dd = coordinate_degree(N, M, F.degree(), true);
    bool prime = is_prime(N);
    std::vector<int64_t> z(code.num_qudits, 0), zs(code.num_qudits, 0);
    std::map<std::string, std::size_t> methods;

    auto delta_at = [&](const std::vector<std::size_t>& U, const Check& s) {
        for (auto [q, e] : s.terms) zs[q] = mod(z[q] + e, N);
        int64_t d = 0;
        for (std::size_t u : U) d = mod(d + F.unit_value(u, zs) - F.unit_value(u, z), M);
        for (auto [q, e] : s.terms) zs[q] = z[q];
        res.evaluations += 2 * U.size();
        return d;
    };
    auto touching_units = [&](const Check& s) {
        std::vector<std::size_t> U;
        for (auto [q, e] : s.terms) U.insert(U.end(), byq[q].begin(), byq[q].end());
        std::sort(U.begin(), U.end());
        U.erase(std::unique(U.begin(), U.end()), U.end());
        return U;
    };
    auto fail = [&](std::size_t i, const std::vector<std::size_t>& Q, int64_t d) {
        res.status = "fail";
        res.failing_check = i;
        res.failing_label = code.x_checks[i].label;
        res.delta = d;
        res.witness.clear();
        for (std::size_t q : Q)
            if (z[q]) res.witness.emplace_back(q, z[q]);
    };

    for (std::size_t i = 0; i < code.x_checks.size(); ++i) {
        const Check& s = code.x_checks[i];
        auto U = touching_units(s);
        ++res.checks;
        if (U.empty()) continue;
        std::vector<std::size_t> Q;
        for (std::size_t u : U) {
            auto uq = F.unit_qudits(u);
            Q.insert(Q.end(), uq.begin(), uq.end());
        }
        for (auto [q, e] : s.terms) Q.push_back(q);
        std::sort(Q.begin(), Q.end());
        Q.erase(std::unique(Q.begin(), Q.end()), Q.end());
        std::unordered_map<std::size_t, std::size_t> local;
        for (std::size_t j = 0; j < Q.size(); ++j) local[Q[j]] = j;
        // Projections of the cocycle space onto Q.
        std::vector<std::vector<int64_t>> raw;
        for (const auto& r : basis.reps) {
            std::vector<int64_t> v(Q.size());
            bool nz = false;
            for (std::size_t j = 0; j < Q.size(); ++j) nz |= (v[j] = mod(r[Q[j]], N)) != 0;
            if (nz) raw.push_back(std::move(v));
        }
        std::vector<std::size_t> ws;
        for (std::size_t q : Q) ws.insert(ws.end(), x_by_q[q].begin(), x_by_q[q].end());
        std::sort(ws.begin(), ws.end());
        ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
        for (std::size_t w : ws) {
            std::vector<int64_t> v(Q.size(), 0);
            for (auto [q, e] : code.x_checks[w].terms)
                if (auto it = local.find(q); it != local.end()) v[it->second] = mod(v[it->second] + e, N);
            raw.push_back(std::move(v));
        }
        std::vector<std::vector<int64_t>> gens;
        std::vector<int64_t> orders;
        if (prime) {
            ModpEchelon ech(N, Q.size());
            for (auto& v : raw)
                if (ech.add(v)) {
                    gens.push_back(v);
                    orders.push_back(N);
                }
        } else {
            ModuleBasis mb = subgroup_basis(raw, Q.size(), N);
            gens = std::move(mb.gens);
            orders = std::move(mb.orders);
        }
        res.max_local_rank = std::max(res.max_local_rank, gens.size());
        std::size_t cap = opt.grid_cap;
        std::size_t ng = grid_count(orders, cap);
        std::size_t nc = dd >= 0 ? combo_count(gens.size(), dd, N, cap) : cap + 1;
        bool use_grid;
        if (prime) {
            use_grid = ng <= nc;
            if (use_grid && ng > cap) {
                res.status = "budget exceeded";
                res.notes.push_back("local span too large at check " + s.label);
                return res;
            }
        } else {
            use_grid = ng <= cap;
            if (!use_grid) res.exhaustive = false;
        }
        if (res.evaluations + 2 * U.size() * (use_grid ? ng : nc) > opt.budget) {
            res.status = "budget exceeded";
            res.notes.push_back("evaluation budget exhausted at check " + s.label);
            return res;
        }
        ++methods[use_grid ? "local grid" : "degree-bounded"];
        bool ok = true;
        auto visit = [&](const std::vector<int64_t>& x) {
            for (std::size_t j = 0; j < Q.size(); ++j) z[Q[j]] = zs[Q[j]] = x[j];
            int64_t d = delta_at(U, s);
            if (d != 0) {
                fail(i, Q, d);
                ok = false;
            }
            return ok;
        };
        if (use_grid) for_grid(gens, orders, Q.size(), N, visit);
        else for_combos(gens, orders, Q.size(), N, dd >= 0 ? dd : F.degree(), visit);
        if (!ok) return res;
        for (std::size_t q : Q) z[q] = zs[q] = 0;
    }
    // Random cocycles on the whole register.
    std::mt19937_64 rng(opt.seed);
    for (std::size_t t = 0; t < opt.spot_checks && !code.x_checks.empty(); ++t) {
        z = random_code_cocycle(code, basis, rng);
        zs = z;
        std::size_t picks = std::min<std::size_t>(code.x_checks.size(), 32);
        for (std::size_t k = 0; k < picks; ++k) {
            std::size_t i = code.x_checks.size() <= 32 ? k : rng() % code.x_checks.size();
            auto U = touching_units(code.x_checks[i]);
            if (U.empty()) continue;
            int64_t d = delta_at(U, code.x_checks[i]);
            if (d != 0) {
                std::vector<std::size_t> Q;
                for (std::size_t u : U) {
                    auto uq = F.unit_qudits(u);
                    Q.insert(Q.end(), uq.begin(), uq.end());
                }
                std::sort(Q.begin(), Q.end());
                Q.erase(std::unique(Q.begin(), Q.end()), Q.end());
                fail(i, Q, d);
                res.notes.push_back("found by random spot check");
                return res;
            }
        }
        ++res.spot_checks;
    }
    std::ostringstream m;
    for (auto it = methods.begin(); it != methods.end(); ++it)
        m << (it == methods.begin() ? "" : ", ") << it->first << " x" << it->second;
    res.method = m.str();
    if (!res.exhaustive) res.notes.push_back("prime-modulus guarantee only");
    return res;
}

// ---- PhasePolynomial ----

PhasePolynomial PhasePolynomial::from_grid(int64_t N, int64_t M, std::vector<int64_t> orders,
                                           std::vector<int64_t> values, std::vector<std::string> names) {
    PhasePolynomial p;
    p.N = N;
    p.M = M;
    // Forward differences along each axis turn values into binomial-basis coefficients.
    std::size_t stride = 1;
    for (std::size_t a = 0; a < orders.size(); ++a) {
        int64_t o = orders[a];
        std::size_t block = stride * (std::size_t)o;
        for (std::size_t base = 0; base < values.size(); base += block)
            for (std::size_t s = 0; s < stride; ++s)
                for (int64_t l = 1; l < o; ++l)
                    for (int64_t k = o - 1; k >= l; --k) {
                        auto& hi = values[base + s + (std::size_t)k * stride];
                        hi = mod(hi - values[base + s + (std::size_t)(k - 1) * stride], M);
                    }
        stride = block;
    }
    for (std::size_t idx = 0; idx < values.size(); ++idx) {
        if (mod(values[idx], M) == 0) continue;
        auto e = grid_point(idx, orders);
        Term t;
        t.exps.assign(e.begin(), e.end());
        t.num = mod(values[idx], M);
        p.terms.push_back(t);
    }
    std::sort(p.terms.begin(), p.terms.end(), [](const Term& a, const Term& b) {
        int da = std::accumulate(a.exps.begin(), a.exps.end(), 0), db = std::accumulate(b.exps.begin(), b.exps.end(), 0);
        if (da != db) return da < db;
        return a.exps > b.exps;
    });
    p.orders = std::move(orders);
    p.names = std::move(names);
    return p;
}

int64_t PhasePolynomial::eval(const std::vector<int64_t>& m) const {
    int64_t acc = 0;
    for (const auto& t : terms) {
        int64_t v = t.num;
        for (std::size_t i = 0; i < t.exps.size() && v; ++i)
            v = (int64_t)((__int128)v * binom_mod(m[i], t.exps[i], M) % M);
        acc = mod(acc + v, M);
    }
    return acc;
}

bool PhasePolynomial::operator==(const PhasePolynomial& o) const {
    if (N != o.N || M != o.M || orders != o.orders || terms.size() != o.terms.size()) return false;
    for (std::size_t i = 0; i < terms.size(); ++i)
        if (terms[i].exps != o.terms[i].exps || terms[i].num != o.terms[i].num) return false;
    return true;
}

std::string PhasePolynomial::str() const {
    if (terms.empty()) return "0";
    std::ostringstream s;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& t = terms[i];
        s << (i ? " + " : "") << Rational(t.num, M).str();
        for (std::size_t v = 0; v < t.exps.size(); ++v) {
            if (!t.exps[v]) continue;
            std::string nm = v < names.size() ? names[v] : "m" + std::to_string(v);
            if (t.exps[v] == 1) s << "*" << nm;
            else s << "*C(" << nm << "," << t.exps[v] << ")";
        }
    }
    return s.str();
}

std::vector<std::string> PhasePolynomial::named_gates() const {
    std::vector<std::string> out;
    if (N != 2 || !power_of_two(M)) return out;
    for (const auto& t : terms) {
        PhaseGate g;
        std::vector<std::string> args;
        for (std::size_t v = 0; v < t.exps.size(); ++v)
            if (t.exps[v]) {
                g.qudits.push_back(v);
                args.push_back(v < names.size() ? names[v] : "m" + std::to_string(v));
            }
        g.num = t.num;
        g.den = M;
        if (args.empty()) {
            out.push_back("phase(" + Rational(t.num, M).str() + ")");
            continue;
        }
        std::string s = gate_name(g, 2) + "(";
        for (std::size_t k = 0; k < args.size(); ++k) s += (k ? "," : "") + args[k];
        out.push_back(s + ")");
    }
    return out;
}

std::vector<int64_t> grid_point(std::size_t index, const std::vector<int64_t>& orders) {
    std::vector<int64_t> m(orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) {
        m[i] = (int64_t)(index % (std::size_t)orders[i]);
        index /= (std::size_t)orders[i];
    }
    return m;
}

std::vector<std::string> default_variable_names(const CssCode& code, const LogicalBasis& basis) {
    std::vector<std::string> names;
    // Attribute each representative to the copy holding its support.
    std::vector<int> per_copy(code.copies.size(), 0);
    for (const auto& r : basis.reps) {
        int copy = -1;
        for (std::size_t c = 0; c < code.copies.size() && copy < 0; ++c)
            for (std::size_t i = 0; i < code.copies[c].size; ++i)
                if (r[code.copies[c].offset + i]) {
                    copy = (int)c;
                    break;
                }
        if (copy < 0) copy = 0;
        names.push_back("a" + std::to_string(copy + 1) + "[" + std::to_string(per_copy[copy]++) + "]");
    }
    return names;
}

ExtractionResult extract_logical_action(PhaseFunction& F, const CssCode& code, const LogicalBasis& basis,
                                        const std::vector<std::string>& names_in, const VerifyOptions& opt) {
    ExtractionResult res;
    int64_t N = code.N, M = F.modulus();
    auto names = names_in.empty() ? default_variable_names(code, basis) : names_in;
    std::size_t G = grid_count(basis.orders, opt.grid_cap);
    int d = coordinate_degree(N, M, F.degree(), false);
    auto z_of = [&](const std::vector<std::vector<int64_t>>& reps, const std::vector<int64_t>& m) {
        std::vector<int64_t> z(code.num_qudits, 0);
        for (std::size_t a = 0; a < reps.size(); ++a)
            if (m[a])
                for (std::size_t i = 0; i < z.size(); ++i)
                    if (reps[a][i]) z[i] = mod(z[i] + m[a] * reps[a][i], N);
        return z;
    };
    auto run = [&](const std::vector<std::vector<int64_t>>& reps) {
        if (G <= opt.grid_cap) {
            std::vector<int64_t> values(G);
            for (std::size_t idx = 0; idx < G; ++idx) values[idx] = F.total(z_of(reps, grid_point(idx, basis.orders)));
            res.method = "full grid (" + std::to_string(G) + " points)";
            return PhasePolynomial::from_grid(N, M, basis.orders, std::move(values), names);
        }
        if (d < 0) throw InputError("logical grid exceeds the cap and no degree bound applies");
        // Degree-bounded reconstruction: coefficients with total degree <= d.
        std::map<std::vector<int64_t>, int64_t> memo;
        auto val = [&](const std::vector<int64_t>& m) {
            auto it = memo.find(m);
            if (it != memo.end()) return it->second;
            int64_t v = F.total(z_of(reps, m));
            memo[m] = v;
            return v;
        };
        PhasePolynomial p;
        p.N = N;
        p.M = M;
        p.orders = basis.orders;
        p.names = names;
        std::size_t k = basis.orders.size();
        std::vector<int64_t> e(k, 0);
        std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
            if (i == k) {
                // c_e = sum_{j <= e} prod (-1)^{e_i - j_i} C(e_i, j_i) F(j)
                std::vector<int64_t> j(k, 0);
                int64_t acc = 0;
                std::function<void(std::size_t, int64_t)> inner = [&](std::size_t t, int64_t w) {
                    if (t == k) {
                        acc = mod(acc + (int64_t)((__int128)w * val(j) % M), M);
                        return;
                    }
                    for (int64_t x = 0; x <= e[t]; ++x) {
                        j[t] = x;
                        int64_t c = binom_mod(e[t], x, M);
                        if ((e[t] - x) % 2) c = mod(-c, M);
                        inner(t + 1, (int64_t)((__int128)w * c % M));
                    }
                    j[t] = 0;
                };
                inner(0, 1);
                if (acc) {
                    PhasePolynomial::Term t;
                    t.exps.assign(e.begin(), e.end());
                    t.num = acc;
                    p.terms.push_back(t);
                }
                return;
            }
            for (int64_t x = 0; x < basis.orders[i] && x <= left; ++x) {
                e[i] = x;
                rec(i + 1, left - (int)x);
            }
            e[i] = 0;
        };
        rec(0, d);
        std::sort(p.terms.begin(), p.terms.end(), [](const PhasePolynomial::Term& a, const PhasePolynomial::Term& b) {
            int da = std::accumulate(a.exps.begin(), a.exps.end(), 0),
                db = std::accumulate(b.exps.begin(), b.exps.end(), 0);
            if (da != db) return da < db;
            return a.exps > b.exps;
        });
        res.method = "degree-bounded (" + std::to_string(memo.size()) + " points, degree " + std::to_string(d) + ")";
        return p;
    };
    res.poly = run(basis.reps);
    std::string method = res.method;
    std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ull);
    for (int s = 0; s < opt.shifts && !code.x_checks.empty(); ++s) {
        auto reps = basis.reps;
        for (auto& r : reps)
            for (const auto& x : code.x_checks) {
                int64_t c = (int64_t)(rng() % (uint64_t)N);
                if (c)
                    for (auto [q, e] : x.terms) r[q] = mod(r[q] + c * e, N);
            }
        PhasePolynomial p = run(reps);
        ++res.shifts_checked;
        if (!(p == res.poly)) {
            res.representative_independent = false;
            res.notes.push_back("representative dependence: shifted extraction gave " + p.str());
        }
    }
    res.method = method;
    return res;
}

// ---- Brute-force oracle ----

namespace {

struct CosetSpace {
    int64_t N = 2;
    std::size_t n = 0, G = 0;
    std::vector<std::vector<int64_t>> stab;         // all X-stabilizer shifts
    std::vector<std::vector<int64_t>> reps;         // rep(m) per grid index
    std::unordered_map<uint64_t, std::size_t> label;  // basis state -> grid index
};

uint64_t encode(const std::vector<int64_t>& v, int64_t N) {
    uint64_t k = 0;
    for (auto it = v.rbegin(); it != v.rend(); ++it) k = k * (uint64_t)N + (uint64_t)*it;
    return k;
}

CosetSpace build_cosets(const CssCode& code, const LogicalBasis& basis) {
    CosetSpace cs;
    cs.N = code.N;
    cs.n = code.num_qudits;
    long double states = std::pow((long double)code.N, (long double)code.num_qudits);
    if (code.num_qudits > 20 || states > (long double)(1u << 22))
        throw InputError("brute-force oracle is limited to 20 physical qudits");
    std::unordered_set<uint64_t> seen;
    cs.stab.push_back(std::vector<int64_t>(cs.n, 0));
    seen.insert(0);
    for (const auto& x : code.x_checks) {
        std::vector<int64_t> g(cs.n, 0);
        for (auto [q, e] : x.terms) g[q] = mod(e, cs.N);
        std::size_t cur = cs.stab.size();
        for (std::size_t i = 0; i < cur; ++i) {
            auto v = cs.stab[i];
            for (int64_t k = 1; k < cs.N; ++k) {
                for (std::size_t t = 0; t < cs.n; ++t) v[t] = mod(v[t] + g[t], cs.N);
                if (seen.insert(encode(v, cs.N)).second) cs.stab.push_back(v);
            }
        }
    }
    cs.G = grid_count(basis.orders, std::size_t(1) << 22);
    for (std::size_t idx = 0; idx < cs.G; ++idx) {
        auto m = grid_point(idx, basis.orders);
        std::vector<int64_t> r(cs.n, 0);
        for (std::size_t a = 0; a < basis.size(); ++a)
            for (std::size_t i = 0; i < cs.n; ++i) r[i] = mod(r[i] + m[a] * basis.reps[a][i], cs.N);
        for (const auto& s : cs.stab) {
            std::vector<int64_t> z(cs.n);
            for (std::size_t i = 0; i < cs.n; ++i) z[i] = mod(r[i] + s[i], cs.N);
            cs.label[encode(z, cs.N)] = idx;
        }
        cs.reps.push_back(std::move(r));
    }
    return cs;
}

}  // namespace

OracleResult brute_force_oracle(PhaseFunction& F, const CssCode& code, const LogicalBasis& basis) {
    CosetSpace cs = build_cosets(code, basis);
    OracleResult out;
    out.dim = cs.G;
    out.M = F.modulus();
    std::vector<int64_t> z(cs.n);
    for (std::size_t idx = 0; idx < cs.G; ++idx) {
        std::optional<int64_t> phase;
        for (const auto& s : cs.stab) {
            for (std::size_t i = 0; i < cs.n; ++i) z[i] = mod(cs.reps[idx][i] + s[i], cs.N);
            int64_t v = F.total(z);
            if (!phase) phase = v;
            else if (*phase != v) {
                out.logical = false;
                out.note = "phase varies across the coset of logical state " + std::to_string(idx);
                return out;
            }
        }
        out.diag.push_back(*phase);
    }
    return out;
}

OracleResult brute_force_oracle(const CliffordMap& U, const CssCode& code, const LogicalBasis& basis) {
    if (U.num_qudits != code.num_qudits || U.N != code.N) throw InputError("map and code have different registers");
    CosetSpace cs = build_cosets(code, basis);
    OracleResult out;
    out.dim = cs.G;
    std::vector<int64_t> z(cs.n);
    for (std::size_t idx = 0; idx < cs.G; ++idx) {
        std::optional<std::size_t> target;
        for (const auto& s : cs.stab) {
            for (std::size_t i = 0; i < cs.n; ++i) z[i] = mod(cs.reps[idx][i] + s[i], cs.N);
            auto it = cs.label.find(encode(U.apply(z), cs.N));
            if (it == cs.label.end()) {
                out.logical = false;
                out.note = "map leaves the code space";
                return out;
            }
            if (!target) target = it->second;
            else if (*target != it->second) {
                out.logical = false;
                out.note = "coset split by the map";
                return out;
            }
        }
        out.perm.push_back(*target);
    }
    return out;
}

// ---- Simplex actions ----

namespace {

struct ActionTerm {
    int sign;  // coefficient of pi i
    std::vector<int> simplex;
    Rational coeff;
    ExprPtr expr;
    std::string label;
};

std::vector<ActionTerm> simplex_action_terms(int Nc) {
    auto a = [](int i) { return Expr::constant("a" + std::to_string(i)); };
    auto cup = [](std::vector<ExprPtr> v) { return Expr::cup(std::move(v)); };
    auto c1 = [](ExprPtr x, ExprPtr y) { return Expr::cup_i(1, std::move(x), std::move(y)); };
    switch (Nc) {
        case 2:
            return {{1, {0, 1, 2}, Rational(1), cup({a(1), a(2)}), "bulk"},
                    {-1, {1, 2}, Rational(1, 2), a(1), "boundary"}};
        case 3:
            return {{1, {0, 1, 2, 3}, Rational(1), cup({a(1), a(3), a(2)}), "bulk"},
                    {-1, {1, 2, 3}, Rational(1, 2), cup({a(1), a(2)}), "boundary"},
                    {1, {1, 2}, Rational(1, 4), a(1), "hinge"}};
        case 4:
            return {{1, {0, 1, 2, 3, 4}, Rational(1), cup({a(1), a(4), a(3), a(2)}), "bulk"},
                    {-1, {1, 2, 3, 4}, Rational(1, 2), cup({a(1), a(3), a(2)}), "boundary"},
                    {-1, {1, 2, 3, 4}, Rational(1), cup({a(1), c1(a(2), a(3)), a(2)}), "boundary"},
                    {-1, {1, 2, 3}, Rational(1, 4), cup({a(1), a(2)}), "hinge"},
                    {1, {1, 2}, Rational(1, 8), a(1), "corner"}};
        case 5:
            return {{1, {0, 1, 2, 3, 4, 5}, Rational(1), cup({a(1), a(5), a(4), a(3), a(2)}), "bulk"},
                    {-1, {1, 2, 3, 4, 5}, Rational(1, 2), cup({a(1), a(4), a(3), a(2)}), "boundary"},
                    {-1, {1, 2, 3, 4, 5}, Rational(1), cup({a(1), c1(a(3), a(4)), a(3), a(2)}), "boundary"},
                    {-1, {1, 2, 3, 4, 5}, Rational(1), cup({a(1), c1(a(2), a(4)), a(3), a(2)}), "boundary"},
                    {-1, {1, 2, 3, 4, 5}, Rational(1), cup({a(1), a(4), c1(a(2), a(3)), a(2)}), "boundary"},
                    {1, {1, 2, 3, 4}, Rational(1, 4), cup({a(1), a(3), a(2)}), "codim 2"},
                    {1, {1, 2, 3, 4}, Rational(-1, 2), cup({a(1), c1(a(2), a(3)), a(2)}), "codim 2"},
                    {1, {1, 2, 3}, Rational(1, 8), cup({a(1), a(2)}), "codim 3"},
                    {-1, {1, 2}, Rational(1, 16), a(1), "codim 4"}};
        default: throw InputError("simplex gate action needs 2 <= N <= 5");
    }
}

}  // namespace

SimplexAction simplex_gate_action(int Nc) {
    auto terms = simplex_action_terms(Nc);
    BoundaryCode bc = simplex_code(Nc);
    SimplexAction out;
    out.Nc = Nc;
    std::size_t E = bc.geometry.edges.size();
    auto phase_of = [&](const std::vector<int64_t>& state, bool record) {
        std::map<std::string, Cochain> consts;
        for (int i = 1; i <= Nc; ++i) {
            std::vector<int64_t> v(state.begin() + (long)((i - 1) * E), state.begin() + (long)(i * E));
            consts["a" + std::to_string(i)] = Cochain::from_values(bc.simplex, 1, 0, v);
        }
        Rational total(0);
        for (const auto& t : terms) {
            Cochain val = apply_expression(t.expr, consts, 0);
            int64_t id = bc.simplex->simplex_index(t.simplex);
            Rational c = Rational(t.sign, 2) * t.coeff * Rational(val.values.at(id));
            if (record) {
                std::string s = "(";
                for (int v : t.simplex) s += std::to_string(v);
                out.contributions.emplace_back(t.label + " " + s + ")", c);
            }
            total = (total + c).frac();
        }
        return total;
    };
    out.phase_zero = phase_of(std::vector<int64_t>(bc.code.num_qudits, 0), false);
    out.phase_one = phase_of(bc.one_state, true);
    Rational rel = (out.phase_one - out.phase_zero).frac();
    PhaseGate g;
    g.qudits = {0};
    g.num = rel.num;
    g.den = rel.den;
    out.gate = gate_name(g, 2);
    return out;
}

Rational cube_logical_phase(const BoundaryCode& bc, const DiagonalCircuit& c) {
    return (c.phase(bc.one_state) - c.phase(std::vector<int64_t>(bc.code.num_qudits, 0))).frac();
}

// ---- Pontryagin property suite ----

bool SuiteReport::all_pass() const {
    for (const auto& [k, v] : checks)
        if (v.first != v.second) return false;
    return !checks.empty();
}

namespace {

bool is_circle(const CellComplex& C) { return C.dim == 1 && C.factors.empty() && C.kind == ComplexKind::Simplicial; }

bool is_circle_product(const CellComplex& C) {
    if (is_circle(C)) return true;
    if (C.factors.size() != 2) return false;
    return is_circle(*C.factors[1]) && is_circle_product(*C.factors[0]);
}

// Products y_{i1} u ... u y_{ik} of integer torus generators over all k-subsets.
std::vector<Cochain> torus_monomials(const ComplexPtr& T, int k) {
    std::vector<Cochain> y;
    for (int i = 0; i < T->dim; ++i) y.push_back(torus_generator(T, i, 0));
    std::vector<Cochain> out;
    for (uint32_t m = 0; m < (1u << T->dim); ++m) {
        if (std::popcount(m) != k) continue;
        std::optional<Cochain> acc;
        for (int i = 0; i < T->dim; ++i)
            if (m >> i & 1) acc = acc ? cup(*acc, y[i]) : y[i];
        if (!acc) {
            Cochain one = Cochain::zero(T, 0, 0);
            for (auto& v : one.values) v = 1;
            acc = one;
        }
        out.push_back(*acc);
    }
    return out;
}

}  // namespace

SuiteReport pontryagin_property_suite(const ComplexPtr& C, int64_t N, int n, int trials, uint64_t seed, int degree) {
    if (n < 1 || N < 2 || N % n != 0) throw InputError("Pontryagin suite needs n dividing N");
    if (degree < 2 || degree % 2) throw InputError("Pontryagin suite needs an even degree");
    if (C->kind != ComplexKind::Simplicial) throw InputError("Pontryagin suite needs a simplicial complex");
    int top = n * degree;
    if (top > C->dim) throw InputError("P(a;n) exceeds the complex dimension");
    int64_t M = n * N;
    SuiteReport rep;
    rep.N = N;
    rep.n = n;
    rep.degree = degree;
    bool torus = is_circle_product(*C);
    std::mt19937_64 rng(seed);
    std::optional<CohomologyBasis> basis;
    std::vector<Cochain> mono;
    if (torus) mono = torus_monomials(C, degree);
    else basis = cohomology_basis(C, degree, N);
    // Complementary test cocycles (integer lifts reduced mod M).
    std::vector<Cochain> comp;
    int cdeg = C->dim - top;
    if (torus || cdeg == 0) {
        for (auto& c : torus ? torus_monomials(C, cdeg) : std::vector<Cochain>{}) comp.push_back(c.reduce(M));
        if (!torus) {
            Cochain one = Cochain::zero(C, 0, M);
            for (auto& v : one.values) v = 1;
            comp.push_back(one);
        }
    } else {
        comp = cohomology_basis(C, cdeg, M).reps;
    }
    rep.notes.push_back(std::to_string(comp.size()) + " complementary cocycles of degree " + std::to_string(cdeg));
    auto pairings = [&](const Cochain& P) {
        std::vector<int64_t> out;
        for (const auto& c : comp) out.push_back(cdeg == 0 ? mod(integrate(cup(P, c)), M) : integrate(cup(P, c)));
        return out;
    };
    // Random cocycle; for tori also a closed integer lift.
    auto draw = [&](std::optional<Cochain>& closed) {
        if (torus) {
            Cochain L = Cochain::zero(C, degree, 0);
            for (const auto& m : mono) L = L + m * (int64_t)(rng() % (uint64_t)N);
            Cochain chi = Cochain::random(C, degree - 1, N, rng);
            chi.modulus = 0;
            L = L + coboundary(chi);
            closed = L;
            return L.reduce(N);
        }
        Cochain a = Cochain::zero(C, degree, N);
        for (const auto& r : basis->reps) a = a + r * (int64_t)(rng() % (uint64_t)N);
        return a + coboundary(Cochain::random(C, degree - 1, N, rng));
    };
    auto tally = [&](const std::string& k, bool ok) {
        auto& e = rep.checks[k];
        e.second += 1;
        e.first += ok ? 1 : 0;
    };
    for (int t = 0; t < trials; ++t) {
        std::optional<Cochain> closed, closed_b;
        Cochain a = draw(closed);
        Cochain b = draw(closed_b);
        Cochain Pa = pontryagin_power(a, n);
        tally("closed mod nN", coboundary(Pa).is_zero());
        auto base = pairings(Pa);
        Cochain x = Cochain::random(C, degree, 0, rng);
        std::vector<int64_t> lift(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) lift[i] = a.values[i] + N * x.values[i];
        tally("lift independence", pairings(pontryagin_power(a.with_lift(lift, N), n)) == base);
        Cochain g = a + coboundary(Cochain::random(C, degree - 1, N, rng));
        tally("gauge invariance", pairings(pontryagin_power(g, n)) == base);
        // N (P(a+b) - P(a) - P(b)) = sum_k N C(n,k) a^k b^(n-k) mod nN.
        auto Pab = pairings(pontryagin_power(a + b, n));
        auto Pb = pairings(pontryagin_power(b, n));
        Cochain ai = a.integer(), bi = b.integer();
        std::vector<int64_t> rhs(comp.size(), 0);
        for (int k = 1; k < n; ++k) {
            std::optional<Cochain> prod;
            for (int s = 0; s < k; ++s) prod = prod ? cup(*prod, ai) : ai;
            for (int s = 0; s < n - k; ++s) prod = cup(*prod, bi);
            auto pk = pairings(prod->reduce(M));
            int64_t w = mod(N * binom_mod(n, k, M), M);
            for (std::size_t c = 0; c < comp.size(); ++c) rhs[c] = mod(rhs[c] + w * pk[c], M);
        }
        bool ok = true;
        for (std::size_t c = 0; c < comp.size(); ++c) ok &= mod(N * (Pab[c] - base[c] - Pb[c]), M) == rhs[c];
        tally("refinement", ok);
        if (closed) {
            Cochain Lc = a.with_lift(closed->values, N);
            Cochain pw = *closed;
            for (int s = 1; s < n; ++s) pw = cup(pw, *closed);
            tally("closed lift gives cup power", pontryagin_power(Lc, n).values == pw.reduce(M).values);
        }
    }
    return rep;
}

// ---- Steenrod suites ----

namespace {

Cochain random_class_cocycle(const ComplexPtr& C, const CohomologyBasis& B, std::mt19937_64& rng) {
    Cochain a = Cochain::zero(C, B.degree, B.N);
    for (const auto& r : B.reps) a = a + r * (int64_t)(rng() % (uint64_t)B.N);
    if (B.degree > 0) a = a + coboundary(Cochain::random(C, B.degree - 1, B.N, rng));
    return a;
}

void tally(SuiteReport& rep, const std::string& name, bool ok) {
    auto& c = rep.checks[name];
    c.second += 1;
    if (ok) c.first += 1;
}

}  // namespace

SuiteReport steenrod_property_suite(const ComplexPtr& C, int trials, uint64_t seed) {
    if (C->kind != ComplexKind::Simplicial) throw InputError("Steenrod suite needs a simplicial complex");
    if (trials < 1) throw InputError("trials must be positive");
    SuiteReport rep;
    rep.N = 2;
    rep.n = 1;
    std::mt19937_64 rng(seed);
    for (int p = 1; p < C->dim; ++p) {
        auto B = cohomology_basis(C, p, 2);
        for (int t = 0; t < trials; ++t) {
            Cochain f = random_class_cocycle(C, B, rng);
            tally(rep, "Sq0 is the identity", steenrod_sq(0, f).values == f.values);
            tally(rep, "Sq^p is the cup square", steenrod_sq(p, f).values == cup(f, f).values);
            tally(rep, "Sq^i vanishes above the degree", steenrod_sq(p + 1, f).is_zero());
            Cochain d = coboundary(f.integer());
            bool even = true;
            for (auto& v : d.values) {
                if (mod(v, 2)) even = false;
                v = mod(v / 2, 2);
            }
            tally(rep, "Sq1 is d/2 of the lift", even && steenrod_sq(1, f).values == d.values);
        }
    }
    rep.notes.push_back(std::to_string(trials) + " random cocycles per degree on " + C->name);
    return rep;
}

SuiteReport cartan_integral_suite(const ComplexPtr& C, int trials, uint64_t seed) {
    if (C->kind != ComplexKind::Simplicial) throw InputError("Cartan suite needs a simplicial complex");
    SuiteReport rep;
    rep.N = 2;
    std::mt19937_64 rng(seed);
    int d = C->dim;
    for (int p = 1; p < d; ++p)
        for (int q = 1; p + q <= d; ++q) {
            int i = d - p - q;
            if (i > std::min(p + q, d)) continue;
            auto Bp = cohomology_basis(C, p, 2), Bq = cohomology_basis(C, q, 2);
            for (int t = 0; t < trials; ++t) {
                Cochain f = random_class_cocycle(C, Bp, rng), g = random_class_cocycle(C, Bq, rng);
                int64_t lhs = integrate(steenrod_sq(i, cup(f, g)));
                int64_t rhs = 0;
                for (int m = 0; m <= i; ++m) rhs += integrate(cup(steenrod_sq(m, f), steenrod_sq(i - m, g)));
                tally(rep, "Cartan p=" + std::to_string(p) + " q=" + std::to_string(q), lhs == mod(rhs, 2));
            }
        }
    rep.notes.push_back("integral Cartan identity on " + C->name);
    return rep;
}

std::string suite_report_json(const SuiteReport& r) {
    nlohmann::ordered_json j;
    j["N"] = r.N;
    j["n"] = r.n;
    j["degree"] = r.degree;
    auto checks = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.checks) checks[k] = {{"passed", v.first}, {"run", v.second}};
    j["checks"] = checks;
    j["all_pass"] = r.all_pass();
    j["notes"] = r.notes;
    return j.dump(1);
}

std::string verification_report_json(const CommutationResult& c, const std::optional<ExtractionResult>& e,
                                     const std::optional<OracleResult>& o) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json cj;
    cj["status"] = c.status;
    cj["exhaustive"] = c.exhaustive;
    cj["method"] = c.method;
    cj["checks"] = c.checks;
    cj["evaluations"] = c.evaluations;
    cj["spot_checks"] = c.spot_checks;
    if (c.failing_check) {
        cj["failing_check"] = c.failing_label;
        cj["delta"] = c.delta;
        auto w = nlohmann::ordered_json::array();
        for (auto [q, v] : c.witness) w.push_back({q, v});
        cj["witness"] = w;
    }
    cj["notes"] = c.notes;
    j["commutation"] = cj;
    if (e) {
        nlohmann::ordered_json ej;
        ej["modulus"] = e->poly.M;
        ej["polynomial"] = e->poly.str();
        auto terms = nlohmann::ordered_json::array();
        for (const auto& t : e->poly.terms) terms.push_back({{"exps", t.exps}, {"num", t.num}});
        ej["terms"] = terms;
        ej["named_gates"] = e->poly.named_gates();
        ej["method"] = e->method;
        ej["representative_independent"] = e->representative_independent;
        ej["notes"] = e->notes;
        j["logical"] = ej;
    }
    if (o) {
        bool agree = o->logical;
        if (e && o->logical && !o->diag.empty()) {
            for (std::size_t idx = 0; idx < o->diag.size(); ++idx)
                agree &= o->diag[idx] == e->poly.eval(grid_point(idx, e->poly.orders));
        }
        j["oracle"] = agree ? "agree" : "disagree";
    } else {
        j["oracle"] = "absent";
    }
    return j.dump(1);
}

}  // namespace cohgate
