#include "cohgate/ringeval.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "cohgate/errors.hpp"
#include "cohgate/linalg.hpp"

namespace cohgate {

// ---- ring arithmetic ----

int CohomologyRing::index(const std::string& g) const {
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (gens[i].name == g) return (int)i;
    throw InputError("ring " + name + " has no generator " + g);
}

int CohomologyRing::degree(const Monomial& m) const {
    int d = 0;
    for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * gens[i].degree;
    return d;
}

RingElement CohomologyRing::one() const {
    RingElement r;
    r.terms[Monomial(gens.size(), 0)] = 1;
    return r;
}

RingElement CohomologyRing::gen(int i) const {
    Monomial m(gens.size(), 0);
    m[i] = 1;
    return normalize(m, 1);
}

RingElement CohomologyRing::normalize(Monomial m, int64_t c) const {
    RingElement r;
    if (c == 0) return r;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (gens[i].exterior && m[i] > 1) return r;
    for (const auto& rel : relations) {
        bool divides = true;
        for (std::size_t i = 0; i < m.size() && divides; ++i) divides = m[i] >= rel[i];
        if (divides) return r;
    }
    r.terms[m] = c;
    return r;
}

RingElement CohomologyRing::add(const RingElement& a, const RingElement& b, int64_t scale) const {
    RingElement r = a;
    for (const auto& [m, c] : b.terms) {
        int64_t& x = r.terms[m];
        x += scale * c;
        if (x == 0) r.terms.erase(m);
    }
    return r;
}

RingElement CohomologyRing::mul(const RingElement& a, const RingElement& b) const {
    RingElement r;
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) {
            // Moving b's generators left past a's later odd generators.
            int parity = 0;
            int later = 0;
            for (int i = (int)gens.size() - 1; i >= 0; --i) {
                if (gens[i].degree % 2) parity ^= (mb[i] % 2) & (later % 2);
                if (gens[i].degree % 2) later += ma[i];
            }
            Monomial m(gens.size());
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            r = add(r, normalize(m, parity ? -ca * cb : ca * cb));
        }
    return r;
}

RingElement CohomologyRing::pow(const RingElement& a, int n) const {
    RingElement r = one();
    for (int i = 0; i < n; ++i) r = mul(r, a);
    return r;
}

RingElement CohomologyRing::reduce(const RingElement& a, int64_t M) const {
    RingElement r;
    for (const auto& [m, c] : a.terms)
        if (int64_t x = mod(c, M)) r.terms[m] = x;
    return r;
}

namespace {

// Generator sequence of a monomial, in order.
std::vector<int> factors_of(const Monomial& m) {
    std::vector<int> f;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (int e = 0; e < m[i]; ++e) f.push_back((int)i);
    return f;
}

}  // namespace

RingElement CohomologyRing::d(const RingElement& a) const {
    RingElement out;
    for (const auto& [m, c] : a.terms) {
        auto f = factors_of(m);
        for (std::size_t k = 0; k < f.size(); ++k) {
            const auto& g = gens[f[k]];
            if (g.closed) continue;
            RingElement dg = parse(g.d_lift);
            RingElement prefix = one(), suffix = one();
            int pre_deg = 0;
            for (std::size_t j = 0; j < k; ++j) {
                prefix = mul(prefix, gen(f[j]));
                pre_deg += gens[f[j]].degree;
            }
            for (std::size_t j = k + 1; j < f.size(); ++j) suffix = mul(suffix, gen(f[j]));
            RingElement t = mul(mul(prefix, dg), suffix);
            out = add(out, t, (pre_deg % 2 ? -1 : 1) * c);
        }
    }
    return out;
}

RingElement CohomologyRing::sq(int i, const RingElement& a) const {
    std::function<RingElement(int, int)> sq_gen = [&](int i, int g) -> RingElement {
        const auto& G = gens[g];
        if (i == 0) return gen(g);
        if (i > G.degree) return {};
        if (i == G.degree) return mul(gen(g), gen(g));
        if (i == 1 && !G.sq1.empty()) return parse(G.sq1);
        throw InputError("no Sq^" + std::to_string(i) + " rule for generator " + G.name);
    };
    RingElement out;
    for (const auto& [m, c] : a.terms) {
        if (mod(c, 2) == 0) continue;
        auto f = factors_of(m);
        // Cartan over the factor sequence: distribute i over the factors.
        std::function<RingElement(std::size_t, int)> rec = [&](std::size_t k, int left) -> RingElement {
            if (k == f.size()) return left == 0 ? one() : RingElement{};
            RingElement acc;
            for (int j = 0; j <= std::min(left, gens[f[k]].degree); ++j) {
                RingElement head = sq_gen(j, f[k]);
                if (head.is_zero()) continue;
                acc = add(acc, mul(head, rec(k + 1, left - j)));
            }
            return acc;
        };
        out = add(out, rec(0, i));
    }
    return reduce(out, 2);
}

int64_t CohomologyRing::integrate(const RingElement& a) const {
    auto it = a.terms.find(top);
    return it == a.terms.end() ? 0 : it->second;
}

std::string CohomologyRing::monomial_str(const Monomial& m) const {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!m[i]) continue;
        if (!s.empty()) s += " ";
        s += gens[i].name;
        if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
}

std::string CohomologyRing::str(const RingElement& a) const {
    if (a.is_zero()) return "0";
    std::string s;
    for (const auto& [m, c] : a.terms) {
        std::string ms = monomial_str(m);
        if (!s.empty()) s += c < 0 ? " - " : " + ";
        else if (c < 0) s += "-";
        int64_t ac = c < 0 ? -c : c;
        if (ms == "1") s += std::to_string(ac);
        else s += (ac == 1 ? "" : std::to_string(ac) + "*") + ms;
    }
    return s;
}

RingElement CohomologyRing::parse(const std::string& text) const {
    RingElement out;
    std::size_t p = 0;
    auto skip = [&] {
        while (p < text.size() && std::isspace((unsigned char)text[p])) ++p;
    };
    auto fail = [&](const std::string& what) {
        throw InputError("ring element \"" + text + "\" at " + std::to_string(p) + ": " + what);
    };
    skip();
    if (p == text.size()) return out;
    int sign = 1;
    if (text[p] == '-' || text[p] == '+') sign = text[p++] == '-' ? -1 : 1;
    while (true) {
        skip();
        RingElement term = one();
        bool any = false;
        if (p < text.size() && std::isdigit((unsigned char)text[p])) {
            std::size_t q = p;
            while (q < text.size() && std::isdigit((unsigned char)text[q])) ++q;
            int64_t c = std::stoll(text.substr(p, q - p));
            term = add(RingElement{}, term, c);
            p = q;
            any = true;
            skip();
            if (p < text.size() && text[p] == '*') ++p;
        }
        while (true) {
            skip();
            if (p >= text.size() || !(std::isalpha((unsigned char)text[p]) || text[p] == '_')) break;
            std::size_t q = p;
            while (q < text.size() && (std::isalnum((unsigned char)text[q]) || text[q] == '_' || text[q] == '\''))
                ++q;
            int g = index(text.substr(p, q - p));
            p = q;
            int e = 1;
            if (p < text.size() && text[p] == '^') {
                ++p;
                std::size_t r = p;
                while (r < text.size() && std::isdigit((unsigned char)text[r])) ++r;
                if (r == p) fail("exponent expected");
                e = std::stoi(text.substr(p, r - p));
                p = r;
            }
            term = mul(term, pow(gen(g), e));
            any = true;
            skip();
            if (p < text.size() && text[p] == '*') ++p;
        }
        if (!any) fail("term expected");
        out = add(out, term, sign);
        skip();
        if (p == text.size()) break;
        if (text[p] == '+') sign = 1;
        else if (text[p] == '-') sign = -1;
        else fail("unexpected character");
        ++p;
    }
    return out;
}

// ---- presets ----

CohomologyRing cp_ring(int n, const std::string& g) {
    CohomologyRing R;
    R.name = "CP" + std::to_string(n);
    R.gens.push_back({g, 2, 0, true, "", "0", false});
    R.relations.push_back({n + 1});
    R.top = {n};
    return R;
}

CohomologyRing rp_ring(int n, const std::string& g) {
    CohomologyRing R;
    R.name = "RP" + std::to_string(n);
    R.gens.push_back({g, 1, 2, false, "2*" + g + "^2", "", false});
    R.relations.push_back({n + 1});
    R.top = {n};
    return R;
}

CohomologyRing torus_ring(int k, const std::string& prefix) {
    CohomologyRing R;
    R.name = "T" + std::to_string(k);
    for (int i = 1; i <= k; ++i) R.gens.push_back({prefix + std::to_string(i), 1, 0, true, "", "", true});
    R.top.assign(k, 1);
    return R;
}

CohomologyRing ring_product(const std::vector<CohomologyRing>& factors, const std::string& name) {
    CohomologyRing R;
    std::size_t total = 0;
    for (const auto& f : factors) total += f.gens.size();
    std::size_t off = 0;
    for (const auto& f : factors) {
        for (auto g : f.gens) {
            for (const auto& h : R.gens)
                if (h.name == g.name) throw InputError("ring product: duplicate generator " + g.name);
            R.gens.push_back(g);
        }
        for (const auto& rel : f.relations) {
            Monomial m(total, 0);
            std::copy(rel.begin(), rel.end(), m.begin() + (long)off);
            R.relations.push_back(m);
        }
        off += f.gens.size();
    }
    R.top.assign(total, 0);
    off = 0;
    for (const auto& f : factors) {
        std::copy(f.top.begin(), f.top.end(), R.top.begin() + (long)off);
        off += f.gens.size();
    }
    if (!name.empty()) R.name = name;
    else
        for (std::size_t i = 0; i < factors.size(); ++i) R.name += (i ? "x" : "") + factors[i].name;
    return R;
}

namespace {

Monomial parse_monomial(const CohomologyRing& R, const std::string& s) {
    RingElement e = R.parse(s);
    if (e.terms.size() != 1 || e.terms.begin()->second == 0) throw InputError("expected a monomial: " + s);
    return e.terms.begin()->first;
}

Monomial parse_raw_monomial(const CohomologyRing& R, const std::string& s) {
    // Relations must not be normalized against themselves.
    Monomial m(R.gens.size(), 0);
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) {
        auto caret = tok.find('^');
        std::string g = tok.substr(0, caret);
        int e = caret == std::string::npos ? 1 : std::stoi(tok.substr(caret + 1));
        m[R.index(g)] += e;
    }
    return m;
}

}  // namespace

CohomologyRing ring_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("ring JSON: ") + e.what());
    }
    CohomologyRing R;
    R.name = j.value("name", "ring");
    for (const auto& g : j.at("generators")) {
        RingGenerator G;
        G.name = g.at("name").get<std::string>();
        G.degree = g.at("degree").get<int>();
        G.modulus = g.value("modulus", (int64_t)0);
        std::string lift = g.value("lift", "closed");
        if (lift != "closed") {
            G.closed = false;
            G.d_lift = lift.rfind("d=", 0) == 0 ? lift.substr(2) : lift;
        }
        G.sq1 = g.value("sq1", "");
        G.exterior = g.value("exterior", G.degree % 2 == 1 && G.modulus == 0);
        R.gens.push_back(G);
    }
    for (const auto& r : j.value("relations", nlohmann::json::array()))
        R.relations.push_back(parse_raw_monomial(R, r.get<std::string>()));
    R.top = parse_monomial(R, j.at("top").get<std::string>());
    return R;
}

std::string ring_to_json(const CohomologyRing& R) {
    nlohmann::ordered_json j;
    j["name"] = R.name;
    auto gens = nlohmann::ordered_json::array();
    for (const auto& g : R.gens) {
        nlohmann::ordered_json o;
        o["name"] = g.name;
        o["degree"] = g.degree;
        o["modulus"] = g.modulus;
        o["lift"] = g.closed ? "closed" : "d=" + g.d_lift;
        o["sq1"] = g.sq1;
        o["exterior"] = g.exterior;
        gens.push_back(o);
    }
    j["generators"] = gens;
    auto rels = nlohmann::ordered_json::array();
    for (const auto& r : R.relations) rels.push_back(R.monomial_str(r));
    j["relations"] = rels;
    j["top"] = R.monomial_str(R.top);
    return j.dump(1);
}

// ---- connections ----

int FlatConnection::var(const std::string& name, int64_t order) {
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name) {
            if (orders[i] != order) throw InputError("variable " + name + " used with two orders");
            return (int)i;
        }
    vars.push_back(name);
    orders.push_back(order);
    return (int)vars.size() - 1;
}

void FlatConnection::set_field(int copy, const std::vector<std::pair<std::string, std::string>>& terms,
                               const CohomologyRing& R, int64_t order) {
    if ((int)fields.size() <= copy) {
        fields.resize(copy + 1);
        field_degree.resize(copy + 1, -1);
    }
    for (const auto& [v, el] : terms) {
        RingElement e = R.parse(el);
        for (const auto& [m, c] : e.terms) {
            int deg = R.degree(m);
            if (field_degree[copy] >= 0 && field_degree[copy] != deg)
                throw InputError("field a" + std::to_string(copy + 1) + " is not degree homogeneous");
            field_degree[copy] = deg;
        }
        fields[copy].emplace_back(var(v, order), e);
    }
}

FlatConnection connection_from_json(const std::string& text, const CohomologyRing& R) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("connection JSON: ") + e.what());
    }
    FlatConnection c;
    for (const auto& f : j.at("fields")) {
        std::vector<std::pair<std::string, std::string>> terms;
        for (const auto& t : f.at("terms")) terms.emplace_back(t.at("var"), t.at("element"));
        c.set_field(f.at("copy").get<int>() - 1, terms, R, f.value("order", (int64_t)2));
    }
    return c;
}

// ---- evaluation ----

namespace {

struct RingEvaluator {
    const CohomologyRing& R;
    const FlatConnection& conn;
    const std::map<std::string, RingElement>& consts;
    std::vector<int64_t> point;
    bool torsion_only_mod2 = false;

    RingElement eval(const Expr& e) {
        switch (e.op) {
            case Expr::Op::Field: {
                if (e.copy >= (int)conn.fields.size() || conn.fields[e.copy].empty())
                    throw InputError("connection has no field a" + std::to_string(e.copy + 1));
                RingElement r;
                for (const auto& [v, el] : conn.fields[e.copy]) r = R.add(r, el, mod(point[v], conn.orders[v]));
                return r;
            }
            case Expr::Op::Const: {
                auto it = consts.find(e.name);
                if (it == consts.end()) throw InputError("unknown ring constant " + e.name);
                return it->second;
            }
            case Expr::Op::Cup: {
                RingElement r = R.one();
                for (const auto& a : e.args) r = R.mul(r, eval(*a));
                return r;
            }
            case Expr::Op::Lin: {
                RingElement r;
                for (std::size_t i = 0; i < e.args.size(); ++i) r = R.add(r, eval(*e.args[i]), e.coeffs[i]);
                return r;
            }
            case Expr::Op::Pont: {
                RingElement x = eval(*e.args[0]);
                if (!R.d(x).is_zero())
                    throw InputError("PONT in ring mode needs a closed integral lift (d(lift) = " + R.str(R.d(x)) +
                                     "); twisted corrections are not implemented");
                return R.pow(x, e.order);
            }
            case Expr::Op::Sq: {
                torsion_only_mod2 = true;
                return R.sq(e.order, eval(*e.args[0]));
            }
            case Expr::Op::CupI: throw InputError("cup_i has no cohomology-ring evaluation; use SQ");
            case Expr::Op::Coboundary: throw InputError("D(x) is not a cohomology class");
        }
        throw std::logic_error("unhandled expression node");
    }
};

}  // namespace

PhasePolynomial ring_evaluate(const GateExpression& g, const CohomologyRing& R, const FlatConnection& conn,
                              const std::map<std::string, RingElement>& consts) {
    int64_t M = 1;
    for (const auto& t : g.terms) M = lcm64(M, t.coeff.den);
    DegreeContext ctx;
    ctx.field_degree = [&](int c) {
        if (c >= (int)conn.field_degree.size() || conn.field_degree[c] < 0)
            throw InputError("connection has no field a" + std::to_string(c + 1));
        return conn.field_degree[c];
    };
    ctx.const_degree = [&](const std::string& n) {
        auto it = consts.find(n);
        if (it == consts.end()) throw InputError("unknown ring constant " + n);
        return it->second.terms.empty() ? 0 : R.degree(it->second.terms.begin()->first);
    };
    for (const auto& t : g.terms) {
        int deg = expr_degree(*t.expr, ctx);
        if (deg != R.top_degree())
            throw InputError("term " + t.expr->str() + " has degree " + std::to_string(deg) + ", ring top degree is " +
                             std::to_string(R.top_degree()));
    }
    // Torsion in the top class fixes how finely the integral is defined.
    int64_t top_torsion = 0;
    for (std::size_t i = 0; i < R.gens.size(); ++i)
        if (R.top[i] && R.gens[i].modulus) top_torsion = std::gcd(top_torsion, R.gens[i].modulus);
    if (top_torsion)
        for (const auto& t : g.terms)
            if ((Rational(top_torsion) * t.coeff).den != 1)
                throw InputError("integral over a non-orientable top class is defined mod " +
                                 std::to_string(top_torsion) + " only; coefficient " + t.coeff.str() + " is too fine");
    std::size_t G = 1;
    for (auto o : conn.orders) {
        G *= (std::size_t)o;
        if (G > (std::size_t(1) << 20)) throw InputError("ring_evaluate: variable grid too large");
    }
    std::vector<int64_t> values(G);
    RingEvaluator ev{R, conn, consts, {}};
    for (std::size_t idx = 0; idx < G; ++idx) {
        ev.point = grid_point(idx, conn.orders);
        Rational acc(0);
        for (const auto& t : g.terms) {
            int64_t v = R.integrate(ev.eval(*t.expr));
            acc = (acc + t.coeff * Rational(top_torsion ? mod(v, top_torsion) : v)).frac();
        }
        values[idx] = acc.num * (M / acc.den);
    }
    int64_t N = conn.orders.empty() ? 2 : conn.orders[0];
    for (auto o : conn.orders)
        if (o != N) N = 0;
    return PhasePolynomial::from_grid(N, M, conn.orders, std::move(values), conn.vars);
}

RingElement ring_sq(int i, const RingElement& a, const CohomologyRing& R) { return R.sq(i, a); }

// ---- scenarios ----

namespace {

int64_t br(int64_t n, int64_t N) { return mod(n, N); }

}  // namespace

std::vector<RingScenario> shipped_ring_scenarios() {
    std::vector<RingScenario> out;
    auto cp2 = [](const std::string& g) { return cp_ring(2, g); };

    {
        RingScenario s;
        s.name = "cp2xcp2-CS";
        s.anchor = "i^{[n_1n_2']}i^{[n_2n_1']} = CS_{1,2'} CS_{2,1'}";
        s.ring = ring_product({cp2("w1"), cp2("w2")});
        s.conn.set_field(0, {{"n1", "w1"}, {"n2", "w2"}}, s.ring, 2);
        s.conn.set_field(1, {{"n1'", "w1"}, {"n2'", "w2"}}, s.ring, 2);
        s.expr = parse_expression("1/4*CUP(PONT(a1,2),PONT(a2,2))");
        s.expected = [](const std::vector<int64_t>& m) { return Rational(m[0] * m[3] + m[1] * m[2], 4); };
        s.expected_str = "CS(n1,n2') CS(n2,n1')";
        out.push_back(s);
    }
    {
        RingScenario s = out.back();
        s.name = "cp2xcp2-N2-l2";
        s.anchor = "i^{[n_2][n_1']+[n_1][n_2']}(-1)^{n_1n_2'n_2n_1'} = CR_2 CR_2 C^3Z";
        s.expected = [](const std::vector<int64_t>& m) {
            return Rational(m[1] * m[2] + m[0] * m[3], 4) + Rational(m[0] * m[1] * m[2] * m[3], 2);
        };
        s.expected_str = "CS(n2,n1') CS(n1,n2') C3Z(n1,n2',n2,n1')";
        s.note = "binomial expansion gives C(2,1)^2 = 4 = 0 mod 4 for the quartic term";
        out.push_back(s);
    }
    {
        RingScenario s;
        s.name = "cp16-CR4";
        s.anchor = "e^{2 pi i [n][n'] / 16} = CR_4";
        s.ring = cp_ring(16, "w");
        s.conn.set_field(0, {{"n", "w"}}, s.ring, 2);
        s.conn.set_field(1, {{"n'", "w"}}, s.ring, 2);
        s.expr = parse_expression("1/16*CUP(PONT(PONT(a1,2),4),PONT(PONT(a2,2),4))");
        s.expected = [](const std::vector<int64_t>& m) { return Rational(m[0] * m[1], 16); };
        s.expected_str = "CR4(n,n')";
        out.push_back(s);
    }
    {
        RingScenario s;
        s.name = "cp8-CT";
        s.anchor = "e^{2 pi i [n][n'] / 8} = CT";
        s.ring = cp_ring(8, "w");
        s.conn.set_field(0, {{"n", "w"}}, s.ring, 2);
        s.conn.set_field(1, {{"n'", "w"}}, s.ring, 2);
        s.expr = parse_expression("1/8*CUP(PONT(PONT(a1,2),2),PONT(PONT(a2,2),2))");
        s.expected = [](const std::vector<int64_t>& m) { return Rational(m[0] * m[1], 8); };
        s.expected_str = "CT(n,n')";
        out.push_back(s);
    }
    {
        RingScenario s;
        s.name = "cp4^4-C3R2";
        s.anchor = "six C^3R_2 factors";
        s.ring = ring_product({cp_ring(4, "w1"), cp_ring(4, "w2"), cp_ring(4, "w3"), cp_ring(4, "w4")});
        s.conn.set_field(0, {{"n1", "w1"}, {"n2", "w2"}, {"n3", "w3"}, {"n4", "w4"}}, s.ring, 2);
        s.conn.set_field(1, {{"n1'", "w1"}, {"n2'", "w2"}, {"n3'", "w3"}, {"n4'", "w4"}}, s.ring, 2);
        s.expr = parse_expression("1/16*CUP(PONT(PONT(a1,2),4),PONT(PONT(a2,2),4))");
        // variables: n1..n4 = m[0..3], n1'..n4' = m[4..7]
        s.expected = [](const std::vector<int64_t>& m) {
            int64_t t = m[4] * m[5] * m[2] * m[3] + m[4] * m[1] * m[6] * m[3] + m[4] * m[1] * m[2] * m[7] +
                        m[0] * m[1] * m[6] * m[7] + m[0] * m[5] * m[6] * m[3] + m[0] * m[5] * m[2] * m[7];
            return Rational(t, 4);
        };
        s.expected_str = "C3S(n1',n2',n3,n4) C3S(n1',n2,n3',n4) C3S(n1',n2,n3,n4') C3S(n1,n2,n3',n4') "
                         "C3S(n1,n2',n3',n4) C3S(n1,n2',n3,n4')";
        out.push_back(s);
    }
    {
        RingScenario s;
        s.name = "rp8-Z";
        s.anchor = "the logical gate on RP^8 is simply the logical Pauli Z gate";
        s.ring = rp_ring(8, "x");
        s.conn.set_field(0, {{"n", "x^3"}}, s.ring, 2);
        s.expr = parse_expression("1/2*CUP(a1,SQ(2,a1))");
        s.expected = [](const std::vector<int64_t>& m) { return Rational(m[0], 2); };
        s.expected_str = "Z(n)";
        out.push_back(s);
    }
    {
        RingScenario s;
        s.name = "t3xrp5-CZ";
        s.anchor = "CZ_{1,2} CZ_{5,6} CZ_{4,7} CZ_{3,8}";
        s.ring = ring_product({rp_ring(5, "x"), torus_ring(3, "y")});
        s.conn.set_field(0,
                         {{"n1", "x^3"},
                          {"n2", "y1 y2 y3"},
                          {"n3", "x y1 y2"},
                          {"n4", "x y1 y3"},
                          {"n5", "x y2 y3"},
                          {"n6", "x^2 y1"},
                          {"n7", "x^2 y2"},
                          {"n8", "x^2 y3"}},
                         s.ring, 2);
        s.expr = parse_expression("1/2*CUP(a1,SQ(2,a1))");
        s.expected = [](const std::vector<int64_t>& m) {
            return Rational(m[0] * m[1] + m[4] * m[5] + m[3] * m[6] + m[2] * m[7], 2);
        };
        s.expected_str = "CZ(n1,n2) CZ(n5,n6) CZ(n4,n7) CZ(n3,n8)";
        out.push_back(s);
    }
    {
        RingScenario s;
        s.name = "t2xcp2-mixed";
        s.anchor = "i^{n_1[m_2]}(-1)^{m_1[n_2][m_2]}";
        // omega: T^2 volume form (degree 2, squares to zero); w: Kaehler form of CP^2
        CohomologyRing T2;
        T2.name = "T2";
        T2.gens.push_back({"o", 2, 0, true, "", "0", false});
        T2.relations.push_back({2});
        T2.top = {1};
        s.ring = ring_product({T2, cp_ring(2, "w")});
        s.conn.set_field(0, {{"n1", "o"}, {"m1", "w"}}, s.ring, 4);
        s.conn.set_field(1, {{"n2", "o"}, {"m2", "w"}}, s.ring, 2);
        s.expr = parse_expression("1/4*CUP(a1,PONT(a2,2))");
        s.expected = [](const std::vector<int64_t>& m) {
            return Rational(m[0] * br(m[3], 2), 4) + Rational(m[1] * br(m[2], 2) * br(m[3], 2), 2);
        };
        s.expected_str = "i^{n1[m2]} (-1)^{m1[n2][m2]}";
        out.push_back(s);
    }
    for (int k = 1; k <= 3; ++k) {
        RingScenario s;
        int dim = 1 << k;  // CP^{2^k}, real dimension 2^{k+1}
        s.name = "cp" + std::to_string(dim) + "-P" + std::to_string(k);
        s.anchor = "P^k(a;2) with n >= 2^{k+1} defines a logical R_{k-1} gate";
        s.ring = cp_ring(dim, "w");
        s.conn.set_field(0, {{"n", "w"}}, s.ring, 2);
        std::string e = "a1";
        for (int j = 0; j < k; ++j) e = "PONT(" + e + ",2)";
        s.expr = parse_expression("1/" + std::to_string(1 << (k + 1)) + "*" + e);
        int64_t den = int64_t(1) << (k + 1);
        s.expected = [den](const std::vector<int64_t>& m) { return Rational(m[0], den); };
        s.expected_str = "R" + std::to_string(k + 1) + "(n)";
        s.note = "computed phase is 2 pi i [n] / 2^{k+1}, i.e. R_" + std::to_string(k + 1) +
                 "; the quoted index is R_" + std::to_string(k - 1);
        out.push_back(s);
    }
    return out;
}

ScenarioOutcome run_ring_scenario(const RingScenario& s) {
    ScenarioOutcome o;
    o.name = s.name;
    o.note = s.note;
    o.poly = ring_evaluate(s.expr, s.ring, s.conn);
    o.gates = o.poly.named_gates();
    std::size_t G = 1;
    for (auto x : s.conn.orders) G *= (std::size_t)x;
    for (std::size_t idx = 0; idx < G; ++idx) {
        auto m = grid_point(idx, s.conn.orders);
        Rational got = Rational(o.poly.eval(m), o.poly.M).frac();
        if (!(got == s.expected(m).frac())) {
            if (o.mismatches++ == 0) o.first_mismatch = m;
        }
    }
    o.pass = o.mismatches == 0;
    return o;
}

}  // namespace cohgate
