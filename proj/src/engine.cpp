#include "cohgate/engine.hpp"

#include <mutex>
#include <unordered_map>

#include "cohgate/errors.hpp"

namespace cohgate {

namespace {

class Compiler {
public:
    Compiler(Program& p, const DegreeContext& ctx) : p_(p), ctx_(ctx) {}

    int lower(const ExprPtr& e) {
        std::string key = e->str();
        if (auto it = seen_.find(key); it != seen_.end()) return it->second;
        int id = build(*e);
        seen_[key] = id;
        return id;
    }

private:
    int push(CompiledNode n) {
        p_.nodes.push_back(std::move(n));
        return (int)p_.nodes.size() - 1;
    }

    int zero(int degree) {
        CompiledNode n;
        n.op = Expr::Op::Lin;
        n.degree = degree;
        return push(std::move(n));
    }

    bool simplicial() const { return p_.kind == ComplexKind::Simplicial; }

    int build(const Expr& e) {
        CompiledNode n;
        n.op = e.op;
        switch (e.op) {
            case Expr::Op::Field:
                n.copy = e.copy;
                n.degree = ctx_.field_degree(e.copy);
                {
                    int id = push(std::move(n));
                    p_.leaf_nodes.push_back(id);
                    return id;
                }
            case Expr::Op::Const:
                n.name = e.name;
                n.degree = ctx_.const_degree(e.name);
                {
                    int id = push(std::move(n));
                    p_.leaf_nodes.push_back(id);
                    return id;
                }
            case Expr::Op::Cup: {
                if (e.args.size() == 1) return lower(e.args[0]);
                for (const auto& a : e.args) {
                    int c = lower(a);
                    n.args.push_back(c);
                    n.degree += p_.nodes[c].degree;
                }
                return push(std::move(n));
            }
            case Expr::Op::CupI: {
                if (e.order == 0) return lower(Expr::cup({e.args[0], e.args[1]}));
                if (!simplicial()) throw InputError("higher cup on cubical lattice out of scope");
                int x = lower(e.args[0]), y = lower(e.args[1]);
                int d = p_.nodes[x].degree + p_.nodes[y].degree - e.order;
                if (e.order > p_.nodes[x].degree && e.order > p_.nodes[y].degree) return zero(std::max(d, 0));
                if (d < 0) return zero(0);
                n.args = {x, y};
                n.order = e.order;
                n.degree = d;
                return push(std::move(n));
            }
            case Expr::Op::Sq: {
                int x = lower(e.args[0]);
                int p = p_.nodes[x].degree;
                if (e.order > p) return zero(p + e.order);
                if (e.order == p) return lower(Expr::cup({e.args[0], e.args[0]}));
                return lower(Expr::cup_i(p - e.order, e.args[0], e.args[0]));
            }
            case Expr::Op::Pont: {
                int x = lower(e.args[0]);
                int p = p_.nodes[x].degree;
                if (p % 2 != 0) throw InputError("PONT requires an even-degree argument");
                if (e.order >= 2 && !simplicial()) throw InputError("PONT needs cup_1, unavailable on cubical lattices");
                return lower(pontryagin_expansion(e.args[0], e.order));
            }
            case Expr::Op::Coboundary: {
                int x = lower(e.args[0]);
                n.args = {x};
                n.degree = p_.nodes[x].degree + 1;
                return push(std::move(n));
            }
            case Expr::Op::Lin: {
                int d = -1;
                for (std::size_t t = 0; t < e.args.size(); ++t) {
                    int c = lower(e.args[t]);
                    if (d >= 0 && p_.nodes[c].degree != d) throw InputError("linear combination of mixed degrees");
                    d = p_.nodes[c].degree;
                    n.args.push_back(c);
                    n.coeffs.push_back(e.coeffs[t]);
                }
                n.degree = std::max(d, 0);
                return push(std::move(n));
            }
        }
        throw std::logic_error("unknown op");
    }

    Program& p_;
    const DegreeContext& ctx_;
    std::unordered_map<std::string, int> seen_;
};

}  // namespace

Program compile(const GateExpression& g, ComplexKind kind, int dim, const DegreeContext& ctx, int top_degree) {
    Program p;
    p.kind = kind;
    p.dim = dim;
    Compiler c(p, ctx);
    for (const auto& t : g.terms) {
        int r = c.lower(t.expr);
        if (top_degree >= 0 && p.nodes[r].degree != top_degree)
            throw InputError("term " + t.expr->str() + " has degree " + std::to_string(p.nodes[r].degree) +
                             ", expected " + std::to_string(top_degree));
        if (p.nodes[r].degree > dim)
            throw InputError("term " + t.expr->str() + " exceeds the complex dimension");
        p.roots.push_back(r);
        p.coeffs.push_back(t.coeff);
    }
    return p;
}

Program compile(ExprPtr e, ComplexKind kind, int dim, const DegreeContext& ctx, int top_degree) {
    return compile(GateExpression(Rational(1), std::move(e)), kind, dim, ctx, top_degree);
}

const std::vector<CupIPattern>& cup_i_patterns(int p, int q, int i) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, int>, std::vector<CupIPattern>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(p, q, i);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    std::vector<CupIPattern> out;
    int m = p + q - i;
    if (m >= 0 && i >= 0 && m < 31) {
        // Cut points j_0 < ... < j_i in [0, m]; intervals alternate between f and g.
        std::vector<int> cuts(i + 1);
        std::function<void(int, int)> rec = [&](int k, int lo) {
            if (k == i + 1) {
                uint32_t F = 0, G = 0;
                int prev = 0;
                for (int t = 0; t <= i + 1; ++t) {
                    int end = t <= i ? cuts[t] : m;
                    uint32_t iv = 0;
                    for (int x = prev; x <= end; ++x) iv |= 1u << x;
                    (t % 2 == 0 ? F : G) |= iv;
                    prev = end;
                }
                if (std::popcount(F) != p + 1 || std::popcount(G) != q + 1) return;
                int inv = 0;
                for (int x = 0; x <= m; ++x)
                    if (F >> x & 1)
                        for (int y = 0; y < x; ++y)
                            if (G >> y & 1) ++inv;
                int e = inv + i * (i + 1) / 2;
                out.push_back({F, G, e % 2 ? -1 : 1});
                return;
            }
            for (int j = lo; j <= m; ++j) {
                cuts[k] = j;
                rec(k + 1, j + 1);
            }
        };
        rec(0, 0);
    }
    return cache.emplace(key, std::move(out)).first->second;
}

}  // namespace cohgate
