#include "cohgate/expr.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "cohgate/errors.hpp"

namespace cohgate {

Rational::Rational(int64_t n, int64_t d) {
    if (d == 0) throw std::invalid_argument("zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) g = 1;
    num = n / g;
    den = d / g;
}

Rational Rational::operator+(const Rational& o) const {
    int64_t l = std::lcm(den, o.den);
    return Rational(num * (l / den) + o.num * (l / o.den), l);
}
Rational Rational::operator-(const Rational& o) const { return *this + (-o); }
Rational Rational::operator*(const Rational& o) const {
    int64_t g1 = std::gcd(num < 0 ? -num : num, o.den), g2 = std::gcd(o.num < 0 ? -o.num : o.num, den);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    return Rational((num / g1) * (o.num / g2), (den / g2) * (o.den / g1));
}
bool Rational::operator<(const Rational& o) const {
    return (__int128)num * o.den < (__int128)o.num * den;
}
Rational Rational::frac() const {
    int64_t r = num % den;
    if (r < 0) r += den;
    return Rational(r, den);
}
std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

namespace {
ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }
}  // namespace

ExprPtr Expr::field(int copy) {
    Expr e;
    e.op = Op::Field;
    e.copy = copy;
    return make(std::move(e));
}
ExprPtr Expr::constant(const std::string& name) {
    Expr e;
    e.op = Op::Const;
    e.name = name;
    return make(std::move(e));
}
ExprPtr Expr::cup(std::vector<ExprPtr> args) {
    if (args.empty()) throw InputError("CUP needs at least one argument");
    Expr e;
    e.op = Op::Cup;
    e.args = std::move(args);
    return make(std::move(e));
}
ExprPtr Expr::cup_i(int i, ExprPtr x, ExprPtr y) {
    if (i < 0) throw InputError("CUPI order must be nonnegative");
    Expr e;
    e.op = Op::CupI;
    e.order = i;
    e.args = {std::move(x), std::move(y)};
    return make(std::move(e));
}
ExprPtr Expr::sq(int i, ExprPtr x) {
    if (i < 0) throw InputError("SQ order must be nonnegative");
    Expr e;
    e.op = Op::Sq;
    e.order = i;
    e.args = {std::move(x)};
    return make(std::move(e));
}
ExprPtr Expr::pont(ExprPtr x, int n) {
    if (n < 1) throw InputError("PONT power must be positive");
    Expr e;
    e.op = Op::Pont;
    e.order = n;
    e.args = {std::move(x)};
    return make(std::move(e));
}
ExprPtr Expr::coboundary(ExprPtr x) {
    Expr e;
    e.op = Op::Coboundary;
    e.args = {std::move(x)};
    return make(std::move(e));
}
ExprPtr Expr::lin(std::vector<int64_t> coeffs, std::vector<ExprPtr> args) {
    if (coeffs.size() != args.size()) throw std::invalid_argument("Lin arity mismatch");
    Expr e;
    e.op = Op::Lin;
    e.coeffs = std::move(coeffs);
    e.args = std::move(args);
    return make(std::move(e));
}

std::string Expr::str() const {
    std::ostringstream s;
    switch (op) {
        case Op::Field: s << "a" << copy + 1; break;
        case Op::Const: s << "CONST(" << name << ")"; break;
        case Op::Cup:
            s << "CUP(";
            for (std::size_t i = 0; i < args.size(); ++i) s << (i ? "," : "") << args[i]->str();
            s << ")";
            break;
        case Op::CupI: s << "CUPI(" << order << "," << args[0]->str() << "," << args[1]->str() << ")"; break;
        case Op::Sq: s << "SQ(" << order << "," << args[0]->str() << ")"; break;
        case Op::Pont: s << "PONT(" << args[0]->str() << "," << order << ")"; break;
        case Op::Coboundary: s << "D(" << args[0]->str() << ")"; break;
        case Op::Lin:
            s << "LIN(";
            for (std::size_t i = 0; i < args.size(); ++i) s << (i ? "," : "") << coeffs[i] << ":" << args[i]->str();
            s << ")";
            break;
    }
    return s.str();
}

GateExpression GateExpression::operator+(const GateExpression& o) const {
    GateExpression r = *this;
    r.terms.insert(r.terms.end(), o.terms.begin(), o.terms.end());
    return r;
}

int64_t GateExpression::denominator() const {
    int64_t d = 1;
    for (const auto& t : terms) d = std::lcm(d, t.coeff.den);
    return d;
}

namespace {
int max_copy(const Expr& e) {
    int m = e.op == Expr::Op::Field ? e.copy : -1;
    for (const auto& a : e.args) m = std::max(m, max_copy(*a));
    return m;
}
}  // namespace

int GateExpression::max_field_copy() const {
    int m = -1;
    for (const auto& t : terms) m = std::max(m, max_copy(*t.expr));
    return m;
}

std::string GateExpression::str() const {
    std::ostringstream s;
    for (std::size_t i = 0; i < terms.size(); ++i) s << (i ? " + " : "") << terms[i].coeff.str() << "*" << terms[i].expr->str();
    return s.str();
}

namespace {

class Parser {
public:
    explicit Parser(const std::string& t) : s_(t) {}

    GateExpression parse() {
        GateExpression g;
        skip();
        int sign = 1;
        if (peek() == '-') {
            ++pos_;
            sign = -1;
        }
        for (;;) {
            Term t = term();
            t.coeff = t.coeff * Rational(sign);
            g.terms.push_back(t);
            skip();
            if (pos_ >= s_.size()) break;
            char c = s_[pos_];
            if (c == '+') sign = 1;
            else if (c == '-') sign = -1;
            else fail("expected '+', '-' or end of expression");
            ++pos_;
        }
        return g;
    }

private:
    [[noreturn]] void fail(const std::string& m) {
        throw InputError("expression: " + m + " at column " + std::to_string(pos_ + 1));
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
    }
    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    int64_t integer() {
        skip();
        std::size_t st = pos_;
        while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
        if (st == pos_) fail("expected an integer");
        return std::stoll(s_.substr(st, pos_ - st));
    }
    std::string ident() {
        skip();
        std::size_t st = pos_;
        while (pos_ < s_.size() && (std::isalnum((unsigned char)s_[pos_]) || s_[pos_] == '_')) ++pos_;
        if (st == pos_) fail("expected a name");
        return s_.substr(st, pos_ - st);
    }
    Term term() {
        Rational c(1);
        if (std::isdigit((unsigned char)peek())) {
            int64_t n = integer();
            int64_t d = 1;
            if (peek() == '/') {
                ++pos_;
                d = integer();
                if (d == 0) fail("zero denominator");
            }
            c = Rational(n, d);
            expect('*');
        }
        return Term{c, atom()};
    }
    ExprPtr atom() {
        std::size_t st = pos_;
        std::string id = ident();
        std::string up;
        for (char ch : id) up += (char)std::toupper((unsigned char)ch);
        if (up == "CUP") {
            expect('(');
            std::vector<ExprPtr> args{atom()};
            while (peek() == ',') {
                ++pos_;
                args.push_back(atom());
            }
            expect(')');
            return Expr::cup(std::move(args));
        }
        if (up == "CUPI") {
            expect('(');
            int i = (int)integer();
            expect(',');
            auto x = atom();
            expect(',');
            auto y = atom();
            expect(')');
            return Expr::cup_i(i, x, y);
        }
        if (up == "SQ") {
            expect('(');
            int i = (int)integer();
            expect(',');
            auto x = atom();
            expect(')');
            return Expr::sq(i, x);
        }
        if (up == "PONT") {
            expect('(');
            auto x = atom();
            expect(',');
            int n = (int)integer();
            expect(')');
            return Expr::pont(x, n);
        }
        if (up == "D") {
            expect('(');
            auto x = atom();
            expect(')');
            return Expr::coboundary(x);
        }
        if (up == "CONST") {
            expect('(');
            auto n = ident();
            expect(')');
            return Expr::constant(n);
        }
        if (id.size() >= 2 && id[0] == 'a' && std::all_of(id.begin() + 1, id.end(), [](char ch) { return std::isdigit((unsigned char)ch); })) {
            int k = std::stoi(id.substr(1));
            if (k < 1) {
                pos_ = st;
                fail("field copies are numbered from 1");
            }
            return Expr::field(k - 1);
        }
        pos_ = st;
        fail("unknown atom '" + id + "'");
    }

    std::string s_;
    std::size_t pos_ = 0;
};

}  // namespace

GateExpression parse_expression(const std::string& text) { return Parser(text).parse(); }

int expr_degree(const Expr& e, const DegreeContext& ctx) {
    switch (e.op) {
        case Expr::Op::Field: return ctx.field_degree(e.copy);
        case Expr::Op::Const: return ctx.const_degree(e.name);
        case Expr::Op::Cup: {
            int d = 0;
            for (const auto& a : e.args) d += expr_degree(*a, ctx);
            return d;
        }
        case Expr::Op::CupI: {
            int d = expr_degree(*e.args[0], ctx) + expr_degree(*e.args[1], ctx) - e.order;
            if (d < 0) throw InputError("CUPI of negative degree");
            return d;
        }
        case Expr::Op::Sq: return expr_degree(*e.args[0], ctx) + e.order;
        case Expr::Op::Pont: return expr_degree(*e.args[0], ctx) * e.order;
        case Expr::Op::Coboundary: return expr_degree(*e.args[0], ctx) + 1;
        case Expr::Op::Lin: {
            int d = -1;
            for (const auto& a : e.args) {
                int da = expr_degree(*a, ctx);
                if (d >= 0 && da != d) throw InputError("linear combination of mixed degrees");
                d = da;
            }
            return std::max(d, 0);
        }
    }
    return 0;
}

ExprPtr pontryagin_expansion(ExprPtr a, int n) {
    if (n == 1) return a;
    auto power = [&](int k) {
        std::vector<ExprPtr> f(k, a);
        return k == 1 ? a : Expr::cup(f);
    };
    auto da = Expr::coboundary(a);
    std::vector<ExprPtr> parts{power(n)};
    std::vector<int64_t> coeffs{1};
    {
        std::vector<ExprPtr> f{Expr::cup_i(1, a, da)};
        if (n - 2 > 0) f.push_back(power(n - 2));
        parts.push_back(f.size() == 1 ? f[0] : Expr::cup(f));
        coeffs.push_back(1);
    }
    for (int k = 1; k <= n - 2; ++k) {
        std::vector<ExprPtr> f{a, Expr::cup_i(1, power(k), da)};
        if (n - 2 - k > 0) f.push_back(power(n - 2 - k));
        parts.push_back(Expr::cup(f));
        coeffs.push_back(-1);
    }
    return Expr::lin(coeffs, parts);
}

}  // namespace cohgate
