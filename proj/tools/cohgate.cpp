// cohgate: command-line front end.
// Exit codes: 0 success, 1 a requested check failed, 2 malformed input.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cohgate/code.hpp"
#include "cohgate/complex.hpp"
#include "cohgate/errors.hpp"
#include "cohgate/grpcoh.hpp"
#include "cohgate/homology.hpp"
#include "cohgate/ringeval.hpp"
#include "cohgate/synth.hpp"
#include "cohgate/verify.hpp"

using namespace cohgate;

namespace {

struct Options {
    std::string complex = "cubic:2:3";
    std::string expr;
    std::string ring;
    std::string conn;
    std::string json_out;
    int64_t mod = 2;
    int copies = 0;
    int degree = 1;
    uint64_t seed = 1;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_json(const Options& o, const std::string& text) {
    if (o.json_out.empty()) return;
    std::ofstream out(o.json_out);
    if (!out) throw InputError("cannot write " + o.json_out);
    out << text << "\n";
}

ComplexPtr load_complex(const std::string& spec) {
    if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") return load_complex_json(spec);
    return shipped_complex(spec);
}

CssCode make_code(const Options& o, const GateExpression* g) {
    auto C = load_complex(o.complex);
    int copies = std::max(o.copies, 1);
    if (g) copies = std::max(copies, g->max_field_copy() + 1);
    return from_chain_complex(C, o.degree, o.mod, copies);
}

// Named-gate histogram of a circuit, in name order.
std::map<std::string, std::size_t> histogram(const DiagonalCircuit& c) {
    std::map<std::string, std::size_t> h;
    for (const auto& g : c.gates) {
        std::string n = gate_name(g, c.N);
        if (n.empty()) n = "phase " + std::to_string(g.num) + "/" + std::to_string(g.den) + " on " +
                           std::to_string(g.qudits.size()) + " qudits";
        ++h[n];
    }
    return h;
}

void print_poly(const PhasePolynomial& p) {
    std::cout << "logical phase: " << (p.terms.empty() ? "0" : p.str()) << "\n";
    auto gates = p.named_gates();
    if (!gates.empty()) {
        std::cout << "logical gates:";
        for (const auto& g : gates) std::cout << " " << g;
        std::cout << "\n";
    }
}

// ---- build / homology ----

int cmd_build(const Options& o, bool with_code) {
    auto C = load_complex(o.complex);
    auto rep = validate(*C);
    std::cout << "complex " << C->name << " (" << (C->kind == ComplexKind::Simplicial ? "simplicial" : "cubical")
              << "), dim " << C->dim << "\n";
    std::cout << "f-vector:";
    for (auto f : C->f_vector()) std::cout << " " << f;
    std::cout << "\neuler characteristic " << C->euler_characteristic() << ", "
              << (C->orientation ? "oriented" : "not oriented") << "\n";
    std::cout << "validation: " << (rep.ok ? "ok" : "FAILED") << "\n";
    for (const auto& f : rep.failures) std::cout << "  " << f << "\n";
    if (with_code) {
        auto code = from_chain_complex(C, o.degree, o.mod, std::max(o.copies, 1));
        auto comm = check_css_commutation(code);
        std::cout << "code: " << code.num_qudits << " qudits over Z_" << code.N << ", " << code.x_checks.size()
                  << " X checks, " << code.z_checks.size() << " Z checks, logical dimension "
                  << logical_dimension(code) << ", checks " << (comm.ok ? "commute" : "DO NOT commute") << "\n";
        write_json(o, code_to_json(code));
        return rep.ok && comm.ok ? 0 : 1;
    }
    write_json(o, complex_to_json(*C));
    return rep.ok ? 0 : 1;
}

int cmd_homology(const Options& o) {
    auto C = load_complex(o.complex);
    auto H = integer_homology(*C);
    nlohmann::ordered_json j;
    j["complex"] = C->name;
    auto hj = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < H.size(); ++k) {
        std::cout << "H_" << k << " = " << H[k].str() << "\n";
        hj.push_back(H[k].str());
    }
    j["integer"] = hj;
    if (is_prime(o.mod)) {
        auto b = betti_mod_p(*C, o.mod);
        std::cout << "Betti numbers mod " << o.mod << ":";
        for (auto x : b) std::cout << " " << x;
        std::cout << "\n";
        j["betti_mod_p"] = {{"p", o.mod}, {"betti", b}};
    }
    write_json(o, j.dump(1));
    return 0;
}

// ---- synthesize / verify / oracle ----

std::pair<int, int> parse_pair(const std::string& s) {
    std::smatch m;
    static const std::regex re(R"(^\s*(\d+)\s*,\s*(\d+)\s*$)");
    if (!std::regex_match(s, m, re)) throw InputError("expected two copy numbers like 1,2");
    return {std::stoi(m[1]) - 1, std::stoi(m[2]) - 1};
}

int cmd_synthesize(const Options& o, const std::string& cnot, int cube) {
    if (cube > 0) {
        auto bc = cube_code(cube);
        auto c = cube_gate_circuit(bc);
        std::cout << "cube code L=" << cube << ": " << c.gates.size() << " gates\n";
        for (const auto& [n, k] : histogram(c)) std::cout << "  " << n << " x " << k << "\n";
        write_json(o, circuit_to_json(c, true));
        return 0;
    }
    if (!cnot.empty()) {
        Options oo = o;
        oo.copies = std::max(o.copies, 2);
        auto code = make_code(oo, nullptr);
        auto [a, b] = parse_pair(cnot);
        auto m = synthesize_cnot_layer(code, a, b);
        std::cout << "CX layer: " << m.cx.size() << " gates from copy " << a + 1 << " onto copy " << b + 1 << "\n";
        write_json(o, clifford_to_json(m));
        return 0;
    }
    if (o.expr.empty()) throw InputError("--expr is required");
    auto g = parse_expression(o.expr);
    auto code = make_code(o, &g);
    auto c = synthesize_diagonal(g, code);
    std::cout << "expression " << g.str() << " on " << code.name << ": " << c.gates.size() << " gates\n";
    for (const auto& [n, k] : histogram(c)) std::cout << "  " << n << " x " << k << "\n";
    auto per = c.gates_per_qudit();
    std::size_t mx = per.empty() ? 0 : *std::max_element(per.begin(), per.end());
    std::cout << "max gates per qudit " << mx << "\n";
    for (const auto& n : c.notes) std::cout << "note: " << n << "\n";
    write_json(o, circuit_to_json(c, true));
    return 0;
}

LogicalBasis basis_for(const CssCode& code) {
    for (const auto& c : code.copies)
        if (!c.complex) return logical_basis(code);
    return cohomology_logical_basis(code);
}

int cmd_verify(const Options& o, bool oracle, bool circuit) {
    if (o.expr.empty()) throw InputError("--expr is required");
    auto g = parse_expression(o.expr);
    auto code = make_code(o, &g);
    auto basis = basis_for(code);
    VerifyOptions vo;
    vo.seed = o.seed;
    std::unique_ptr<PhaseFunction> F;
    if (circuit) F = std::make_unique<CircuitPhase>(synthesize_diagonal(g, code));
    else F = std::make_unique<ExpressionPhase>(g, code);
    auto r = check_stabilizer_commutation(*F, code, basis, vo);
    std::cout << "commutation: " << r.status << " (" << (r.method.empty() ? "" : r.method + ", ") << r.checks
              << " X checks, " << r.spot_checks << " spot checks)\n";
    for (const auto& n : r.notes) std::cout << "note: " << n << "\n";
    if (!r.pass()) {
        std::cout << "failing check " << r.failing_label << ", phase difference " << r.delta << "/" << F->modulus()
                  << "\n";
        write_json(o, verification_report_json(r, std::nullopt, std::nullopt));
        return 1;
    }
    auto e = extract_logical_action(*F, code, basis, {}, vo);
    print_poly(e.poly);
    std::cout << "representative independent: " << (e.representative_independent ? "yes" : "NO") << "\n";
    std::optional<OracleResult> orc;
    bool agree = true;
    if (oracle) {
        orc = brute_force_oracle(*F, code, basis);
        for (std::size_t i = 0; i < orc->dim && agree; ++i)
            if (Rational(orc->diag[i], orc->M).frac() !=
                Rational(e.poly.eval(grid_point(i, basis.orders)), e.poly.M).frac())
                agree = false;
        agree = agree && orc->logical;
        std::cout << "oracle: " << (agree ? "agree" : "DISAGREE") << "\n";
    }
    write_json(o, verification_report_json(r, e, orc));
    return e.representative_independent && agree ? 0 : 1;
}

int cmd_oracle(const Options& o, const std::string& cnot) {
    Options oo = o;
    if (!cnot.empty()) oo.copies = std::max(o.copies, 2);
    std::optional<GateExpression> g;
    if (cnot.empty()) {
        if (o.expr.empty()) throw InputError("--expr or --cnot is required");
        g = parse_expression(o.expr);
    }
    auto code = make_code(oo, g ? &*g : nullptr);
    auto basis = basis_for(code);
    OracleResult r;
    if (g) {
        ExpressionPhase F(*g, code);
        r = brute_force_oracle(F, code, basis);
    } else {
        auto [a, b] = parse_pair(cnot);
        r = brute_force_oracle(synthesize_cnot_layer(code, a, b), code, basis);
    }
    std::cout << "logical space dimension " << r.dim << ", " << (r.logical ? "logical operator" : "NOT logical")
              << "\n";
    if (!r.note.empty()) std::cout << "note: " << r.note << "\n";
    nlohmann::ordered_json j;
    j["dim"] = r.dim;
    j["logical"] = r.logical;
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < r.dim; ++i) {
        auto m = grid_point(i, basis.orders);
        // the phase oracle leaves perm empty, the Clifford oracle leaves diag empty
        auto t = grid_point(i < r.perm.size() ? r.perm[i] : i, basis.orders);
        Rational ph = Rational(i < r.diag.size() ? r.diag[i] : 0, r.M).frac();
        std::cout << "  |";
        for (auto x : m) std::cout << x;
        std::cout << "> -> exp(2 pi i " << ph.str() << ") |";
        for (auto x : t) std::cout << x;
        std::cout << ">\n";
        rows.push_back({{"in", m}, {"out", t}, {"phase", ph.str()}});
    }
    j["action"] = rows;
    write_json(o, j.dump(1));
    return r.logical ? 0 : 1;
}

// ---- suites ----

int print_suite(const Options& o, const SuiteReport& r) {
    for (const auto& [k, v] : r.checks)
        std::cout << (v.first == v.second ? "PASS " : "FAIL ") << k << " " << v.first << "/" << v.second << "\n";
    for (const auto& n : r.notes) std::cout << "note: " << n << "\n";
    write_json(o, suite_report_json(r));
    return r.all_pass() ? 0 : 1;
}

int cmd_suite(const Options& o, const std::string& name, int n, int trials, int pdeg) {
    auto C = load_complex(o.complex);
    if (name == "pontryagin") return print_suite(o, pontryagin_property_suite(C, o.mod, n, trials, o.seed, pdeg));
    if (name == "steenrod") return print_suite(o, steenrod_property_suite(C, trials, o.seed));
    if (name == "cartan") return print_suite(o, cartan_integral_suite(C, trials, o.seed));
    throw InputError("unknown suite '" + name + "' (pontryagin, steenrod, cartan)");
}

// ---- ring mode ----

CohomologyRing ring_by_name(const std::string& spec) {
    if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") return ring_from_json(read_file(spec));
    std::vector<CohomologyRing> factors;
    static const std::regex tok(R"((cp|rp|t)(\d+))");
    std::size_t pos = 0;
    int k = 0;
    while (pos < spec.size()) {
        std::smatch m;
        std::string rest = spec.substr(pos);
        if (!std::regex_search(rest, m, tok, std::regex_constants::match_continuous))
            throw InputError("ring names look like cp2xcp2, t3xrp5 or a .json file");
        int d = std::stoi(m[2]);
        std::string suffix = k ? std::string(k, '\'') : "";
        if (m[1] == "cp") factors.push_back(cp_ring(d, "w" + suffix));
        else if (m[1] == "rp") factors.push_back(rp_ring(d, "x" + suffix));
        else factors.push_back(torus_ring(d, k ? "y" + std::to_string(k) + "_" : "y"));
        pos += m.length(0);
        ++k;
        if (pos < spec.size()) {
            if (spec[pos] != 'x') throw InputError("ring factors are joined by x");
            ++pos;
        }
    }
    if (factors.empty()) throw InputError("empty ring name");
    return factors.size() == 1 ? factors[0] : ring_product(factors, spec);
}

void print_outcome(const RingScenario& s, const ScenarioOutcome& r) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << s.name << "\n";
    std::cout << "  claim: " << s.anchor << "\n";
    std::cout << "  expected: " << s.expected_str << "\n";
    std::cout << "  computed: " << (r.poly.terms.empty() ? "0" : r.poly.str()) << "\n";
    if (!r.gates.empty()) {
        std::cout << "  gates:";
        for (const auto& g : r.gates) std::cout << " " << g;
        std::cout << "\n";
    }
    if (!r.pass) std::cout << "  mismatching assignments: " << r.mismatches << "\n";
    if (!s.note.empty()) std::cout << "  note: " << s.note << "\n";
}

int cmd_ring(const Options& o, const std::string& scenario) {
    if (!scenario.empty()) {
        for (const auto& s : shipped_ring_scenarios()) {
            if (s.name != scenario) continue;
            auto r = run_ring_scenario(s);
            print_outcome(s, r);
            return r.pass ? 0 : 1;
        }
        throw InputError("unknown ring scenario '" + scenario + "'");
    }
    if (o.ring.empty() || o.expr.empty() || o.conn.empty())
        throw InputError("ring mode needs --ring, --conn and --expr (or --scenario)");
    auto R = ring_by_name(o.ring);
    std::string conn_text = o.conn[0] == '{' ? o.conn : read_file(o.conn);
    auto conn = connection_from_json(conn_text, R);
    auto p = ring_evaluate(parse_expression(o.expr), R, conn);
    std::cout << "ring " << R.name << "\n";
    print_poly(p);
    nlohmann::ordered_json j;
    j["ring"] = nlohmann::json::parse(ring_to_json(R));
    j["phase"] = p.str();
    j["gates"] = p.named_gates();
    write_json(o, j.dump(1));
    return 0;
}

// ---- boundary ----

int run_boundary(const Options& o, const BoundaryExample& ex, bool print_images) {
    auto c = iterate_boundary(ex.omega, ex.steps, ex.expected);
    bool ok = c.solvable && c.reaches_target.value_or(true);
    std::cout << (ok ? "PASS " : "FAIL ") << ex.name << "\n";
    if (!ex.anchor.empty()) std::cout << "  claim: " << ex.anchor << "\n";
    if (!c.solvable) std::cout << "  step " << c.obstructed_step + 1 << " has no solution\n";
    std::cout << "  " << c.note << "\n";
    if (print_images && c.solvable)
        for (std::size_t i = 1; i < c.images.size(); ++i)
            std::cout << "  B^" << i << " on " << c.images[i].domain.str() << ":\n" << c.images[i].str();
    write_json(o, boundary_chain_json(c, ex.expected));
    return ok ? 0 : 1;
}

int cmd_boundary(const Options& o, const std::string& example, const std::string& input, int counts_n,
                 const std::string& group) {
    if (counts_n >= 0) {
        std::vector<int64_t> orders;
        std::stringstream ss(group);
        for (std::string t; std::getline(ss, t, ',');) orders.push_back(std::stoll(t));
        auto c = cohomology_counts(FiniteAbelianGroup(orders), counts_n, o.mod);
        std::cout << "|Z^n| = " << c.cocycles << ", |B^n| = " << c.coboundaries << ", |H^n| = " << c.order << "\n";
        std::cout << c.note << "\n";
        return 0;
    }
    if (!input.empty()) return run_boundary(o, boundary_example_from_json(read_file(input)), true);
    if (example.empty()) {
        for (const auto& ex : boundary_examples()) std::cout << ex.name << ": " << ex.anchor << "\n";
        return 0;
    }
    for (const auto& ex : boundary_examples())
        if (ex.name == example) return run_boundary(o, ex, true);
    throw InputError("unknown boundary example '" + example + "'");
}

// ---- scenario catalog ----

struct ChainScenario {
    std::string name;
    std::string claim;
    std::function<std::pair<bool, std::string>()> run;
};

std::pair<bool, std::string> chain_gates(const std::string& complex, int q, int64_t N, int copies,
                                         const std::string& expr, const std::string& prefix, std::size_t count) {
    auto code = from_chain_complex(shipped_complex(complex), q, N, copies);
    auto basis = cohomology_logical_basis(code);
    ExpressionPhase F(parse_expression(expr), code);
    auto r = check_stabilizer_commutation(F, code, basis);
    if (!r.pass()) return {false, "commutation " + r.status};
    auto e = extract_logical_action(F, code, basis);
    auto gates = e.poly.named_gates();
    bool ok = gates.size() == count && e.representative_independent;
    std::string s;
    for (const auto& g : gates) {
        s += (s.empty() ? "" : " ") + g;
        if (g.rfind(prefix, 0) != 0) ok = false;
    }
    return {ok, s};
}

std::vector<ChainScenario> chain_scenarios() {
    std::vector<ChainScenario> out;
    out.push_back({"t2-cz", "(1/2) a u a' gives CZ on transverse logical pairs",
                   [] { return chain_gates("cubic:2:3", 1, 2, 2, "1/2*CUP(a1,a2)", "CZ(", 2); }});
    out.push_back({"t3-ccz", "(1/2) a1 u a2 u a3 on T^3 gives CCZ on distinct-axis triples",
                   [] { return chain_gates("t3", 1, 2, 3, "1/2*CUP(a1,a2,a3)", "CCZ(", 6); }});
    out.push_back({"cp2-S", "(1/4) P(a;2) on CP^2 gives the logical S gate",
                   [] { return chain_gates("cp2", 2, 2, 1, "1/4*PONT(a1,2)", "S(", 1); }});
    out.push_back({"cube-T-gate", "the cube code has a logical T gate", [] {
                       auto bc = cube_code(2);
                       auto c = cube_gate_circuit(bc);
                       CircuitPhase F(c);
                       auto r = check_stabilizer_commutation(F, bc.code, logical_basis(bc.code));
                       Rational p = cube_logical_phase(bc, c);
                       bool ok = r.pass() && (p == Rational(1, 8) || p == Rational(7, 8));
                       return std::pair{ok, "commutation " + r.status + ", |1> phase " + p.str() + " turns"};
                   }});
    const std::vector<Rational> phases = {Rational(1, 4), Rational(7, 8), Rational(15, 16), Rational(1, 32)};
    for (int Nc = 2; Nc <= 5; ++Nc) {
        Rational want = phases[Nc - 2];
        out.push_back({"simplex-U" + std::to_string(Nc),
                       "U_" + std::to_string(Nc) + " acts on |1> by " + want.str() + " turns", [Nc, want] {
                           auto a = simplex_gate_action(Nc);
                           Rational p = (a.phase_one - a.phase_zero).frac();
                           return std::pair{p == want, p.str() + " turns (" + a.gate + ")"};
                       }});
    }
    out.push_back({"condense-t2", "Z_4 -> Z_2 condensation on T^2 gives the Z_2 toric code", [] {
                       auto T = torus_lattice(2, 2);
                       auto c = condense(from_chain_complex(T, 1, 4), 2);
                       auto z2 = from_chain_complex(T, 1, 2);
                       bool ok = same_stabilizer_group(effective_code(c), z2) && logical_dimension(c) == 4;
                       return std::pair{ok, "logical dimension " + logical_dimension(c).str()};
                   }});
    return out;
}

int cmd_scenarios(const Options& o, const std::string& run) {
    auto chains = chain_scenarios();
    auto rings = shipped_ring_scenarios();
    auto bds = boundary_examples();
    if (run.empty()) {
        for (const auto& c : chains) std::cout << "chain    " << c.name << ": " << c.claim << "\n";
        for (const auto& r : rings) std::cout << "ring     " << r.name << ": " << r.anchor << "\n";
        for (const auto& b : bds) std::cout << "boundary " << b.name << ": " << b.anchor << "\n";
        return 0;
    }
    bool all = run == "all", found = false, ok = true;
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& c : chains) {
        if (!all && c.name != run) continue;
        found = true;
        auto [pass, detail] = c.run();
        ok = ok && pass;
        std::cout << (pass ? "PASS " : "FAIL ") << c.name << "\n  claim: " << c.claim << "\n  computed: " << detail
                  << "\n";
        j.push_back({{"name", c.name}, {"pass", pass}, {"computed", detail}});
    }
    for (const auto& s : rings) {
        if (!all && s.name != run) continue;
        found = true;
        auto r = run_ring_scenario(s);
        ok = ok && r.pass;
        print_outcome(s, r);
        j.push_back({{"name", s.name}, {"pass", r.pass}, {"computed", r.poly.str()}, {"note", s.note}});
    }
    for (const auto& b : bds) {
        if (!all && b.name != run) continue;
        found = true;
        Options quiet = o;
        quiet.json_out.clear();
        int rc = run_boundary(quiet, b, false);
        ok = ok && rc == 0;
        j.push_back({{"name", b.name}, {"pass", rc == 0}});
    }
    if (!found) throw InputError("unknown scenario '" + run + "'");
    write_json(o, j.dump(1));
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Logical gates from cohomology operations on homological codes"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* s, bool expr) {
        s->add_option("--complex", o.complex, "shipped name (rp2, rp3, cp2, klein, t1..t6, cp2xcp2, cubic:n:L) or .json");
        s->add_option("--mod", o.mod, "qudit dimension / coefficient modulus");
        s->add_option("--copies", o.copies, "number of code copies");
        s->add_option("--degree", o.degree, "form degree q of the code");
        s->add_option("--seed", o.seed, "random seed");
        s->add_option("--json-out", o.json_out, "write a JSON report");
        if (expr) s->add_option("--expr", o.expr, "gate expression, e.g. 1/2*CUP(a1,a2)");
    };
    auto* build = app.add_subcommand("build", "build a complex and optionally its code");
    common(build, false);
    bool with_code = false;
    build->add_flag("--code", with_code, "also build the q-form code");
    auto* homology = app.add_subcommand("homology", "integer homology and Betti numbers");
    common(homology, false);
    auto* synth = app.add_subcommand("synthesize", "synthesize a circuit");
    common(synth, true);
    std::string cnot;
    int cube = 0;
    synth->add_option("--cnot", cnot, "CX layer between copies, e.g. 1,2");
    synth->add_option("--cube", cube, "cube code T-gate circuit of side L");
    auto* verify = app.add_subcommand("verify", "stabilizer commutation and logical action");
    common(verify, true);
    bool oracle = false, circuit = false;
    verify->add_flag("--oracle", oracle, "cross-check with the brute-force oracle (small codes)");
    verify->add_flag("--circuit", circuit, "verify the synthesized circuit instead of the expression");
    auto* suite = app.add_subcommand("suite", "property suites: pontryagin, steenrod, cartan");
    common(suite, false);
    std::string suite_name = "pontryagin";
    int n = 2, trials = 25, pdeg = 2;
    suite->add_option("--name", suite_name, "suite name");
    suite->add_option("--n", n, "Pontryagin power order");
    suite->add_option("--trials", trials, "random cocycles per check");
    suite->add_option("--cocycle-degree", pdeg, "degree of the Pontryagin argument");
    auto* ring = app.add_subcommand("ring", "ring-mode evaluation");
    common(ring, true);
    std::string scenario;
    ring->add_option("--ring", o.ring, "ring name (cp2xcp2, t3xrp5, ...) or .json");
    ring->add_option("--conn", o.conn, "connection JSON (file or inline)");
    ring->add_option("--scenario", scenario, "run a shipped ring scenario");
    auto* boundary = app.add_subcommand("boundary", "group-cohomology boundary operation");
    common(boundary, false);
    std::string example, input, group = "2,2";
    int counts_n = -1;
    boundary->add_option("--example", example, "shipped example name");
    boundary->add_option("--input", input, "boundary chain JSON file");
    boundary->add_option("--counts", counts_n, "print |H^n(G; Z_M)| for this n");
    boundary->add_option("--group", group, "factor orders for --counts, e.g. 2,2");
    auto* scen = app.add_subcommand("scenarios", "list or run the scenario catalog");
    common(scen, false);
    std::string run;
    scen->add_option("--run", run, "scenario name or all");
    auto* orc = app.add_subcommand("oracle", "brute-force logical action (at most 20 qudits)");
    common(orc, true);
    orc->add_option("--cnot", cnot, "CX layer between copies, e.g. 1,2");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        if (*build) return cmd_build(o, with_code);
        if (*homology) return cmd_homology(o);
        if (*synth) return cmd_synthesize(o, cnot, cube);
        if (*verify) return cmd_verify(o, oracle, circuit);
        if (*suite) return cmd_suite(o, suite_name, n, trials, pdeg);
        if (*ring) return cmd_ring(o, scenario);
        if (*boundary) return cmd_boundary(o, example, input, counts_n, group);
        if (*scen) return cmd_scenarios(o, run);
        if (*orc) return cmd_oracle(o, cnot);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CheckFailure& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
