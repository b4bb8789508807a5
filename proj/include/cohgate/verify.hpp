#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cohgate/code.hpp"
#include "cohgate/phase.hpp"
#include "cohgate/synth.hpp"

namespace cohgate {

struct VerifyOptions {
    std::size_t spot_checks = 100;
    uint64_t seed = 1;
    std::size_t grid_cap = std::size_t(1) << 20;
    std::size_t budget = 400'000'000;  // unit evaluations per run
    int shifts = 2;                    // coboundary-shifted re-extractions
};

// Degree, in local span coordinates, of a degree-D phase polynomial (delta = true:
// of its difference under a shift). -1 when no bound is known.
int coordinate_degree(int64_t N, int64_t M, int D, bool delta);

struct CommutationResult {
    std::string status = "pass";  // pass | fail | budget exceeded
    bool exhaustive = true;       // false: composite N beyond the grid cap
    std::size_t checks = 0, evaluations = 0, spot_checks = 0;
    std::size_t max_local_rank = 0;
    std::string method;
    std::optional<std::size_t> failing_check;
    std::string failing_label;
    std::vector<std::pair<std::size_t, int64_t>> witness;  // z on the local qudits
    int64_t delta = 0;
    std::vector<std::string> notes;

    bool pass() const { return status == "pass"; }
};

// Phase difference under every X check vanishes on every z in ker(H_Z).
CommutationResult check_stabilizer_commutation(PhaseFunction& F, const CssCode& code, const LogicalBasis& basis,
                                               const VerifyOptions& opt = {});

// Phase polynomial in logical coordinates m_i in [0, order_i): sum of
// coefficient num/M times prod_i binom(m_i, k_i). For N = 2 this is the Moebius form.
struct PhasePolynomial {
    int64_t N = 2, M = 1;
    std::vector<int64_t> orders;
    std::vector<std::string> names;
    struct Term {
        std::vector<int> exps;
        int64_t num = 0;
    };
    std::vector<Term> terms;

    static PhasePolynomial from_grid(int64_t N, int64_t M, std::vector<int64_t> orders, std::vector<int64_t> values,
                                     std::vector<std::string> names);
    int64_t eval(const std::vector<int64_t>& m) const;
    std::string str() const;
    // Named C^kR_m factors for N = 2 with a power-of-two M.
    std::vector<std::string> named_gates() const;
    bool operator==(const PhasePolynomial& o) const;
};

struct ExtractionResult {
    PhasePolynomial poly;
    std::string method;
    bool representative_independent = true;
    int shifts_checked = 0;
    std::vector<std::string> notes;
};

std::vector<std::string> default_variable_names(const CssCode& code, const LogicalBasis& basis);

ExtractionResult extract_logical_action(PhaseFunction& F, const CssCode& code, const LogicalBasis& basis,
                                        const std::vector<std::string>& names = {}, const VerifyOptions& opt = {});

// Logical action by explicit coset states (at most 20 qudits).
struct OracleResult {
    std::size_t dim = 0;
    bool logical = true;
    int64_t M = 1;
    std::vector<int64_t> diag;       // phase numerators over M, grid order
    std::vector<std::size_t> perm;   // permutation of basis states, grid order
    std::string note;
};
OracleResult brute_force_oracle(PhaseFunction& F, const CssCode& code, const LogicalBasis& basis);
OracleResult brute_force_oracle(const CliffordMap& U, const CssCode& code, const LogicalBasis& basis);
std::vector<int64_t> grid_point(std::size_t index, const std::vector<int64_t>& orders);

struct SimplexAction {
    int Nc = 0;
    Rational phase_one, phase_zero;  // turns
    std::vector<std::pair<std::string, Rational>> contributions;
    std::string gate;
};
// Bulk, boundary and hinge actions evaluated on the stored |0>, |1> configurations.
SimplexAction simplex_gate_action(int Nc);

// Phase of the cube circuit on |1> relative to |0>, in turns.
Rational cube_logical_phase(const BoundaryCode& bc, const DiagonalCircuit& c);

struct SuiteReport {
    int64_t N = 2;
    int n = 2;
    int degree = 2;
    std::map<std::string, std::pair<int, int>> checks;  // name -> (passed, run)
    std::vector<std::string> notes;
    bool all_pass() const;
};
// Closedness mod nN, lift independence, gauge invariance and the refinement
// identity of P(a; n) on random Z_N cocycles of the given even degree.
SuiteReport pontryagin_property_suite(const ComplexPtr& C, int64_t N, int n, int trials, uint64_t seed = 7,
                                      int degree = 2);

// Sq^0 = id, Sq^p f = f u f, Sq^{p+1} f = 0 and Sq^1 f = d(lift f)/2 on random
// Z_2 cocycles of every degree.
SuiteReport steenrod_property_suite(const ComplexPtr& C, int trials, uint64_t seed = 11);
// Integral Cartan identity int Sq^i(f u g) = sum_m int Sq^m f u Sq^{i-m} g, i = dim - p - q.
SuiteReport cartan_integral_suite(const ComplexPtr& C, int trials, uint64_t seed = 13);
std::string suite_report_json(const SuiteReport& r);

std::string verification_report_json(const CommutationResult& c, const std::optional<ExtractionResult>& e,
                                     const std::optional<OracleResult>& o);

}  // namespace cohgate
