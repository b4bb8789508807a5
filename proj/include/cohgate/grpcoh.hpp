#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cohgate/code.hpp"
#include "cohgate/linalg.hpp"

namespace cohgate {

// Z_{N_1} x ... x Z_{N_r}; elements are residue tuples, indexed mixed-radix with
// the first factor most significant.
struct FiniteAbelianGroup {
    std::vector<int64_t> orders;

    FiniteAbelianGroup() = default;
    explicit FiniteAbelianGroup(std::vector<int64_t> o);

    std::size_t size() const;
    std::size_t rank() const { return orders.size(); }
    std::vector<int64_t> element(std::size_t i) const;
    std::size_t index(const std::vector<int64_t>& g) const;
    std::vector<int64_t> add(const std::vector<int64_t>& a, const std::vector<int64_t>& b) const;
    bool valid(const std::vector<int64_t>& g) const;
    std::string str() const;
};

// Subgroup given by a generator matrix; elements are enumerated by closure.
struct AbelianSubgroup {
    FiniteAbelianGroup G;
    std::vector<std::vector<int64_t>> generators;
    std::vector<std::size_t> elements;               // indices in G, sorted, identity first
    std::vector<std::vector<std::size_t>> sum;       // local addition table

    static AbelianSubgroup generated(const FiniteAbelianGroup& G, const std::vector<std::vector<int64_t>>& gens);
    static AbelianSubgroup whole(const FiniteAbelianGroup& G);

    std::size_t size() const { return elements.size(); }
    std::vector<int64_t> element(std::size_t local) const { return G.element(elements[local]); }
    std::optional<std::size_t> local(std::size_t g_index) const;
    bool contains(const std::vector<int64_t>& g) const;
    bool contains(const AbelianSubgroup& H) const;
    AbelianSubgroup intersect(const AbelianSubgroup& o) const;
    bool operator==(const AbelianSubgroup& o) const { return G.orders == o.G.orders && elements == o.elements; }
    std::string str() const;
};

// Z_2^n subgroup from a bit-mask label (bit j is factor j).
AbelianSubgroup from_z2_label(const Subgroup& s);

// Inhomogeneous bar cochain K^n -> Z_M. Read as U(1) valued via value / M.
struct GroupCochain {
    AbelianSubgroup domain;
    int degree = 0;
    int64_t modulus = 2;
    std::vector<int64_t> values;  // |K|^degree entries, first argument most significant

    static GroupCochain zero(const AbelianSubgroup& K, int n, int64_t M);
    static GroupCochain from_function(const AbelianSubgroup& K, int n, int64_t M,
                                      const std::function<int64_t(const std::vector<std::vector<int64_t>>&)>& f);
    // num * [g_1]_{c_1} * ... * [g_n]_{c_n} mod M, [x]_c the least residue of component c.
    // For Z_2 factors this is the cup product of the coordinate cocycles.
    static GroupCochain lift_product(const AbelianSubgroup& K, const std::vector<int>& comps, int64_t num,
                                     int64_t M);

    int64_t at(const std::vector<std::size_t>& local) const;
    std::size_t table_size() const { return values.size(); }
    GroupCochain restrict_to(const AbelianSubgroup& H) const;
    // Same U(1) values over Z_{M2}; M must divide M2.
    GroupCochain rescale(int64_t M2) const;
    GroupCochain operator+(const GroupCochain& o) const;
    GroupCochain operator-(const GroupCochain& o) const;
    bool is_zero() const;
    bool is_normalized() const;  // vanishes whenever an argument is the identity
    bool operator==(const GroupCochain& o) const;
    std::string str() const;  // nonzero entries, one per line
};

// Table cap for any cochain built here.
constexpr std::size_t kGroupTableCap = std::size_t(1) << 20;

GroupCochain bar_coboundary(const GroupCochain& f);
GroupCochain group_cup(const GroupCochain& f, const GroupCochain& g);
bool is_group_cocycle(const GroupCochain& f);

struct Trivialization {
    bool solvable = false;
    GroupCochain alpha;   // d alpha = omega|_K over Z_{M'}
    BigInt cocycles;      // |Z^{n-1}(K; Z_M')|: alpha is determined up to adding one of these
    BigInt classes;       // |H^{n-1}(K; Z_M')|
    std::string note;
};

// Solves d alpha = omega|_K over Z_{M'}; omega's modulus must divide M'.
Trivialization trivialization_solve(const GroupCochain& omega, const AbelianSubgroup& K, int64_t Mp);
// True when a - b is a cocycle (same domain, degree, modulus).
bool same_up_to_cocycle(const GroupCochain& a, const GroupCochain& b);

struct BoundaryStep {
    AbelianSubgroup K;
    int64_t modulus = 4;
    std::optional<GroupCochain> choice;  // pins the image at this step

    BoundaryStep() = default;
    BoundaryStep(AbelianSubgroup k, int64_t m, std::optional<GroupCochain> c = std::nullopt)
        : K(std::move(k)), modulus(m), choice(std::move(c)) {}
};

struct BoundaryChain {
    bool solvable = false;
    int obstructed_step = -1;            // first step with no solution, 0-based
    std::vector<GroupCochain> images;    // images[0] = omega, images[i] = B^i(omega)
    std::optional<bool> reaches_target;  // set when a target for the last image was given
    std::string note;

    const GroupCochain& result() const { return images.back(); }
};

// Iterated boundary operation. All steps are solved jointly so that each image
// restricts to an exact cochain on the next subgroup; unpinned steps range over
// every choice. With a target, the last image is pinned to it and reaches_target
// reports whether some chain of choices ends there.
BoundaryChain iterate_boundary(const GroupCochain& omega, const std::vector<BoundaryStep>& steps,
                               const std::optional<GroupCochain>& target = std::nullopt);

struct CohomologyCount {
    BigInt cocycles;      // |Z^n(G; Z_M)|
    BigInt coboundaries;  // |B^n(G; Z_M)|
    BigInt order;         // |H^n(G; Z_M)|
    BigInt from_u1_table; // |H^{n-1}(G;U(1)) (x) Z_M| * |H^n(G;U(1))[M]|, 0 when the table has no row
    std::string note;
};

CohomologyCount cohomology_counts(const FiniteAbelianGroup& G, int n, int64_t M);

// Cyclic factor orders of H^m(BG, U(1)) for G = prod Z_{N_i}, m = 1..4.
std::vector<int64_t> u1_cohomology_factors(const std::vector<int64_t>& orders, int m);

// Built-in boundary examples for the CLI and acceptance run.
struct BoundaryExample {
    std::string name;
    std::string anchor;
    GroupCochain omega;
    std::vector<BoundaryStep> steps;
    GroupCochain expected;  // expected last image, up to the chain's ambiguity
};
std::vector<BoundaryExample> boundary_examples();
BoundaryExample boundary_example_from_json(const std::string& text);
std::string boundary_chain_json(const BoundaryChain& c, const std::optional<GroupCochain>& expected = std::nullopt);

}  // namespace cohgate
