#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cohgate/complex.hpp"
#include "cohgate/homology.hpp"
#include "cohgate/linalg.hpp"

namespace cohgate {

struct CodeCopy {
    ComplexPtr complex;  // null for codes built from explicit geometry (cube code)
    int q = 1;
    std::size_t offset = 0;
    std::size_t size = 0;
};

// Sparse exponent vector over global qudit indices, sorted by index.
struct Check {
    std::vector<std::pair<std::size_t, int64_t>> terms;
    std::string label;
};

// Qudit CSS code. Global qudit index = copy offset + cell index (copy-major).
struct CssCode {
    std::string name;
    int64_t N = 2;
    std::vector<CodeCopy> copies;
    std::size_t num_qudits = 0;
    std::vector<Check> x_checks, z_checks;
    int64_t condensed = 0;  // 0 if never condensed, else the current charge order
    std::vector<std::string> notes;

    std::size_t qudit(int copy, std::size_t cell) const { return copies.at(copy).offset + cell; }
};

CssCode from_chain_complex(const ComplexPtr& C, int q, int64_t N, int copies = 1);
// Copies may use different complexes and degrees.
CssCode from_copies(const std::vector<std::pair<ComplexPtr, int>>& copies, int64_t N);

struct CommutationReport {
    bool ok = true;
    std::size_t x_index = 0, z_index = 0;
    int64_t overlap = 0;
};
// Symplectic overlap of every X check with every Z check, mod N.
CommutationReport check_css_commutation(const CssCode& code);

// Representatives of ker(H_Z) / rowspan(H_X) over Z_N as global vectors.
struct LogicalBasis {
    int64_t N = 2;
    std::vector<std::vector<int64_t>> reps;
    std::vector<int64_t> orders;
    std::size_t size() const { return reps.size(); }
};
LogicalBasis logical_basis(const CssCode& code);
// Cohomology representatives per copy, laid out globally (closed complex codes).
LogicalBasis cohomology_logical_basis(const CssCode& code);
// |code space| = N^n / (|S_X| |S_Z|).
BigInt logical_dimension(const CssCode& code);

CssCode condense(const CssCode& code, int64_t ell);
bool same_stabilizer_group(const CssCode& a, const CssCode& b);
// Z_ell code on the stabilized subspace of a condensed code: each qudit keeps the
// multiples of N/ell, X^{N/ell} acts as X and Z as Z.
CssCode effective_code(const CssCode& condensed);

// Subgroup of Z_2^n, stored as a reduced echelon basis of bit masks.
struct Subgroup {
    int n = 0;
    std::vector<uint32_t> basis;

    static Subgroup span(int n, const std::vector<uint32_t>& gens);
    static Subgroup full(int n);
    Subgroup intersect(const Subgroup& o) const;
    Subgroup annihilator() const;
    bool contains(uint32_t v) const;
    bool operator==(const Subgroup& o) const { return n == o.n && basis == o.basis; }
    std::string str() const;
};

// Explicit cell data shared by the boundary codes: qubits on edges of every copy.
struct BoundaryGeometry {
    std::size_t num_vertices = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<std::vector<std::size_t>> plaquettes;  // edge ids
    std::vector<Subgroup> vertex_label, edge_label, plaquette_label;
    std::vector<std::string> vertex_name, edge_name;
};

enum class BoundaryKind { Simplex, Cube };

struct BoundaryCode {
    BoundaryKind kind = BoundaryKind::Simplex;
    int Nc = 0;
    int L = 0;  // cube side
    ComplexPtr simplex;  // simplex kind only
    BoundaryGeometry geometry;
    CssCode code;
    // Logical |1> representative: global qubit values.
    std::vector<int64_t> one_state;
    // Cube kind: edge id of (vertex, axis), -1 when the edge leaves the box.
    std::vector<int64_t> edge_lookup;

    std::size_t qubit(int copy, std::size_t edge) const { return (std::size_t)copy * geometry.edges.size() + edge; }
    int64_t cube_edge(const std::vector<int>& base, int axis) const;
};

// Label of a simplex of the Nc-simplex under the two breaking-pattern rules.
Subgroup simplex_label(const std::vector<int>& simplex, int Nc);
BoundaryCode simplex_code(int Nc);

// Cube box of side L with faces F1..F6 (F_i: x_{i-1} = 0, F_{7-i}: x_{i-1} = L).
struct CubeBox {
    int L = 2;
    std::size_t vertex(int x, int y, int z) const;
    std::vector<int> coords(std::size_t v) const;
    // Faces containing the closed cell spanned from base along the axis mask.
    std::vector<int> faces_of(const std::vector<int>& base, uint32_t axes) const;
};
Subgroup cube_face_label(int face);
BoundaryCode cube_code(int L = 2);

std::string code_to_json(const CssCode& code);

}  // namespace cohgate
