#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cohgate/errors.hpp"
#include "cohgate/linalg.hpp"

namespace cohgate {

enum class ComplexKind { Simplicial, CubicalTorus };

// Simplices of one degree, stored as flat sorted vertex tuples with a reverse index.
class SimplexTable {
public:
    SimplexTable() = default;
    SimplexTable(int k, int64_t num_vertices);

    int degree() const { return k_; }
    std::size_t size() const { return verts_.size() / (k_ + 1); }
    const int32_t* operator[](std::size_t i) const { return verts_.data() + i * (k_ + 1); }
    std::vector<int> simplex(std::size_t i) const;

    // Returns existing id or inserts.
    int64_t insert(const int32_t* v);
    int64_t find(const int32_t* v) const;
    int64_t find(const std::vector<int>& v) const;

private:
    uint64_t key(const int32_t* v) const;

    int k_ = 0;
    int64_t nv_ = 0;
    std::vector<int32_t> verts_;
    std::unordered_map<uint64_t, int64_t> index_;
};

// Cell of a periodic cubical torus: base coordinates and the set of spanned axes.
struct CubeCell {
    std::vector<int> base;
    uint32_t axes = 0;
};

class CellComplex {
public:
    std::string name;
    ComplexKind kind = ComplexKind::Simplicial;
    int dim = 0;
    // Simplicial: highest degree below dim with stored cells (dim itself is always stored).
    int stored_max = 0;
    bool pure = true;

    // Simplicial data.
    std::vector<SimplexTable> simplices;
    int64_t num_vertices = 0;

    // Cubical data.
    std::vector<int> sides;
    std::vector<std::vector<uint32_t>> axis_sets;  // per degree, increasing masks

    // boundary[k] : C_k -> C_{k-1}; boundary[0] is 0 x n_0.
    std::vector<SparseMatrix> boundary;
    std::optional<std::vector<int64_t>> orientation;

    // Product bookkeeping: factor complexes and per-vertex projections.
    std::vector<std::shared_ptr<const CellComplex>> factors;
    std::vector<std::vector<int>> vertex_projection;  // [factor][vertex]

    std::size_t num_cells(int k) const;
    bool has_cells(int k) const;
    std::vector<std::size_t> f_vector() const;
    int64_t euler_characteristic() const;

    // Cubical helpers.
    int64_t lattice_volume() const;
    CubeCell cube_cell(int k, std::size_t id) const;
    int64_t cube_index(int k, const std::vector<int>& base, uint32_t axes) const;
    std::vector<int> base_coords(int64_t idx) const;
    int64_t base_index(const std::vector<int>& base) const;

    std::vector<int> simplex(int k, std::size_t id) const { return simplices[k].simplex(id); }
    int64_t simplex_index(const std::vector<int>& v) const;
};

using ComplexPtr = std::shared_ptr<const CellComplex>;

// Builds the simplicial closure of the facets. Degrees in (max_degree, dim) are not
// stored when max_degree >= 0 is given; boundary matrices exist only between stored degrees.
ComplexPtr build_from_facets(const std::vector<std::vector<int>>& facets, const std::string& name = "",
                             int max_degree = -1);
ComplexPtr torus_lattice(int n, int L);
ComplexPtr torus_lattice(const std::vector<int>& sides);
ComplexPtr product(const ComplexPtr& A, const ComplexPtr& B, int max_degree = -1);
ComplexPtr circle(int vertices = 3);
ComplexPtr point();

// Top simplices of A x B with their product orientation, without building faces.
struct ProductTops {
    std::vector<std::vector<int>> tops;
    std::vector<int64_t> orientation;  // empty unless both factors are oriented
    std::vector<std::vector<int>> vertex_projection;
    int64_t num_vertices = 0;
};
ProductTops product_tops(const CellComplex& A, const CellComplex& B);

// Orientation by sign propagation across ridges; nullopt if non-orientable or not pure.
std::optional<std::vector<int64_t>> compute_orientation(const CellComplex& C);
ComplexPtr with_orientation(const ComplexPtr& C, std::optional<std::vector<int64_t>> orientation);

struct ValidationReport {
    bool ok = true;
    bool boundary_squared_zero = true;
    bool faces_closed = true;
    bool orientation_cycle = true;
    std::vector<std::string> failures;
};
ValidationReport validate(const CellComplex& C);

// Complex JSON: {"name", "kind": "simplicial" | "torus", "facets" | "dims", "orientation"?}.
ComplexPtr load_complex_json(const std::string& path);
ComplexPtr parse_complex_json(const std::string& text, const std::string& origin = "<string>");
std::string complex_to_json(const CellComplex& C);

// Shipped complexes by short name: rp2, rp3, cp2, klein, circle, t2, t3, ... .
ComplexPtr shipped_complex(const std::string& name);
std::string data_dir();

}  // namespace cohgate
