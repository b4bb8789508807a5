#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cohgate/cochain.hpp"
#include "cohgate/complex.hpp"
#include "cohgate/linalg.hpp"

namespace cohgate {

struct HomologyGroup {
    int64_t rank = 0;
    std::vector<BigInt> torsion;  // invariant factors > 1
    std::string str() const;
};

// H_k(C; Z) for all k up to dim via Smith normal form of the boundary matrices.
std::vector<HomologyGroup> integer_homology(const CellComplex& C);
// Betti numbers over Z_p, p prime, by sparse elimination.
std::vector<int64_t> betti_mod_p(const CellComplex& C, int64_t p);

std::size_t rank_mod_p(const SparseMatrix& A, int64_t p);

// Representatives of ker(A) / span(columns of image) over Z_N. A has one column
// per coordinate; image has one row per coordinate.
ModuleBasis kernel_quotient(const SparseMatrix& A, const SparseMatrix& image, int64_t N);

struct CohomologyBasis {
    int degree = 0;
    int64_t N = 2;
    std::vector<Cochain> reps;
    std::vector<int64_t> orders;  // order of each representative's class
    std::size_t rank() const { return reps.size(); }
};

// Representatives of H^q(C; Z_N). Prime N: sparse elimination in cell order;
// composite N: Smith normal form over Z, then reduction.
CohomologyBasis cohomology_basis(const ComplexPtr& C, int q, int64_t N);

struct CoboundaryCheck {
    bool is_coboundary = false;
    std::optional<Cochain> witness;  // g with dg = f
};
CoboundaryCheck is_coboundary(const Cochain& f);

// Tensor of integrals of cup products, one index per basis (row-major).
struct PairingTensor {
    std::vector<std::size_t> shape;
    std::vector<int64_t> values;
    int64_t at(const std::vector<std::size_t>& idx) const;
};
// `pattern` combines CONST(x1), ..., CONST(xk); null means CUP(x1, ..., xk).
PairingTensor pairing_matrix(const ComplexPtr& C, const std::vector<CohomologyBasis>& bases,
                             const ExprPtr& pattern = nullptr);

// Generator of H^1(circle; Z) on a circle complex: value 1 on the closing edge (0 n-1).
Cochain circle_generator(const ComplexPtr& circle, int64_t M);
// On an iterated product ((S x S) x S) ... of circles: the pullback of the circle
// generator along the projection to coordinate `axis` (0-based, leftmost first).
Cochain torus_generator(const ComplexPtr& torus, int axis, int64_t M);

}  // namespace cohgate
