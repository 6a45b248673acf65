#pragma once

#include <optional>
#include <string>
#include <vector>

#include "algd/linalg.hpp"
#include "algd/report.hpp"

namespace algd {

// Finite-dimensional algebra given by structure constants: e_i e_j =
// sum_k mul[i][j] (a sparse vector over the basis). `associative` records
// whether the product is required (and verified) to associate; coquasi
// totals carry `false`.
struct FDAlgebra {
    Field field;
    std::size_t dim = 0;
    std::vector<std::string> labels;
    std::vector<std::vector<SparseVec>> mul;  // mul[i][j] = e_i * e_j
    SparseVec unit;
    bool associative = true;

    SparseVec multiply(const SparseVec& x, const SparseVec& y) const;
    SparseVec basis(std::size_t i) const { return SparseVec::unit(i, field); }
    std::string label(std::size_t i) const {
        return i < labels.size() ? labels[i] : "e" + std::to_string(i);
    }

    Report check(bool check_assoc = true) const;  // unit laws + associativity
    // Left-regular representation of x.
    Matrix left_regular(const SparseVec& x) const;
    std::optional<SparseVec> invert_element(const SparseVec& x) const;
    Matrix center_basis() const;  // rows span {z : zx = xz for all x}
    // Semisimplicity probe: trace form of the left-regular representation.
    bool trace_form_nondegenerate() const;
};

// Finite-dimensional coalgebra: Delta e_i is a sparse vector over the
// tensor-square basis (row-major index a*dim+b), counit a row vector.
struct FDCoalgebra {
    Field field;
    std::size_t dim = 0;
    std::vector<SparseVec> cop;   // cop[i] in k^{dim^2}
    std::vector<Scalar> counit;   // length dim

    SparseVec coproduct(const SparseVec& x) const;
    Scalar counit_of(const SparseVec& x) const;
    // Iterated coproduct with m legs (m >= 1): Delta^{m-1} as a sparse
    // vector over k^{dim^m}, using (Delta tensor id^..) o ... composition.
    SparseVec iterated(const SparseVec& x, std::size_t legs) const;

    Report check() const;  // coassociativity + counit laws
};

struct HopfAlgebra {
    FDAlgebra alg;
    FDCoalgebra coa;
    Matrix antipode;
    std::optional<Matrix> antipode_inv;

    Field field() const { return alg.field; }
    std::size_t dim() const { return alg.dim; }
    Report check() const;  // bialgebra + antipode axioms
    const Matrix& inverse_antipode() const;  // throws if absent

    SparseVec apply_antipode(const SparseVec& x) const { return antipode.apply(x); }
};

// Functional on a tensor power of a coalgebra with values in an algebra,
// stored as a (codomain dim) x (dim^legs) matrix.
struct TensorFunctional {
    std::size_t legs = 1;
    Matrix mat;  // codomain-dim x dim^legs

    SparseVec eval(const SparseVec& tensor) const { return mat.apply(tensor); }
};

// Coquasi-bialgebra: coalgebra + not-necessarily-associative algebra whose
// product/unit are coalgebra maps, with an invertible normalised associator
// functional phi on H^{otimes 3}.
struct CoquasiBialgebra {
    FDAlgebra alg;  // associative flag may be false
    FDCoalgebra coa;
    TensorFunctional phi;      // scalar-valued: mat is 1 x dim^3
    TensorFunctional phi_inv;

    Field field() const { return alg.field; }
    std::size_t dim() const { return alg.dim; }
};

// Coquasitriangular structure on a Hopf algebra: functionals R, R^{-1} on
// H tensor H (1 x dim^2 matrices).
struct CQTStructure {
    TensorFunctional r;
    TensorFunctional r_inv;
};

// --- constructors -----------------------------------------------------

// Validates that `table` is a group multiplication table with identity at
// index 0, then builds the group Hopf algebra kG.
HopfAlgebra group_algebra(const std::vector<std::vector<std::size_t>>& table, const Field& f);
// Function Hopf algebra k(G) on the same table (pointwise product of
// delta-functions, coproduct dual to the group law).
HopfAlgebra function_algebra(const std::vector<std::vector<std::size_t>>& table, const Field& f);

void check_group_table(const std::vector<std::vector<std::size_t>>& table);  // throws NotAGroup

// Assembles a Hopf algebra from structure constants. When no antipode is
// supplied it is solved as the convolution inverse of the identity (throws
// NotHopf when none exists); the inverse antipode is obtained by matrix
// inversion when it exists.
HopfAlgebra assemble_hopf(const FDAlgebra& alg, const FDCoalgebra& coa,
                          const std::optional<Matrix>& antipode = std::nullopt);

// Dual Hopf algebra H* together with the dual-basis pairing matrix.
std::pair<HopfAlgebra, Matrix> dual_hopf(const HopfAlgebra& h);

// Convolution inverse of f: C^{otimes legs} -> A (A an algebra with Delta on
// C the given coalgebra). Returns nullopt when not invertible (or when a
// one-sided inverse fails the other side).
std::optional<TensorFunctional> convolution_inverse(const TensorFunctional& f,
                                                    const FDCoalgebra& domain,
                                                    const FDAlgebra& codomain);

Report check_coquasitriangular(const HopfAlgebra& h, const CQTStructure& r);
Report check_coquasi_bialgebra(const CoquasiBialgebra& h);

// --- tensor helpers (shared across modules) ----------------------------

// Index helpers for row-major tensor-power coordinates.
inline std::size_t tpair(std::size_t i, std::size_t j, std::size_t n) { return i * n + j; }
SparseVec tensor2(const SparseVec& x, const SparseVec& y, std::size_t n);
SparseVec tensor3(const SparseVec& x, const SparseVec& y, const SparseVec& z, std::size_t n);
// Applies an algebra product legwise: contracts a vector in k^{n^2} to k^n.
SparseVec contract_mul(const FDAlgebra& a, const SparseVec& t2);

}  // namespace algd
