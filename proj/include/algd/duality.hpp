#pragma once

#include "algd/cohomology.hpp"

namespace algd {

// Finite dual of a left bialgebroid on the space of right-linear functionals
// sigma: L -> B (sigma(t(a)X) = sigma(X) a). Elements of the dual are stored
// in coordinates over a deterministically computed basis of that space.
struct RightDualResult {
    LeftBialgebroid dual;                // Lambda as a bialgebroid over the same base
    std::vector<Matrix> basis;           // basis functionals, each nb x nL
    std::vector<SparseVec> dual_elems;   // x_i in L (coordinates in L)
    std::vector<SparseVec> dual_funcs;   // x^i in Lambda coordinates
    // Evaluation pairing <sigma | X> for sigma in Lambda coordinates.
    SparseVec pair(const LeftBialgebroid& l, const SparseVec& sigma, const SparseVec& x) const;
};

// Solves the reconstruction identity X = sum t(x^i(X)) x_i with x_i the full
// basis of L; throws NotLeftFinite when no dual basis exists.
RightDualResult right_dual(const LeftBialgebroid& l);

struct LeftDualResult {
    LeftBialgebroid dual;       // the left-finite dual of Lambda
    std::vector<Matrix> basis;  // basis of left-linear functionals on Lambda
};
// Left dual of a right-finite bialgebroid, plus the canonical biduality map
// from `original` when supplied.
LeftDualResult left_dual(const LeftBialgebroid& lambda, const LeftBialgebroid* original);

// Structure-tensor equality of the bidual with the original, through the
// canonical identification.
Report biduality_check(const LeftBialgebroid& l);

// Pairing identities of the dual pair (checked on all basis tuples).
Report check_dual_pairing(const LeftBialgebroid& l, const RightDualResult& rd);

// The commuting square relating mu on the dual with the pullback of lambda:
// phi o mu = lambda^* o psi on the dual-side balanced products, all four
// maps bijective; also verifies that the dual is an anti-left Hopf algebroid.
Report dual_hopf_check(const LeftBialgebroid& l, const TensorQuotients& q, const HopfData& hd,
                       const RightDualResult& rd);

// --- in-algebroid cochains and cocycles -------------------------------------

// Counital invertible elements commuting with the source/target images; the
// grouplike ones (Delta U = U (x) U in the balanced square) form Z^1.
struct InElement {
    SparseVec u;
    SparseVec u_inv;
    bool grouplike = false;
};
Report check_in_c1(const LeftBialgebroid& l, const TensorQuotients& q, const SparseVec& u);
InElement make_in_element(const LeftBialgebroid& l, const TensorQuotients& q, const SparseVec& u);
// The translation-element inverse formulas, checked against the algebra
// inverse: t(eps(U+))U- on the left branch, s(eps(U[+]))U[-] on the anti
// branch.
Report inplace_inverse_check(const LeftBialgebroid& l, const TensorQuotients& q,
                             const HopfData& hd, const InElement& u);
std::vector<InElement> enumerate_in_c1(const LeftBialgebroid& l, const TensorQuotients& q,
                                       std::uint64_t limit);

// Counital invertible coproduct 2-cocycles F in L (x)_B L (stored as lifts).
struct InCocycle {
    SparseVec f;      // lift in k^{n^2}
    SparseVec f_inv;  // lift of the inverse in the balanced-square algebra
};
Report check_in_cocycle(const LeftBialgebroid& l, const TensorQuotients& q, const InCocycle& f);
// Solves for the inverse inside the Takeuchi subspace; nullopt if singular.
std::optional<SparseVec> solve_pair_inverse(const LeftBialgebroid& l, const TensorQuotients& q,
                                            const SparseVec& f);
InCocycle in_coboundary(const LeftBialgebroid& l, const InElement& u);
InCocycle gauge_in_cocycle(const LeftBialgebroid& l, const InCocycle& f, const InElement& u);
std::vector<InCocycle> enumerate_in_cocycles(const LeftBialgebroid& l, const TensorQuotients& q,
                                             std::uint64_t limit);

// Coproduct twist L_F (same product, Delta^F = F Delta F^{-1}); validates the
// axioms, inverts the twisted translation maps and compares them with the
// explicit formulas built from the untwisted ones.
BuiltAlgebroid twist_coproduct(const LeftBialgebroid& l, const TensorQuotients& q,
                               const HopfData& hd, const InCocycle& f);

// --- duality bridges ------------------------------------------------------------

// Gamma_F(X (x) Y) = <F^a | X t<F_a | Y>> from a cocycle on the dual; returns
// the pair (Gamma_{F^{-1}}, Gamma_F) as a cotwist cocycle on L.
TwoCocycle dual_two_cocycle_bridge(const LeftBialgebroid& l, const RightDualResult& rd,
                                   const InCocycle& f);

// --- quasi-bialgebroids ------------------------------------------------------------

struct QuasiBialgebroid {
    LeftBialgebroid core;  // coproduct need not be coassociative
    SparseVec assoc;       // invertible counital 3-cocycle lift in k^{n^3}
    SparseVec assoc_inv;
};
Report check_quasi_bialgebroid(const QuasiBialgebroid& q);
QuasiBialgebroid quasi_twist(const QuasiBialgebroid& q, const InCocycle& f);
// Dual of a left-finite coquasi-bialgebroid is a quasi-bialgebroid.
QuasiBialgebroid dual_of_coquasi(const CoquasiLeftBialgebroid& cl);

}  // namespace algd
