#pragma once

#include <optional>

#include "algd/algebroid.hpp"

namespace algd {

// --- action data conventions --------------------------------------------
// Left action of H on B: matrix nB x (nH*nB), column index h*nB + b.
// Right action of H on B: matrix nB x (nB*nH), column index b*nH + h.
// Coaction B -> B (x) H: matrix (nB*nH) x nB, row index b*nH + h.

SparseVec left_act(const Matrix& act, std::size_t nb, const SparseVec& h, const SparseVec& b);
SparseVec right_act(const Matrix& act, std::size_t nh, const SparseVec& b, const SparseVec& h);
SparseVec coact(const Matrix& coa, const SparseVec& b);  // sparse in B (x) H

// Right-right Yetter-Drinfeld (crossed) module algebra data.
struct YDModuleAlgebra {
    HopfAlgebra h;   // requires an invertible antipode
    FDAlgebra b;
    Matrix action;    // right action, nB x (nB*nH)
    Matrix coaction;  // (nB*nH) x nB

    SparseVec act(const SparseVec& a, const SparseVec& hh) const {
        return right_act(action, h.dim(), a, hh);
    }
    SparseVec coact_of(const SparseVec& a) const { return coact(coaction, a); }
};

Report check_yd(const YDModuleAlgebra& yd);

// A constructed bialgebroid with its quotients, translation data and the
// full construction-time validation report.
struct BuiltAlgebroid {
    LeftBialgebroid l;
    TensorQuotients q;
    HopfData hd;
    Report validation;
};

// Runs the axiom suite, translation-map inversion and (when a branch exists)
// the full identity suite on a freshly assembled bialgebroid, accumulating
// into out.validation. Throws the given error codes when a required branch
// is missing, and InternalInconsistency when a law fails.
void finish_build(BuiltAlgebroid& out, bool need_left, bool need_anti,
                  const std::string& left_err, const std::string& anti_err);

// --- factories ------------------------------------------------------------

// B (x) H (x) B with the diagonal action product (requires a strict left
// module-algebra action). Validates the closed-form translation lifts
// against the matrix-inverted ones.
BuiltAlgebroid connes_moscovici(const HopfAlgebra& h, const FDAlgebra& b, const Matrix& left_action);

// Cocycle-deformed variant: gamma inserts into the product; the action need
// only be a measuring compatible with gamma. Hopf branches are attempted but
// not required.
BuiltAlgebroid cm_cocycle(const HopfAlgebra& h, const FDAlgebra& b, const Matrix& left_action,
                          const TensorFunctional& gamma);

// Smash-type algebroid B # H^op of a braided-commutative YD module algebra.
BuiltAlgebroid action_algebroid(const YDModuleAlgebra& yd);

struct WeylResult {
    YDModuleAlgebra yd;
    BuiltAlgebroid alg;
    Matrix pairing;                // dual-basis pairing of H* against H
    std::optional<bool> simple;    // center = k and nondegenerate trace form
};
WeylResult weyl_algebroid(const HopfAlgebra& h, bool check_simplicity = false);

struct SelfCrossedResult {
    BuiltAlgebroid smash;   // H # H^op from the adjoint action
    BuiltAlgebroid plain;   // H (x) H^op built directly
    AlgebroidMorphism iso;  // plain -> smash
    Matrix iso_inv;
    Report morphism_report;
};
SelfCrossedResult self_crossed_algebroid(const HopfAlgebra& h);

// Cocycle smash B^e #_gamma H (trivial bundle form); gamma in Z^2_{act,as}.
BuiltAlgebroid cocycle_smash(const HopfAlgebra& h, const FDAlgebra& b, const Matrix& left_action,
                             const TensorFunctional& gamma);

struct HopfGaloisData {
    FDAlgebra p;
    HopfAlgebra h;
    Matrix coaction;      // (nP*nH) x nP
    FDAlgebra coinv;      // B with its own basis
    Matrix coinv_embed;   // nP x nB
    QuotientSpace pbp;    // P (x)_B P as a quotient of P (x) P
    std::vector<SparseVec> tau;  // canonical lift of tau(h) per H basis, in k^{nP^2}
    Report validation;
};
HopfGaloisData hopf_galois(const FDAlgebra& p, const HopfAlgebra& h, const Matrix& coaction);

struct ESResult {
    BuiltAlgebroid alg;
    Matrix subspace;  // nL x nP^2: basis of (P (x) P)^{coH} in ambient coords
};
ESResult es_algebroid(const HopfGaloisData& hg);

struct TransmutationResult {
    FDAlgebra underline;  // H with the covariantized product
    YDModuleAlgebra yd;
    BuiltAlgebroid alg;
};
TransmutationResult transmutation(const HopfAlgebra& h, const CQTStructure& r);

struct KillingResult {
    Matrix q;  // base map underline(H) -> H*
    bool factorisable = false;
    std::optional<AlgebroidMorphism> iso;  // Q (x) id when factorisable
    Report rep;
};
KillingResult killing_form(const HopfAlgebra& h, const CQTStructure& r,
                           const TransmutationResult& tr, const WeylResult& weyl);

struct TransversalData {
    std::vector<std::vector<std::size_t>> table;  // group X
    std::vector<std::size_t> sub;   // G as sorted indices into X
    std::vector<std::size_t> tra;   // M as sorted indices into X, tra[0] = identity
    // Derived maps, all indexed by positions in `sub` / `tra`.
    std::vector<std::vector<std::size_t>> tau;   // M x M -> G
    std::vector<std::vector<std::size_t>> dot;   // M x M -> M
    std::vector<std::vector<std::size_t>> actL;  // s |> u : M x G -> G
    std::vector<std::vector<std::size_t>> actR;  // s <| u : M x G -> M
};

struct BicrossResult {
    TransversalData td;
    CoquasiBialgebra h;       // kM x| k(G), basis index s*|G| + u
    FDAlgebra base;           // kG
    Matrix measuring;         // left action-like measuring of h on kG
    TensorFunctional gamma;   // H (x) H -> kG
    TensorFunctional gamma_inv;
    Report validation;
};
BicrossResult bicrossproduct_transversal(const std::vector<std::vector<std::size_t>>& table,
                                         const std::vector<std::size_t>& subgroup,
                                         const std::vector<std::size_t>& transversal,
                                         const Field& f);

struct CoquasiCMResult {
    CoquasiLeftBialgebroid cl;
    Report validation;
};
// Measuring + gamma-twisted composition law on a coquasi-bialgebra H.
CoquasiCMResult coquasi_cm(const CoquasiBialgebra& hq, const FDAlgebra& b,
                           const Matrix& measuring, const TensorFunctional& gamma,
                           const TensorFunctional& gamma_inv);

CoquasiCMResult coquasi_es(const HopfGaloisData& hg, const TensorFunctional& phi_p);

}  // namespace algd
