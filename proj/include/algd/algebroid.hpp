#pragma once

#include <optional>
#include <string>
#include <vector>

#include "algd/hopf.hpp"
#include "algd/linalg.hpp"
#include "algd/report.hpp"

namespace algd {

// Left bialgebroid over a base algebra B: total algebra L, source s (algebra
// map) and target t (anti-algebra map) with commuting images, a coproduct
// lift into the plain tensor square, and a B-valued counit. All downstream
// formulas evaluate on lifts and compare classes in the appropriate balanced
// quotient.
struct LeftBialgebroid {
    FDAlgebra base;   // B
    FDAlgebra total;  // L
    Matrix src;       // dim L x dim B
    Matrix tgt;       // dim L x dim B
    std::vector<SparseVec> cop;  // coproduct lift of each basis element, in k^{n^2}
    Matrix counit;    // dim B x dim L

    Field field() const { return total.field; }
    std::size_t n() const { return total.dim; }
    std::size_t nb() const { return base.dim; }

    SparseVec s_of(const SparseVec& b) const { return src.apply(b); }
    SparseVec t_of(const SparseVec& b) const { return tgt.apply(b); }
    SparseVec eps(const SparseVec& x) const { return counit.apply(x); }
    SparseVec unit() const { return total.unit; }

    SparseVec cop_lift(const SparseVec& x) const;            // k^{n^2}
    SparseVec cop_iterated(const SparseVec& x, std::size_t legs) const;  // k^{n^legs}

    // eps(X1 X2 ... Xm) evaluated bracketing-independently via
    // eps(X1 t(eps(X2 t(eps(...))))).
    SparseVec eps_of_product(const std::vector<SparseVec>& xs) const;
};

// The four balanced tensor quotients of the ambient L tensor L.
struct TensorQuotients {
    QuotientSpace qB;     // t(a)X (x) Y  -  X (x) s(a)Y
    QuotientSpace qBopT;  // X t(a) (x) Y  -  X (x) t(a)Y
    QuotientSpace qBopS;  // s(a)X (x) Y  -  X (x) Y s(a)
    QuotientSpace qBe;    // X s(a) (x) Y - X (x) s(a)Y  and  X t(a) (x) Y - X (x) t(a)Y
};

// One leg-action on a tensor-power basis: multiply leg `leg` by s(a) or t(a)
// on the chosen side. Relation generators are differences of two of these.
struct LegAction {
    std::size_t leg;
    bool left;     // multiply on the left
    bool use_src;  // s(a) if true, t(a) if false
};

QuotientSpace build_leg_quotient(const LeftBialgebroid& l, std::size_t legs,
                                 const std::vector<std::pair<LegAction, LegAction>>& families);
TensorQuotients build_quotients(const LeftBialgebroid& l);

// Translation data: the inverses of lambda (X (x) Y -> X1 (x) X2 Y) and of
// mu (X (x) Y -> Y1 X (x) Y2) on quotient coordinates, plus canonical lifts
// of the translation elements per basis element.
struct HopfData {
    bool left_ok = false;
    Matrix lambda_q, lambda_inv_q;
    std::vector<SparseVec> plus_minus;  // lift of X+ (x) X- in k^{n^2}
    std::string left_detail;

    bool anti_ok = false;
    Matrix mu_q, mu_inv_q;
    std::vector<SparseVec> minus_plus;  // lift of X[-] (x) X[+] in k^{n^2}
    std::string anti_detail;

    // Linear extensions over arbitrary elements.
    SparseVec pm(const LeftBialgebroid& l, const SparseVec& x) const;
    SparseVec mp(const LeftBialgebroid& l, const SparseVec& x) const;
};

struct AlgebroidMorphism {
    Matrix total_map;  // L -> L'
    Matrix base_map;   // B -> B'
};

// Functional-valued structure: a B-valued functional on L^{otimes legs}.
struct BFunctional {
    std::size_t legs = 2;
    Matrix mat;  // dim B x n^legs

    SparseVec eval(const SparseVec& tensor) const { return mat.apply(tensor); }
    SparseVec eval2(const LeftBialgebroid& l, const SparseVec& x, const SparseVec& y) const {
        return mat.apply(tensor2(x, y, l.n()));
    }
    SparseVec eval3(const LeftBialgebroid& l, const SparseVec& x, const SparseVec& y,
                    const SparseVec& z) const {
        return mat.apply(tensor3(x, y, z, l.n()));
    }
};

struct CoquasiLeftBialgebroid {
    LeftBialgebroid core;  // total.associative may be false
    BFunctional assoc;     // 3-leg functional
    BFunctional assoc_inv;
};

// --- lift calculus helpers ---------------------------------------------

// Factorwise product of two 2-leg lifts.
SparseVec mul_pairs(const LeftBialgebroid& l, const SparseVec& a, const SparseVec& b);
// Multiply one leg of a lift by an element of L (on the chosen side).
SparseVec mul_leg(const LeftBialgebroid& l, const SparseVec& lift, std::size_t legs,
                  std::size_t leg, const SparseVec& elt, bool elt_on_left);
// Apply the coproduct lift to one leg, expanding an m-leg lift to m+1 legs.
SparseVec cop_on_leg(const LeftBialgebroid& l, const SparseVec& lift, std::size_t legs,
                     std::size_t leg);

// Canonical convolution unit of the functional algebra on L^{otimes legs}:
// (X1,..,Xm) -> eps(X1 ... Xm).
BFunctional unit_functional(const LeftBialgebroid& l, std::size_t legs);
// Convolution product f * g (X,..) = f(X_(1),..) g(X_(2),..) in B.
BFunctional conv_mul(const LeftBialgebroid& l, const BFunctional& f, const BFunctional& g);
// Solve f * g = unit and verify g * f = unit.
std::optional<BFunctional> conv_inverse(const LeftBialgebroid& l, const BFunctional& f);

// --- checks -------------------------------------------------------------

Report check_bialgebroid(const LeftBialgebroid& l);
HopfData make_hopf(const LeftBialgebroid& l, const TensorQuotients& q);
Report check_hopf_identities(const LeftBialgebroid& l, const TensorQuotients& q,
                             const HopfData& hd);
// Morphism suite between two bialgebroids (automorphism when l1 == l2).
Report check_morphism(const LeftBialgebroid& l1, const LeftBialgebroid& l2,
                      const AlgebroidMorphism& m);
inline Report check_automorphism(const LeftBialgebroid& l, const AlgebroidMorphism& m) {
    return check_morphism(l, l, m);
}
Report check_coquasi_algebroid(const CoquasiLeftBialgebroid& cl);

// Builds a left bialgebroid with base k = the ground field from a Hopf
// algebra (s = t = unit embedding); useful both as a test oracle and for the
// ordinary-Hopf corner cases.
LeftBialgebroid bialgebroid_over_field(const HopfAlgebra& h);

}  // namespace algd
