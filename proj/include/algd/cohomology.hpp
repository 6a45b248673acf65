#pragma once

#include <cstdint>
#include <optional>

#include "algd/constructions.hpp"

namespace algd {

// --- cohomological objects ------------------------------------------------

// A bisection is a unital map L -> B whose base map (sigma o s on the left
// side, sigma o t on the right side) is an algebra automorphism, multiplied
// by the side-specific convolution product.
struct Bisection {
    Matrix sigma;   // nb x nL
    bool left = true;
    Matrix base;    // sigma o s (left) or sigma o t (right)
    Matrix base_inv;
};

struct ExtCochain {
    Matrix u;      // nb x nL
    Matrix u_inv;  // convolution inverse
    bool vertical_bisection = false;  // member of Z^1(L, B)
};

struct TwoCocycle {
    BFunctional gamma;      // 2-leg functional on L
    BFunctional gamma_inv;
};

struct ActionCocycle {
    Matrix rho;  // nb x nH
    Matrix psi;  // b -> b0 rho(b1)
    Matrix psi_inv;
};

struct SigmaCochain {
    BFunctional sigma;
    BFunctional sigma_inv;
};

// --- bisection group --------------------------------------------------------

Report check_bisection(const LeftBialgebroid& l, const Matrix& sigma, bool left);
Bisection make_bisection(const LeftBialgebroid& l, const Matrix& sigma, bool left);  // throws on invalid
Matrix bisection_mul(const LeftBialgebroid& l, const Matrix& a, const Matrix& b, bool left);
Matrix bisection_inv(const LeftBialgebroid& l, const HopfData& hd, const Bisection& s);
AlgebroidMorphism ad_automorphism(const LeftBialgebroid& l, const HopfData& hd,
                                  const Bisection& s);
Matrix counit_bisection(const LeftBialgebroid& l);  // eps as a matrix

// Crossed-module laws on finite supplied sets of bisections/automorphisms.
Report two_group_check(const LeftBialgebroid& l, const HopfData& hd,
                       const std::vector<Bisection>& bisections,
                       const std::vector<AlgebroidMorphism>& autos);

// --- gauge cochains and cotwists -------------------------------------------

struct ExtCochainResult {
    bool valid = false;
    std::string why;
    ExtCochain cochain;
};
ExtCochainResult check_ext_cochain(const LeftBialgebroid& l, const Matrix& u);

TwoCocycle coboundary(const LeftBialgebroid& l, const ExtCochain& u);
Report check_two_cocycle(const LeftBialgebroid& l, const TwoCocycle& g);
TwoCocycle gauge(const LeftBialgebroid& l, const TwoCocycle& g, const ExtCochain& u);

// Cotwisted bialgebroid L^Gamma (same coring, deformed product), fully
// revalidated; when `u` is supplied the gauge isomorphism Ad_U into the
// gauged twist is also checked.
BuiltAlgebroid twist(const LeftBialgebroid& l, const TwoCocycle& g);
Matrix ad_gauge_map(const LeftBialgebroid& l, const ExtCochain& u);  // Ad_U as a matrix

// Coquasi twist by a unital invertible Sigma, and its 3-cocycle boundary on
// an ordinary bialgebroid.
Report check_sigma_cochain(const LeftBialgebroid& l, const SigmaCochain& s);
CoquasiCMResult coquasi_twist(const CoquasiLeftBialgebroid& cl, const SigmaCochain& s);
BFunctional sigma_boundary(const LeftBialgebroid& l, const SigmaCochain& s);

// --- action 1-cocycles -------------------------------------------------------

Report check_action_cocycle(const YDModuleAlgebra& yd, const Matrix& rho);
ActionCocycle make_action_cocycle(const YDModuleAlgebra& yd, const Matrix& rho);
ActionCocycle action_mul(const YDModuleAlgebra& yd, const ActionCocycle& a,
                         const ActionCocycle& b);
ActionCocycle action_inv(const YDModuleAlgebra& yd, const ActionCocycle& a);
Matrix counit_action_cocycle(const YDModuleAlgebra& yd);

// --- enumeration (finite fields) --------------------------------------------

std::uint64_t default_enumeration_limit();  // 2^20, overridable via ALGD_LIMIT

std::vector<Bisection> enumerate_bisections(const LeftBialgebroid& l, bool left,
                                            std::uint64_t limit, std::size_t parallel = 1);
std::vector<ExtCochain> enumerate_ext_cochains(const LeftBialgebroid& l, std::uint64_t limit,
                                               std::size_t parallel = 1);
std::vector<TwoCocycle> enumerate_two_cocycles(const LeftBialgebroid& l, std::uint64_t limit,
                                               std::size_t parallel = 1);
// Unital convolution-invertible 2-leg functionals obeying the linear
// cochain laws (the cocycle condition itself is not imposed).
std::vector<SigmaCochain> enumerate_sigma_cochains(const LeftBialgebroid& l,
                                                   std::uint64_t limit,
                                                   std::size_t parallel = 1);
std::vector<ActionCocycle> enumerate_action_cocycles(const YDModuleAlgebra& yd,
                                                     std::uint64_t limit,
                                                     std::size_t parallel = 1);
// Counital (counit_row * x = 1) invertible elements of an algebra.
std::vector<SparseVec> enumerate_counital_invertibles(const FDAlgebra& a,
                                                      const std::vector<Scalar>& counit_row,
                                                      std::uint64_t limit);
// Unital algebra automorphisms; optionally restricted to counital ones.
std::vector<Matrix> enumerate_algebra_autos(const FDAlgebra& a,
                                            const std::vector<Scalar>* counit_row,
                                            std::uint64_t limit);
// Rational-field fallback for small split commutative semisimple algebras:
// automorphisms permute the primitive idempotents.
std::vector<Matrix> algebra_autos_split_commutative(const FDAlgebra& a);

// Gauge-orbit partition of an enumerated Z^2 set under an enumerated C^1 set.
std::vector<std::vector<std::size_t>> h2_orbits(const LeftBialgebroid& l,
                                                const std::vector<TwoCocycle>& z2,
                                                const std::vector<ExtCochain>& c1);

// --- dictionaries -------------------------------------------------------------

// Action algebroid B # H^op.
Matrix dict_action_rho_to_right_bisection(const YDModuleAlgebra& yd, const ActionCocycle& a);
Matrix dict_action_rho_to_left_bisection(const YDModuleAlgebra& yd, const ActionCocycle& a);
Matrix dict_action_bisection_to_rho(const YDModuleAlgebra& yd, const Matrix& sigma);
TwoCocycle dict_action_gamma_to_two_cocycle(const YDModuleAlgebra& yd,
                                            const TensorFunctional& gamma,
                                            const TensorFunctional& gamma_inv);
// C^1_{<|,ver} membership (laws only; convolution invertibility is solved).
Report check_action_c1(const YDModuleAlgebra& yd, const Matrix& rho);
Matrix dict_action_c1_to_ext_cochain(const YDModuleAlgebra& yd, const Matrix& rho);

// Cocycle smash B^e # H.
Matrix dict_smash_u_to_ext_cochain(const HopfAlgebra& h, const FDAlgebra& b, const Matrix& act,
                                   const Matrix& u);  // u: nb x nH
Matrix dict_smash_ext_cochain_to_u(const HopfAlgebra& h, const FDAlgebra& b, const Matrix& big_u);
TwoCocycle dict_smash_gamma_to_two_cocycle(const HopfAlgebra& h, const FDAlgebra& b,
                                           const Matrix& act, const TensorFunctional& gamma,
                                           const TensorFunctional& gamma_inv);
TensorFunctional dict_smash_two_cocycle_to_gamma(const HopfAlgebra& h, const FDAlgebra& b,
                                                 const BFunctional& g);
Report check_smash_z1(const HopfAlgebra& h, const FDAlgebra& b, const Matrix& act,
                      const Matrix& u);
// Boundary on the small side: du(h,g) = u^{-1}(h1)(h2 |> u^{-1}(g1)) u(h3 g2).
TensorFunctional smash_boundary(const HopfAlgebra& h, const FDAlgebra& b, const Matrix& act,
                                const Matrix& u, const Matrix& u_inv);

// Ehresmann-Schauenburg L(P, H).
Matrix dict_es_gauge_to_left_bisection(const HopfGaloisData& hg, const Matrix& subspace,
                                       const Matrix& gauge);  // F: nP x nP
Matrix dict_es_left_bisection_to_gauge(const HopfGaloisData& hg, const Matrix& subspace,
                                       const LeftBialgebroid& l, const Matrix& sigma);
Matrix dict_es_gauge_to_right_bisection(const HopfGaloisData& hg, const Matrix& subspace,
                                        const Matrix& gauge);
Matrix dict_es_right_bisection_to_gauge(const HopfGaloisData& hg, const Matrix& subspace,
                                        const LeftBialgebroid& l, const Matrix& sigma);
Report check_es_gauge(const HopfGaloisData& hg, const Matrix& gauge);
// Vertical side: unital H-colinear maps f: H -> P with the multiplicative
// compatibility law; they correspond to the vertical bisections.
Report check_es_vertical_map(const HopfGaloisData& hg, const Matrix& f);
Matrix dict_es_f_to_bisection(const HopfGaloisData& hg, const Matrix& subspace, const Matrix& f);
Matrix dict_es_bisection_to_f(const HopfGaloisData& hg, const Matrix& subspace,
                              const Matrix& sigma);
// 2-cocycle side: colinear gamma: H (x) H -> P of associative type versus
// functional 2-cocycles on the coinvariant algebroid.
TwoCocycle dict_es_gamma_to_two_cocycle(const HopfGaloisData& hg, const Matrix& subspace,
                                        const TensorFunctional& gamma,
                                        const TensorFunctional& gamma_inv);
TensorFunctional dict_es_two_cocycle_to_gamma(const HopfGaloisData& hg, const Matrix& subspace,
                                              const BFunctional& g);

// Weyl algebroid H^* # H^op.
ActionCocycle dict_weyl_alpha_to_rho(const HopfAlgebra& h, const WeylResult& w,
                                     const SparseVec& alpha);
SparseVec dict_weyl_rho_to_alpha(const HopfAlgebra& h, const WeylResult& w,
                                 const ActionCocycle& a);
AlgebroidMorphism dict_weyl_auto(const HopfAlgebra& h, const WeylResult& w, const Matrix& phi);
// delta: H (x) H -> k unital convolution-invertible, to gamma in Z^2_{<|}.
TensorFunctional dict_weyl_delta_to_gamma(const HopfAlgebra& h, const WeylResult& w,
                                          const TensorFunctional& delta,
                                          const TensorFunctional& delta_inv);

// Transmutation: counital invertible beta in underline(H) to an action cocycle.
ActionCocycle dict_transmutation_beta(const TransmutationResult& tr, const SparseVec& beta);

}  // namespace algd
