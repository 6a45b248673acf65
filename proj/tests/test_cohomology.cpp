#include "doctest.h"

#include "algd/cohomology.hpp"

using namespace algd;

namespace {

std::vector<std::vector<std::size_t>> cyclic(std::size_t n) {
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    return t;
}

Matrix translation_action(std::size_t n, const Field& f) {
    Matrix act(n, n * n, f);
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t x = 0; x < n; ++x) act.at((g + x) % n, g * n + x) = Scalar::one(f);
    return act;
}

TensorFunctional trivial_gamma(const HopfAlgebra& h, const FDAlgebra& b) {
    TensorFunctional g;
    g.legs = 2;
    std::size_t nh = h.dim();
    g.mat = Matrix(b.dim, nh * nh, b.field);
    for (std::size_t i = 0; i < nh; ++i)
        for (std::size_t j = 0; j < nh; ++j) {
            SparseVec v = b.unit.scaled(h.coa.counit[i] * h.coa.counit[j]);
            for (auto& [k, c] : v.terms()) g.mat.at(k, i * nh + j) = c;
        }
    return g;
}

TensorFunctional bichar(const Field& f, std::size_t order, long q) {
    TensorFunctional r;
    r.legs = 2;
    r.mat = Matrix(1, order * order, f);
    for (std::size_t a = 0; a < order; ++a)
        for (std::size_t b = 0; b < order; ++b) {
            Scalar v = Scalar::one(f);
            for (std::size_t k = 0; k < a * b; ++k) v *= Scalar::integer(q, f);
            r.mat.at(0, a * order + b) = v;
        }
    return r;
}

}  // namespace

TEST_CASE("counit is a bisection on both sides; its inverse and Ad are trivial") {
    Field f3 = Field::prime(3);
    auto h = group_algebra(cyclic(2), f3);
    auto w = weyl_algebroid(h);
    const auto& l = w.alg.l;
    Matrix eps = counit_bisection(l);
    CHECK(check_bisection(l, eps, true).pass());
    CHECK(check_bisection(l, eps, false).pass());
    Bisection be = make_bisection(l, eps, true);
    CHECK(bisection_inv(l, w.alg.hd, be) == eps);
    auto ad = ad_automorphism(l, w.alg.hd, be);
    CHECK(ad.total_map == Matrix::identity(l.n(), f3));
    // sigma * eps = eps * sigma = sigma.
    CHECK(bisection_mul(l, eps, eps, true) == eps);
    CHECK(bisection_mul(l, eps, eps, false) == eps);
}

TEST_CASE("weyl kZ2/F3: exactly two bisections on each side, forming Z/2") {
    Field f3 = Field::prime(3);
    auto h = group_algebra(cyclic(2), f3);
    auto w = weyl_algebroid(h);
    const auto& l = w.alg.l;
    auto lefts = enumerate_bisections(l, true, default_enumeration_limit());
    auto rights = enumerate_bisections(l, false, default_enumeration_limit());
    CHECK(lefts.size() == 2);
    CHECK(rights.size() == 2);
    // Group of order 2: the nontrivial one squares to the counit.
    Matrix eps = counit_bisection(l);
    for (auto& side : {true, false}) {
        auto& set = side ? lefts : rights;
        for (auto& b : set) {
            Matrix sq = bisection_mul(l, b.sigma, b.sigma, side);
            CHECK(sq == eps);  // both elements have order dividing 2
            CHECK(bisection_inv(l, w.alg.hd, b) == b.sigma);
        }
    }
    // Closure: product of the two distinct elements is the other one.
    Matrix prod = bisection_mul(l, lefts[0].sigma, lefts[1].sigma, true);
    CHECK((prod == lefts[0].sigma || prod == lefts[1].sigma));
    // Associativity on all triples.
    for (auto& a : lefts)
        for (auto& b : lefts)
            for (auto& c : lefts)
                CHECK(bisection_mul(l, bisection_mul(l, a.sigma, b.sigma, true), c.sigma, true) ==
                      bisection_mul(l, a.sigma, bisection_mul(l, b.sigma, c.sigma, true), true));
}

TEST_CASE("weyl kZ2/F3 two-group with trivial automorphism group") {
    Field f3 = Field::prime(3);
    auto h = group_algebra(cyclic(2), f3);
    auto w = weyl_algebroid(h);
    const auto& l = w.alg.l;
    // Counital algebra automorphisms of H* = k(Z2): only the identity.
    auto [dual, pairing] = dual_hopf(h);
    auto autos = enumerate_algebra_autos(dual.alg, &dual.coa.counit, default_enumeration_limit());
    CHECK(autos.size() == 1);
    std::vector<AlgebroidMorphism> morphs;
    for (auto& phi : autos) {
        auto m = dict_weyl_auto(h, w, phi);
        CHECK(check_automorphism(l, m).pass());
        morphs.push_back(m);
    }
    auto bis = enumerate_bisections(l, false, default_enumeration_limit());
    std::vector<Bisection> bs(bis.begin(), bis.end());
    CHECK(two_group_check(l, w.alg.hd, bs, morphs).pass());
}

TEST_CASE("H (x) H^op over F5: bisections from algebra automorphisms, mu = id") {
    Field f5 = Field::prime(5);
    auto h = group_algebra(cyclic(2), f5);
    auto sc = self_crossed_algebroid(h);
    const auto& l = sc.plain.l;
    auto lefts = enumerate_bisections(l, true, default_enumeration_limit());
    CHECK(lefts.size() == 2);
    auto autos = enumerate_algebra_autos(h.alg, nullptr, default_enumeration_limit());
    CHECK(autos.size() == 2);
    std::vector<AlgebroidMorphism> morphs;
    std::size_t nh = 2;
    for (auto& phi : autos) {
        // The induced automorphism is phi (x) phi.
        AlgebroidMorphism m;
        m.base_map = phi;
        m.total_map = Matrix(nh * nh, nh * nh, f5);
        for (std::size_t a = 0; a < nh; ++a)
            for (std::size_t b = 0; b < nh; ++b) {
                SparseVec img = tensor2(phi.apply(h.alg.basis(a)), phi.apply(h.alg.basis(b)), nh);
                for (auto& [k, c] : img.terms()) m.total_map.at(k, a * nh + b) = c;
            }
        CHECK(check_automorphism(l, m).pass());
        morphs.push_back(m);
    }
    CHECK(two_group_check(l, sc.plain.hd, lefts, morphs).pass());
    // mu = id: Ad of the bisection sigma_phi(h (x) g) = phi(h) g equals
    // phi (x) phi elementwise.
    for (auto& phi : autos) {
        Matrix sigma(nh, nh * nh, f5);
        for (std::size_t a = 0; a < nh; ++a)
            for (std::size_t b = 0; b < nh; ++b) {
                SparseVec v = h.alg.multiply(phi.apply(h.alg.basis(a)), h.alg.basis(b));
                for (auto& [k, c] : v.terms()) sigma.at(k, a * nh + b) = c;
            }
        Bisection bsec = make_bisection(l, sigma, true);
        auto ad = ad_automorphism(l, sc.plain.hd, bsec);
        Matrix want(nh * nh, nh * nh, f5);
        for (std::size_t a = 0; a < nh; ++a)
            for (std::size_t b = 0; b < nh; ++b) {
                SparseVec img = tensor2(phi.apply(h.alg.basis(a)), phi.apply(h.alg.basis(b)), nh);
                for (auto& [k, c] : img.terms()) want.at(k, a * nh + b) = c;
            }
        CHECK(ad.total_map == want);
    }
}

TEST_CASE("ext cochains, coboundaries and gauge on weyl kZ2/F3") {
    Field f3 = Field::prime(3);
    auto h = group_algebra(cyclic(2), f3);
    auto w = weyl_algebroid(h);
    const auto& l = w.alg.l;
    // The counit is a valid cochain, its own inverse, and vertical.
    auto eres = check_ext_cochain(l, counit_bisection(l));
    REQUIRE(eres.valid);
    CHECK(eres.cochain.u_inv == counit_bisection(l));
    CHECK(eres.cochain.vertical_bisection);
    auto c1 = enumerate_ext_cochains(l, default_enumeration_limit());
    CHECK(c1.size() >= 2);
    // A broken map fails (the zero map is not unital).
    {
        Matrix bad(l.nb(), l.n(), f3);
        auto res = check_ext_cochain(l, bad);
        CHECK(!res.valid);
    }
    // Every coboundary is a valid 2-cocycle; gauging the trivial cocycle by U
    // reproduces it; gauge by the counit is the identity.
    TwoCocycle triv;
    triv.gamma = unit_functional(l, 2);
    triv.gamma_inv = triv.gamma;
    CHECK(check_two_cocycle(l, triv).pass());
    for (auto& u : c1) {
        TwoCocycle du = coboundary(l, u);
        CHECK(check_two_cocycle(l, du).pass());
        TwoCocycle gauged = gauge(l, triv, u);
        CHECK(gauged.gamma.mat == du.gamma.mat);
        CHECK(gauged.gamma_inv.mat == du.gamma_inv.mat);
    }
    // Gauge by the counit leaves a cocycle unchanged.
    TwoCocycle same = gauge(l, triv, eres.cochain);
    CHECK(same.gamma.mat == triv.gamma.mat);
    // Vertical bisections = intersection of vertical lefts and rights;
    // here every member of C^1 that is a bisection on both sides is in Z^1.
    std::size_t z1 = 0;
    for (auto& u : c1)
        if (u.vertical_bisection) ++z1;
    CHECK(z1 >= 1);
}

TEST_CASE("twisting weyl kZ2/F3 by every coboundary, with the gauge isomorphism") {
    Field f3 = Field::prime(3);
    auto h = group_algebra(cyclic(2), f3);
    auto w = weyl_algebroid(h);
    const auto& l = w.alg.l;
    // Trivial twist equals the original.
    TwoCocycle triv;
    triv.gamma = unit_functional(l, 2);
    triv.gamma_inv = triv.gamma;
    auto same = twist(l, triv);
    for (std::size_t i = 0; i < l.n(); ++i)
        for (std::size_t j = 0; j < l.n(); ++j)
            CHECK(same.l.total.mul[i][j] == l.total.mul[i][j]);

    auto c1 = enumerate_ext_cochains(l, default_enumeration_limit());
    for (auto& u : c1) {
        TwoCocycle du = coboundary(l, u);
        auto tw = twist(l, du);
        CHECK(tw.validation.pass());
        CHECK(tw.hd.left_ok);
        CHECK(tw.hd.anti_ok);
        // Ad_U: L -> L^{dU} is an isomorphism of bialgebroids.
        AlgebroidMorphism ad;
        ad.total_map = ad_gauge_map(l, u);
        ad.base_map = Matrix::identity(l.nb(), f3);
        CHECK(check_morphism(l, tw.l, ad).pass());
    }
}

TEST_CASE("action cocycles on the weyl YD data") {
    Field f3 = Field::prime(3);
    auto h = group_algebra(cyclic(2), f3);
    auto w = weyl_algebroid(h);
    auto zs = enumerate_action_cocycles(w.yd, default_enumeration_limit());
    CHECK(zs.size() == 2);
    // Unit element and group laws.
    Matrix unit_rho = counit_action_cocycle(w.yd);
    CHECK(check_action_cocycle(w.yd, unit_rho).pass());
    for (auto& a : zs) {
        auto inv = action_inv(w.yd, a);
        auto prod = action_mul(w.yd, a, inv);
        CHECK(prod.rho == unit_rho);
    }
    // Weyl dictionary: alphas are counital invertibles of H*.
    auto [dual, pairing] = dual_hopf(h);
    auto alphas = enumerate_counital_invertibles(dual.alg, dual.coa.counit,
                                                 default_enumeration_limit());
    CHECK(alphas.size() == 2);
    for (auto& alpha : alphas) {
        auto rho = dict_weyl_alpha_to_rho(h, w, alpha);
        SparseVec back = dict_weyl_rho_to_alpha(h, w, rho);
        CHECK(back == alpha);
        // Group product corresponds to multiplication in H*.
        for (auto& beta : alphas) {
            auto rho2 = dict_weyl_alpha_to_rho(h, w, beta);
            auto prod = action_mul(w.yd, rho, rho2);
            SparseVec ab = dual.alg.multiply(alpha, beta);
            auto rho_ab = dict_weyl_alpha_to_rho(h, w, ab);
            CHECK(prod.rho == rho_ab.rho);
        }
        // Bisection dictionaries.
        Matrix right = dict_action_rho_to_right_bisection(w.yd, rho);
        CHECK(check_bisection(w.alg.l, right, false).pass());
        Matrix left = dict_action_rho_to_left_bisection(w.yd, rho);
        CHECK(check_bisection(w.alg.l, left, true).pass());
        CHECK(dict_action_bisection_to_rho(w.yd, right) == rho.rho);
    }
    // Bisection counts match the alpha count.
    auto rights = enumerate_bisections(w.alg.l, false, default_enumeration_limit());
    CHECK(rights.size() == alphas.size());
}

TEST_CASE("smash dictionary on B^e # H over F3") {
    Field f3 = Field::prime(3);
    auto h = group_algebra(cyclic(2), f3);
    auto b = function_algebra(cyclic(2), f3).alg;
    Matrix act = translation_action(2, f3);
    auto sm = cocycle_smash(h, b, act, trivial_gamma(h, b));
    const auto& l = sm.l;
    // u: H -> B with the Z^1 laws; translate to a C^1 cochain on the smash.
    // Enumerate small-side candidates directly: u(1) = 1 affine over 8 unknowns.
    std::size_t found = 0, translated = 0;
    auto c1 = enumerate_ext_cochains(l, default_enumeration_limit());
    for (auto& u : c1) {
        Matrix small = dict_smash_ext_cochain_to_u(h, b, u.u);
        Matrix back = dict_smash_u_to_ext_cochain(h, b, act, small);
        CHECK(back == u.u);
        ++translated;
        if (check_smash_z1(h, b, act, small).pass()) ++found;
        // Boundary squares commute: d(u_small) translated = d(U).
        BFunctional fu{1, small};
        FDAlgebra bb = b;
        auto uinv = convolution_inverse(fu.legs == 1 ? TensorFunctional{1, small}
                                                     : TensorFunctional{1, small},
                                        h.coa, bb);
        REQUIRE(uinv);
        TensorFunctional du_small = smash_boundary(h, b, act, small, uinv->mat);
        TensorFunctional du_small_inv = smash_boundary(h, b, act, uinv->mat, small);
        // The translated big cocycle must equal the coboundary of U.
        TwoCocycle big = dict_smash_gamma_to_two_cocycle(h, b, act, du_small, du_small_inv);
        TwoCocycle du_big = coboundary(l, u);
        CHECK(big.gamma.mat == du_big.gamma.mat);
    }
    CHECK(translated == c1.size());
    CHECK(found >= 1);
    // Z1 counts agree both ways (vertical bisections vs small-side cocycles).
    std::size_t z1_big = 0;
    for (auto& u : c1)
        if (u.vertical_bisection) ++z1_big;
    std::size_t z1_small = 0;
    for (auto& u : c1)
        if (check_smash_z1(h, b, act, dict_smash_ext_cochain_to_u(h, b, u.u)).pass()) ++z1_small;
    CHECK(z1_big == z1_small);
    // Gamma translation: the trivial gamma maps to the trivial cocycle.
    TwoCocycle gtriv = dict_smash_gamma_to_two_cocycle(h, b, act, trivial_gamma(h, b),
                                                       trivial_gamma(h, b));
    CHECK(check_two_cocycle(l, gtriv).pass());
    TensorFunctional back = dict_smash_two_cocycle_to_gamma(h, b, gtriv.gamma);
    CHECK(back.mat == trivial_gamma(h, b).mat);
}

TEST_CASE("es dictionary for the trivial kZ2 bundle over Q") {
    Field q = Field::rationals();
    auto h = group_algebra(cyclic(2), q);
    Matrix coa(4, 2, q);
    for (std::size_t i = 0; i < 2; ++i)
        for (auto& [pq, c] : h.coa.cop[i].terms()) coa.at(pq, i) = c;
    auto hg = hopf_galois(h.alg, h, coa);
    auto es = es_algebroid(hg);
    const auto& l = es.alg.l;
    // Gauge group = algebra automorphisms of kZ2 (identity and the sign map).
    auto gauges = enumerate_algebra_autos(h.alg, nullptr, default_enumeration_limit());
    CHECK(gauges.size() == 2);
    for (auto& F : gauges) {
        CHECK(check_es_gauge(hg, F).pass());
        Matrix sl = dict_es_gauge_to_left_bisection(hg, es.subspace, F);
        CHECK(check_bisection(l, sl, true).pass());
        Matrix back = dict_es_left_bisection_to_gauge(hg, es.subspace, l, sl);
        CHECK(back == F);  // F_{sigma_F} = F
        Matrix sr = dict_es_gauge_to_right_bisection(hg, es.subspace, F);
        CHECK(check_bisection(l, sr, false).pass());
        Matrix back2 = dict_es_right_bisection_to_gauge(hg, es.subspace, l, sr);
        CHECK(back2 == F);
    }
    // Composition compatibility: sigma_F o sigma_G = sigma_{F o G} for the
    // right-bisection product.
    Matrix f0 = gauges[0], f1 = gauges[1];
    Matrix s0 = dict_es_gauge_to_right_bisection(hg, es.subspace, f0);
    Matrix s1 = dict_es_gauge_to_right_bisection(hg, es.subspace, f1);
    Matrix s01 = dict_es_gauge_to_right_bisection(hg, es.subspace, f0 * f1);
    CHECK(bisection_mul(l, s0, s1, false) == s01);
    // Exactly two bisections realized through the dictionary.
    CHECK(gauges.size() == 2);
}

TEST_CASE("es vertical and 2-cocycle dictionaries on the trivial kZ2 bundle") {
    Field q = Field::rationals();
    auto h = group_algebra(cyclic(2), q);
    Matrix coa(4, 2, q);
    for (std::size_t i = 0; i < 2; ++i)
        for (auto& [pq, c] : h.coa.cop[i].terms()) coa.at(pq, i) = c;
    auto hg = hopf_galois(h.alg, h, coa);
    auto es = es_algebroid(hg);
    const auto& l = es.alg.l;

    // Two vertical maps: h -> eps(h) 1 and the sign character h -> chi(h) 1
    // (the identity map is not colinear for the adjoint coaction and is
    // rejected below).
    Matrix f0(2, 2, q), f1(2, 2, q);
    f0.at(0, 0) = Scalar::one(q);
    f0.at(0, 1) = Scalar::one(q);
    f1.at(0, 0) = Scalar::one(q);
    f1.at(0, 1) = Scalar::integer(-1, q);
    for (auto* fm : {&f0, &f1}) {
        auto rep = check_es_vertical_map(hg, *fm);
        INFO((rep.first_failure() ? rep.first_failure()->law : std::string("")));
        CHECK(rep.pass());
        Matrix sigma = dict_es_f_to_bisection(hg, es.subspace, *fm);
        CHECK(check_bisection(l, sigma, true).pass());
        // Vertical: the base map is the identity.
        CHECK(sigma * l.src == Matrix::identity(l.nb(), q));
        Matrix back = dict_es_bisection_to_f(hg, es.subspace, sigma);
        CHECK(back == *fm);
    }
    // The identity map of kZ2 is not colinear and is rejected.
    {
        Matrix bad = Matrix::identity(2, q);
        CHECK(!check_es_vertical_map(hg, bad).pass());
    }

    // Gamma dictionaries: the trivial and the sign bicharacter (valued in P).
    auto make_gamma = [&](long qv) {
        TensorFunctional g;
        g.legs = 2;
        g.mat = Matrix(2, 4, q);
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b) {
                Scalar v = (a * b) % 2 ? Scalar::integer(qv, q) : Scalar::one(q);
                g.mat.at(0, a * 2 + b) = v;  // value v * 1_P
            }
        return g;
    };
    for (long qv : {1L, -1L}) {
        TensorFunctional gamma = make_gamma(qv);
        TensorFunctional gamma_inv = make_gamma(qv);  // order two
        TwoCocycle big = dict_es_gamma_to_two_cocycle(hg, es.subspace, gamma, gamma_inv);
        auto rep = check_two_cocycle(l, big);
        INFO((rep.first_failure() ? rep.first_failure()->law : std::string("")));
        CHECK(rep.pass());
        TensorFunctional back = dict_es_two_cocycle_to_gamma(hg, es.subspace, big.gamma);
        CHECK(back.mat == gamma.mat);
        // The twisted algebroid stays valid.
        CHECK(twist(l, big).validation.pass());
    }
}

TEST_CASE("transmutation dictionary on kZ3/F7 at q=2") {
    Field f7 = Field::prime(7);
    auto h = group_algebra(cyclic(3), f7);
    CQTStructure r;
    r.r = bichar(f7, 3, 2);
    r.r_inv = bichar(f7, 3, 4);
    auto tr = transmutation(h, r);
    auto betas = enumerate_counital_invertibles(tr.underline, [&] {
        std::vector<Scalar> row;
        for (std::size_t i = 0; i < 3; ++i) row.push_back(h.coa.counit[i]);
        return row;
    }(), default_enumeration_limit());
    CHECK(!betas.empty());
    std::vector<Matrix> image;
    for (auto& beta : betas) {
        auto rho = dict_transmutation_beta(tr, beta);
        bool fresh = true;
        for (auto& m : image)
            if (m == rho.rho) fresh = false;
        if (fresh) image.push_back(rho.rho);
    }
    // Homomorphism on a sample pair.
    auto r1 = dict_transmutation_beta(tr, betas[0]);
    auto r2 = dict_transmutation_beta(tr, betas[1 % betas.size()]);
    auto prod = action_mul(tr.yd, r1, r2);
    auto both = dict_transmutation_beta(tr, tr.underline.multiply(betas[0],
                                                                  betas[1 % betas.size()]));
    CHECK(prod.rho == both.rho);
    // Factorisable case: the image is all of the enumerated cocycle set.
    auto zs = enumerate_action_cocycles(tr.yd, default_enumeration_limit());
    CHECK(image.size() == zs.size());
}

TEST_CASE("weyl delta functional to action 2-cocycle on kZ2/F3") {
    Field f3 = Field::prime(3);
    auto h = group_algebra(cyclic(2), f3);
    auto w = weyl_algebroid(h);
    auto [dual, pairing] = dual_hopf(h);
    // delta(g^a, g^b) = (-1)^{ab} = 2^{ab} mod 3: unital, its own inverse.
    TensorFunctional delta;
    delta.legs = 2;
    delta.mat = Matrix(1, 4, f3);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
            delta.mat.at(0, a * 2 + b) =
                (a * b) % 2 ? Scalar::integer(2, f3) : Scalar::one(f3);
    TensorFunctional gamma = dict_weyl_delta_to_gamma(h, w, delta, delta);
    // Round trip: the counit of the translated values recovers delta.
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
            SparseVec v = gamma.mat.apply(SparseVec::unit(a * 2 + b, f3));
            Scalar e = Scalar::zero(f3);
            for (auto& [k, c] : v.terms()) e += c * dual.coa.counit[k];
            CHECK(e == delta.mat.at(0, a * 2 + b));
        }
    // The translated cocycle on the double is an honest 2-cocycle.
    TensorFunctional gamma_inv = dict_weyl_delta_to_gamma(h, w, delta, delta);
    TwoCocycle big = dict_action_gamma_to_two_cocycle(w.yd, gamma, gamma_inv);
    auto rep = check_two_cocycle(w.alg.l, big);
    INFO((rep.first_failure() ? rep.first_failure()->law : std::string("")));
    CHECK(rep.pass());
    CHECK(twist(w.alg.l, big).validation.pass());
}

TEST_CASE("weyl automorphism action on the counital invertibles over F7") {
    Field f7 = Field::prime(7);
    auto h = group_algebra(cyclic(3), f7);
    auto w = weyl_algebroid(h);
    auto [dual, pairing] = dual_hopf(h);
    auto autos = enumerate_algebra_autos(dual.alg, &dual.coa.counit,
                                         default_enumeration_limit());
    CHECK(autos.size() == 2);  // identity and the point swap fixing the counit
    auto alphas = enumerate_counital_invertibles(dual.alg, dual.coa.counit,
                                                 default_enumeration_limit());
    CHECK(alphas.size() == 36);  // alpha(point 0) = 1, two free units
    for (auto& phi : autos) {
        auto m = dict_weyl_auto(h, w, phi);
        CHECK(check_automorphism(w.alg.l, m).pass());
        Matrix phi_inv = *m.total_map.inverse();
        // The tautological action on a bisection is the application of phi
        // to the underlying counital element.
        std::size_t checked = 0;
        for (auto& alpha : alphas) {
            auto rho = dict_weyl_alpha_to_rho(h, w, alpha);
            Matrix sigma = dict_action_rho_to_right_bisection(w.yd, rho);
            Matrix acted = (m.base_map * sigma) * phi_inv;
            auto rho2 = dict_weyl_alpha_to_rho(h, w, phi.apply(alpha));
            Matrix want = dict_action_rho_to_right_bisection(w.yd, rho2);
            CHECK(acted == want);
            if (++checked >= 6) break;
        }
    }
}

TEST_CASE("smash Z1 counts agree when enumerated on both sides") {
    Field f3 = Field::prime(3);
    auto h = group_algebra(cyclic(2), f3);
    auto b = function_algebra(cyclic(2), f3).alg;
    Matrix act = translation_action(2, f3);
    auto sm = cocycle_smash(h, b, act, trivial_gamma(h, b));
    // Big side: vertical bisections of the smash.
    std::size_t z1_big = 0;
    for (auto& u : enumerate_ext_cochains(sm.l, default_enumeration_limit()))
        if (u.vertical_bisection) ++z1_big;
    // Small side: brute force u: H -> B with u(1) = 1_B (the all-ones
    // vector of the function algebra).
    std::size_t z1_small = 0;
    for (long c0 = 0; c0 < 3; ++c0)
        for (long c1 = 0; c1 < 3; ++c1) {
            Matrix u(2, 2, f3);
            for (auto& [k, c] : b.unit.terms()) u.at(k, 0) = c;
            u.at(0, 1) = Scalar::integer(c0, f3);
            u.at(1, 1) = Scalar::integer(c1, f3);
            if (check_smash_z1(h, b, act, u).pass()) ++z1_small;
        }
    CHECK(z1_big == z1_small);
    CHECK(z1_small >= 1);
}

TEST_CASE("sigma twisting: boundaries and the cocycle case") {
    Field f3 = Field::prime(3);
    auto h = group_algebra(cyclic(2), f3);
    auto w = weyl_algebroid(h);
    const auto& l = w.alg.l;
    BFunctional unit3 = unit_functional(l, 3);
    // A genuine 2-cocycle has trivial boundary.
    TwoCocycle triv;
    triv.gamma = unit_functional(l, 2);
    triv.gamma_inv = triv.gamma;
    SigmaCochain sc{triv.gamma, triv.gamma_inv};
    CHECK(check_sigma_cochain(l, sc).pass());
    CHECK(sigma_boundary(l, sc).mat == unit3.mat);

    auto sigmas = enumerate_sigma_cochains(l, default_enumeration_limit());
    CHECK(!sigmas.empty());
    std::size_t cocycles = 0, noncocycles = 0;
    CoquasiLeftBialgebroid wrapped;
    wrapped.core = l;
    wrapped.assoc = unit3;
    wrapped.assoc_inv = unit3;
    for (auto& s : sigmas) {
        bool is_cocycle = check_two_cocycle(l, TwoCocycle{s.sigma, s.sigma_inv}).pass();
        BFunctional bd = sigma_boundary(l, s);
        if (is_cocycle) {
            ++cocycles;
            CHECK(bd.mat == unit3.mat);
        } else {
            ++noncocycles;
            CHECK(!(bd.mat == unit3.mat));
            // The twist is a coquasi-bialgebroid with associator = boundary.
            auto tw = coquasi_twist(wrapped, s);
            CHECK(tw.validation.pass());
            CHECK(tw.cl.assoc.mat == bd.mat);
        }
    }
    CHECK(cocycles >= 1);
    CHECK(noncocycles >= 1);
}

TEST_CASE("gauge pairs: Ad_U is an isomorphism between the two twists") {
    Field f3 = Field::prime(3);
    auto h = group_algebra(cyclic(2), f3);
    auto w = weyl_algebroid(h);
    const auto& l = w.alg.l;
    auto z2 = enumerate_two_cocycles(l, default_enumeration_limit());
    auto c1 = enumerate_ext_cochains(l, default_enumeration_limit());
    REQUIRE(z2.size() >= 2);
    REQUIRE(!c1.empty());
    for (auto& g : z2)
        for (auto& u : c1) {
            auto tw1 = twist(l, g);
            auto tw2 = twist(l, gauge(l, g, u));
            AlgebroidMorphism ad{ad_gauge_map(l, u), Matrix::identity(l.nb(), f3)};
            CHECK(check_morphism(tw1.l, tw2.l, ad).pass());
        }
    // Gauging by U then U' equals gauging by U * U' (composition in C^1).
    if (c1.size() >= 2) {
        auto& u = c1[0];
        auto& u2 = c1[1];
        Matrix prod = bisection_mul(l, u.u, u2.u, true);  // convolution product
        auto both = check_ext_cochain(l, prod);
        REQUIRE(both.valid);
        for (auto& g : z2) {
            TwoCocycle lhs = gauge(l, gauge(l, g, u2), u);
            TwoCocycle rhs = gauge(l, g, both.cochain);
            CHECK(lhs.gamma.mat == rhs.gamma.mat);
        }
    }
}

TEST_CASE("the coboundary is pointed: vertical bisections map to the trivial cocycle") {
    Field f3 = Field::prime(3);
    auto h = group_algebra(cyclic(2), f3);
    auto w = weyl_algebroid(h);
    const auto& l = w.alg.l;
    auto c1 = enumerate_ext_cochains(l, default_enumeration_limit());
    BFunctional unit2 = unit_functional(l, 2);
    std::size_t verticals = 0;
    for (auto& u : c1)
        if (u.vertical_bisection) {
            ++verticals;
            CHECK(coboundary(l, u).gamma.mat == unit2.mat);
        }
    CHECK(verticals >= 1);
    // Vertical bisections are exactly the intersection of the enumerated left
    // and right bisection sets.
    auto lefts = enumerate_bisections(l, true, default_enumeration_limit());
    auto rights = enumerate_bisections(l, false, default_enumeration_limit());
    std::size_t common = 0;
    for (auto& a : lefts)
        for (auto& b : rights)
            if (a.sigma == b.sigma) ++common;
    CHECK(common == verticals);
}

TEST_CASE("es right-bisection inverses through the gauge dictionary") {
    Field q = Field::rationals();
    auto h = group_algebra(cyclic(2), q);
    Matrix coa(4, 2, q);
    for (std::size_t i = 0; i < 2; ++i)
        for (auto& [pq, c] : h.coa.cop[i].terms()) coa.at(pq, i) = c;
    auto hg = hopf_galois(h.alg, h, coa);
    auto es = es_algebroid(hg);
    const auto& l = es.alg.l;
    // The anti-left branch is not required by the construction but is
    // recorded; for this instance it happens to exist.
    CHECK(es.alg.hd.anti_ok);
    for (auto& F : enumerate_algebra_autos(h.alg, nullptr, default_enumeration_limit())) {
        Matrix sr = dict_es_gauge_to_right_bisection(hg, es.subspace, F);
        Bisection b = make_bisection(l, sr, false);
        // Dictionary route: sigma_{F^{-1}}.
        Matrix sr_inv = dict_es_gauge_to_right_bisection(hg, es.subspace, *F.inverse());
        CHECK(bisection_mul(l, sr, sr_inv, false) == counit_bisection(l));
        // When the anti branch exists, the translation-element inverse agrees.
        CHECK(bisection_inv(l, es.alg.hd, b) == sr_inv);
    }
}

TEST_CASE("h2 orbits on weyl kZ2/F3") {
    Field f3 = Field::prime(3);
    auto h = group_algebra(cyclic(2), f3);
    auto w = weyl_algebroid(h);
    const auto& l = w.alg.l;
    auto z2 = enumerate_two_cocycles(l, default_enumeration_limit());
    auto c1 = enumerate_ext_cochains(l, default_enumeration_limit());
    CHECK(!z2.empty());
    auto orbits = h2_orbits(l, z2, c1);
    std::size_t covered = 0;
    for (auto& o : orbits) covered += o.size();
    CHECK(covered == z2.size());
    // The boundary of the counit sits in the trivial class.
    CHECK(orbits.size() >= 1);
}

TEST_CASE("enumeration over the rationals is refused") {
    Field q = Field::rationals();
    auto h = group_algebra(cyclic(2), q);
    LeftBialgebroid l = bialgebroid_over_field(h);
    CHECK_THROWS_AS(enumerate_bisections(l, true, 1024), Error);
}
