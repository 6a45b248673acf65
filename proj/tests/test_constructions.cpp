#include "doctest.h"

#include <array>

#include "algd/constructions.hpp"

using namespace algd;

namespace {

std::vector<std::vector<std::size_t>> cyclic(std::size_t n) {
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    return t;
}

std::vector<std::vector<std::size_t>> s3() {
    std::vector<std::array<int, 3>> perms = {
        {0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
    auto compose = [&](int a, int b) {
        std::array<int, 3> c{};
        for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
        for (std::size_t k = 0; k < perms.size(); ++k)
            if (perms[k] == c) return (int)k;
        return -1;
    };
    std::vector<std::vector<std::size_t>> t(6, std::vector<std::size_t>(6));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) t[i][j] = (std::size_t)compose(i, j);
    return t;
}

// Translation action of kZn on k(Zn): g |> delta_x = delta_{g+x}.
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

TEST_CASE("weyl algebroid of kZ2 over F3") {
    Field f3 = Field::prime(3);
    auto h = group_algebra(cyclic(2), f3);
    auto res = weyl_algebroid(h, true);
    CHECK(res.alg.validation.pass());
    CHECK(res.alg.l.n() == 4);
    CHECK(res.alg.hd.left_ok);
    CHECK(res.alg.hd.anti_ok);
    REQUIRE(res.simple.has_value());
    CHECK(*res.simple);
    // Each tensor-square quotient of the 16-dim ambient has dimension 8.
    CHECK(res.alg.q.qB.dim() == 8);
    CHECK(res.alg.q.qBopT.dim() == 8);
    CHECK(res.alg.q.qBopS.dim() == 8);
    // lambda inverse is an invertible 8x8 matrix.
    CHECK(res.alg.hd.lambda_inv_q.rows() == 8);
}

TEST_CASE("weyl algebroid of kZ3 over F7 is simple") {
    Field f7 = Field::prime(7);
    auto h = group_algebra(cyclic(3), f7);
    auto res = weyl_algebroid(h, true);
    CHECK(res.alg.validation.pass());
    CHECK(res.alg.l.n() == 9);
    REQUIRE(res.simple.has_value());
    CHECK(*res.simple);
}

TEST_CASE("connes-moscovici for kZ2 acting on k(Z2)") {
    Field q = Field::rationals();
    auto h = group_algebra(cyclic(2), q);
    auto b = function_algebra(cyclic(2), q).alg;
    auto res = connes_moscovici(h, b, translation_action(2, q));
    CHECK(res.validation.pass());
    CHECK(res.l.n() == 8);
    CHECK(res.hd.left_ok);
    CHECK(res.hd.anti_ok);
}

TEST_CASE("connes-moscovici with trivial base reduces to the bialgebra") {
    Field q = Field::rationals();
    auto h = group_algebra(cyclic(2), q);
    FDAlgebra k;
    k.field = q;
    k.dim = 1;
    k.mul.assign(1, std::vector<SparseVec>(1, SparseVec::unit(0, q)));
    k.unit = SparseVec::unit(0, q);
    Matrix triv(1, h.dim() * 1, q);
    for (std::size_t i = 0; i < h.dim(); ++i) triv.at(0, i) = h.coa.counit[i];
    auto res = connes_moscovici(h, k, triv);
    CHECK(res.validation.pass());
    CHECK(res.l.n() == 2);
    // Product tensor coincides with the group algebra one.
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(res.l.total.mul[i][j] == h.alg.mul[i][j]);
}

TEST_CASE("cm cocycle: trivial gamma matches the plain construction") {
    Field q = Field::rationals();
    auto h = group_algebra(cyclic(2), q);
    auto b = function_algebra(cyclic(2), q).alg;
    auto plain = connes_moscovici(h, b, translation_action(2, q));
    auto tw = cm_cocycle(h, b, translation_action(2, q), trivial_gamma(h, b));
    CHECK(tw.validation.pass());
    for (std::size_t i = 0; i < plain.l.n(); ++i)
        for (std::size_t j = 0; j < plain.l.n(); ++j)
            CHECK(plain.l.total.mul[i][j] == tw.l.total.mul[i][j]);
}

TEST_CASE("cm cocycle with a sign bicharacter over Q") {
    Field q = Field::rationals();
    auto h = group_algebra(cyclic(2), q);
    auto b = function_algebra(cyclic(2), q).alg;
    // gamma(g^a, g^b) = (-1)^{ab} 1_B.
    TensorFunctional gamma;
    gamma.legs = 2;
    gamma.mat = Matrix(b.dim, 4, q);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t c = 0; c < 2; ++c) {
            Scalar v = (a * c) % 2 ? Scalar::integer(-1, q) : Scalar::one(q);
            for (auto& [k, u] : b.unit.terms()) gamma.mat.at(k, a * 2 + c) = v * u;
        }
    auto res = cm_cocycle(h, b, translation_action(2, q), gamma);
    CHECK(res.validation.pass());
    // With a strict action and an associative-type cocycle both translation
    // branches survive the deformation.
    CHECK(res.hd.left_ok);
    CHECK(res.hd.anti_ok);
    // gamma failing unitality is rejected.
    TensorFunctional bad = gamma;
    bad.mat.at(0, 1) = Scalar::integer(5, q);
    CHECK_THROWS_AS(cm_cocycle(h, b, translation_action(2, q), bad), Error);
}

TEST_CASE("action algebroid rejects broken YD data") {
    Field f3 = Field::prime(3);
    auto h = group_algebra(cyclic(2), f3);
    auto weyl = weyl_algebroid(h);
    YDModuleAlgebra bad = weyl.yd;
    bad.action.at(0, 1) = bad.action.at(0, 1) + Scalar::one(f3);
    CHECK_THROWS_AS(action_algebroid(bad), Error);
}

TEST_CASE("self-crossed algebroid for kZ2 over Q") {
    Field q = Field::rationals();
    auto h = group_algebra(cyclic(2), q);
    auto res = self_crossed_algebroid(h);
    CHECK(res.smash.validation.pass());
    CHECK(res.plain.validation.pass());
    CHECK(res.morphism_report.pass());
    // Adjoint action trivial for an abelian group: braided commutativity is
    // plain commutativity of kZ2; both lifts are monomial.
    CHECK(res.plain.hd.left_ok);
    CHECK(res.plain.hd.anti_ok);
}

TEST_CASE("cocycle smash for kZ2 on k(Z2) with trivial gamma") {
    Field q = Field::rationals();
    auto h = group_algebra(cyclic(2), q);
    auto b = function_algebra(cyclic(2), q).alg;
    auto res = cocycle_smash(h, b, translation_action(2, q), trivial_gamma(h, b));
    CHECK(res.validation.pass());
    CHECK(res.l.n() == 8);
    CHECK(res.hd.left_ok);
}

TEST_CASE("cocycle smash with trivial base reduces to H") {
    Field q = Field::rationals();
    auto h = group_algebra(cyclic(2), q);
    FDAlgebra k;
    k.field = q;
    k.dim = 1;
    k.mul.assign(1, std::vector<SparseVec>(1, SparseVec::unit(0, q)));
    k.unit = SparseVec::unit(0, q);
    Matrix triv(1, h.dim(), q);
    for (std::size_t i = 0; i < h.dim(); ++i) triv.at(0, i) = h.coa.counit[i];
    auto res = cocycle_smash(h, k, triv, trivial_gamma(h, k));
    CHECK(res.validation.pass());
    CHECK(res.l.n() == 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(res.l.total.mul[i][j] == h.alg.mul[i][j]);
}

TEST_CASE("hopf galois: P = H = kZ2 over Q") {
    Field q = Field::rationals();
    auto h = group_algebra(cyclic(2), q);
    // Coaction = coproduct.
    Matrix coa(4, 2, q);
    for (std::size_t i = 0; i < 2; ++i)
        for (auto& [pq, c] : h.coa.cop[i].terms()) coa.at(pq, i) = c;
    auto hg = hopf_galois(h.alg, h, coa);
    CHECK(hg.validation.pass());
    CHECK(hg.coinv.dim == 1);  // B = k
    // tau(g) = g^{-1} (x) g for grouplikes.
    SparseVec want(q);
    want.add_term(1 * 2 + 1, Scalar::one(q));
    CHECK(hg.pbp.same_class(hg.tau[1], want));

    // Trivial coaction is not Galois.
    Matrix triv(4, 2, q);
    for (std::size_t i = 0; i < 2; ++i) triv.at(i * 2 + 0, i) = Scalar::one(q);
    CHECK_THROWS_AS(hopf_galois(h.alg, h, triv), Error);
}

TEST_CASE("es algebroid of the trivial kZ2 bundle") {
    Field q = Field::rationals();
    auto h = group_algebra(cyclic(2), q);
    Matrix coa(4, 2, q);
    for (std::size_t i = 0; i < 2; ++i)
        for (auto& [pq, c] : h.coa.cop[i].terms()) coa.at(pq, i) = c;
    auto hg = hopf_galois(h.alg, h, coa);
    auto res = es_algebroid(hg);
    CHECK(res.alg.validation.pass());
    CHECK(res.alg.l.n() == 2);  // spanned by e (x) e and g (x) g^{-1}
    // eps(unit) = 1.
    CHECK(res.alg.l.eps(res.alg.l.unit()) == res.alg.l.base.unit);
    CHECK(res.alg.hd.left_ok);
}

TEST_CASE("transmutation of kZ3/F7 at q = 2") {
    Field f7 = Field::prime(7);
    auto h = group_algebra(cyclic(3), f7);
    CQTStructure r;
    r.r = bichar(f7, 3, 2);
    r.r_inv = bichar(f7, 3, 4);
    auto res = transmutation(h, r);
    CHECK(res.alg.validation.pass());
    // Covariantized product on grouplikes: g^a * g^b = q^{...} g^{a+b}; check
    // against a direct evaluation of the four-factor display.
    auto R = [&](std::size_t a, std::size_t b) {
        return r.r.mat.apply(SparseVec::unit(a * 3 + b, f7)).at(0);
    };
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) {
            // For grouplikes: h*g = R(h, Sg) R(h, g) hg; S(g^b) = g^{-b}.
            Scalar coeff = R(a, (3 - b) % 3) * R(a, b);
            SparseVec want = SparseVec::unit((a + b) % 3, f7).scaled(coeff);
            CHECK(res.underline.mul[a][b] == want);
        }

    // Trivial R: underline product equals the group product.
    CQTStructure triv;
    triv.r = bichar(f7, 3, 1);
    triv.r_inv = bichar(f7, 3, 1);
    auto res0 = transmutation(h, triv);
    CHECK(res0.alg.validation.pass());
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) CHECK(res0.underline.mul[a][b] == h.alg.mul[a][b]);
}

TEST_CASE("killing form: factorisable at q=2 on kZ3/F7, not at q=-1 on kZ2/F5") {
    {
        Field f7 = Field::prime(7);
        auto h = group_algebra(cyclic(3), f7);
        CQTStructure r;
        r.r = bichar(f7, 3, 2);
        r.r_inv = bichar(f7, 3, 4);
        auto tr = transmutation(h, r);
        auto weyl = weyl_algebroid(h);
        auto kf = killing_form(h, r, tr, weyl);
        CHECK(kf.rep.pass());
        CHECK(kf.factorisable);
        REQUIRE(kf.iso.has_value());
    }
    {
        Field f5 = Field::prime(5);
        auto h = group_algebra(cyclic(2), f5);
        CQTStructure r;
        r.r = bichar(f5, 2, -1);
        r.r_inv = bichar(f5, 2, -1);
        auto tr = transmutation(h, r);
        auto weyl = weyl_algebroid(h);
        auto kf = killing_form(h, r, tr, weyl);
        CHECK(!kf.factorisable);
        CHECK(kf.q.rank() == 1);
    }
}

TEST_CASE("bicrossproduct transversal: X=Z4, G={0,2}, M={0,1}") {
    Field q = Field::rationals();
    auto res = bicrossproduct_transversal(cyclic(4), {0, 2}, {0, 1}, q);
    CHECK(res.validation.pass());
    CHECK(res.h.dim() == 4);
    // tau(1,1) = 2, i.e. subgroup position 1.
    CHECK(res.td.tau[1][1] == 1);
    CHECK(res.td.dot[1][1] == 0);
    // Actions trivial.
    for (std::size_t s = 0; s < 2; ++s)
        for (std::size_t u = 0; u < 2; ++u) {
            CHECK(res.td.actL[s][u] == u);
            CHECK(res.td.actR[s][u] == s);
        }
    // Nontrivial associator.
    bool nontrivial = false;
    std::size_t n = res.h.dim();
    for (std::size_t i = 0; i < n * n * n && !nontrivial; ++i) {
        Scalar fwd = res.h.phi.mat.at(0, i);
        // compare with eps^3
        std::size_t z = i % n, y = (i / n) % n, x = i / (n * n);
        Scalar want = res.h.coa.counit[x] * res.h.coa.counit[y] * res.h.coa.counit[z];
        if (fwd != want) nontrivial = true;
    }
    CHECK(nontrivial);

    CHECK_THROWS_AS(bicrossproduct_transversal(cyclic(4), {0, 1}, {0, 2}, q), Error);
}

TEST_CASE("bicrossproduct transversal: S3 with A3 transversal is an ordinary Hopf algebra") {
    Field q = Field::rationals();
    // G = <(12)> = {0, 3} in our numbering, M = A3 = {0, 1, 2}.
    auto res = bicrossproduct_transversal(s3(), {0, 3}, {0, 1, 2}, q);
    CHECK(res.validation.pass());
    // tau identically trivial: the associator equals eps^3.
    std::size_t n = res.h.dim();
    for (std::size_t s = 0; s < 3; ++s)
        for (std::size_t t = 0; t < 3; ++t) CHECK(res.td.tau[s][t] == 0);
    for (std::size_t i = 0; i < n * n * n; ++i) {
        std::size_t z = i % n, y = (i / n) % n, x = i / (n * n);
        CHECK(res.h.phi.mat.at(0, i) ==
              res.h.coa.counit[x] * res.h.coa.counit[y] * res.h.coa.counit[z]);
    }
}

TEST_CASE("a corrupted bicrossproduct associator is reported with a witness") {
    Field q = Field::rationals();
    auto bic = bicrossproduct_transversal(cyclic(4), {0, 2}, {0, 1}, q);
    CoquasiBialgebra bad = bic.h;
    // Scale the associator at one nontrivial column: some law must fail.
    bool mutated = false;
    std::size_t n = bad.dim();
    for (std::size_t i = 0; i < n * n * n && !mutated; ++i)
        if (!bad.phi.mat.at(0, i).is_zero()) {
            bad.phi.mat.at(0, i) = bad.phi.mat.at(0, i) * Scalar::integer(2, q);
            mutated = true;
        }
    REQUIRE(mutated);
    auto rep = check_coquasi_bialgebra(bad);
    CHECK(!rep.pass());
    REQUIRE(rep.first_failure() != nullptr);
    CHECK(!rep.first_failure()->law.empty());
}

TEST_CASE("coquasi CM over the Z4 transversal data") {
    Field q = Field::rationals();
    auto bic = bicrossproduct_transversal(cyclic(4), {0, 2}, {0, 1}, q);
    auto res = coquasi_cm(bic.h, bic.base, bic.measuring, bic.gamma, bic.gamma_inv);
    CHECK(res.validation.pass());
    CHECK(res.cl.core.n() == 16);
    // The bicrossproduct associator is nontrivial at the coquasi-bialgebra
    // level, but over an abelian X the induced transversal quasigroup is a
    // group, and the gamma insertions absorb phi entirely: the algebroid
    // associator collapses to the counit triple. Assert the computed outcome.
    BFunctional unit3 = unit_functional(res.cl.core, 3);
    CHECK(res.cl.assoc.mat == unit3.mat);
    FDAlgebra tot = res.cl.core.total;
    tot.associative = true;
    CHECK(tot.check().pass());
}

TEST_CASE("coquasi CM: gamma must be invertible") {
    Field q = Field::rationals();
    auto bic = bicrossproduct_transversal(cyclic(4), {0, 2}, {0, 1}, q);
    TensorFunctional zero = bic.gamma;
    zero.mat = Matrix(bic.base.dim, bic.h.dim() * bic.h.dim(), q);
    CHECK_THROWS_AS(coquasi_cm(bic.h, bic.base, bic.measuring, zero, bic.gamma_inv), Error);
}

TEST_CASE("coquasi ES with trivial comodule associator reduces to the ES algebroid") {
    Field q = Field::rationals();
    auto h = group_algebra(cyclic(2), q);
    Matrix coa(4, 2, q);
    for (std::size_t i = 0; i < 2; ++i)
        for (auto& [pq, c] : h.coa.cop[i].terms()) coa.at(pq, i) = c;
    auto hg = hopf_galois(h.alg, h, coa);
    TensorFunctional phi_p;
    phi_p.legs = 3;
    phi_p.mat = Matrix(2, 8, q);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k) {
                SparseVec v = h.alg.unit.scaled(h.coa.counit[i] * h.coa.counit[j] *
                                                h.coa.counit[k]);
                for (auto& [x, c] : v.terms()) phi_p.mat.at(x, (i * 2 + j) * 2 + k) = c;
            }
    auto res = coquasi_es(hg, phi_p);
    CHECK(res.validation.pass());
    // Phi reduces to the eps-triple functional.
    BFunctional unit3 = unit_functional(res.cl.core, 3);
    CHECK(res.cl.assoc.mat == unit3.mat);
}

TEST_CASE("self-crossed for kS3 over F5 (medium case)") {
    Field f5 = Field::prime(5);
    auto h = group_algebra(s3(), f5);
    auto res = self_crossed_algebroid(h);
    CHECK(res.smash.validation.pass());
    CHECK(res.plain.validation.pass());
    CHECK(res.morphism_report.pass());
    CHECK(res.plain.q.qB.dim() == 216);
}
