#include "doctest.h"

#include <array>

#include "algd/hopf.hpp"

using namespace algd;

namespace {

std::vector<std::vector<std::size_t>> cyclic(std::size_t n) {
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    return t;
}

// S3 as permutations of {0,1,2}; element 0 is the identity.
std::vector<std::vector<std::size_t>> s3() {
    std::vector<std::array<int, 3>> perms = {
        {0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
    auto compose = [&](int a, int b) {  // (a after b)
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

TensorFunctional bicharacter(const Field& f, std::size_t order, long q) {
    // R(g^a, g^b) = q^{ab} on a cyclic group algebra of the given order.
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

FDAlgebra ground_field(const Field& f) {
    FDAlgebra k;
    k.field = f;
    k.dim = 1;
    k.mul.assign(1, std::vector<SparseVec>(1, SparseVec::unit(0, f)));
    k.unit = SparseVec::unit(0, f);
    return k;
}

}  // namespace

TEST_CASE("group algebra kZ2") {
    Field q = Field::rationals();
    auto h = group_algebra(cyclic(2), q);
    CHECK(h.dim() == 2);
    CHECK(h.antipode == Matrix::identity(2, q));  // every element self-inverse
    CHECK(h.check().pass());
}

TEST_CASE("group algebras of Z3 and Z4 pass the full axiom suite") {
    for (std::size_t n : {3u, 4u}) {
        CHECK(group_algebra(cyclic(n), Field::rationals()).check().pass());
        CHECK(function_algebra(cyclic(n), Field::prime(5)).check().pass());
    }
}

TEST_CASE("group algebra kS3 antipode is inverse permutation") {
    Field q = Field::rationals();
    auto t = s3();
    auto h = group_algebra(t, q);
    CHECK(h.dim() == 6);
    CHECK(h.check().pass());
    for (std::size_t i = 0; i < 6; ++i) {
        SparseVec s = h.apply_antipode(h.alg.basis(i));
        REQUIRE(s.nnz() == 1);
        CHECK(t[i][s.terms()[0].first] == 0);  // S(g) = g^{-1}
    }
}

TEST_CASE("non-associative table rejected") {
    std::vector<std::vector<std::size_t>> bad = {{0, 1, 2}, {1, 2, 2}, {2, 0, 1}};
    CHECK_THROWS_AS(group_algebra(bad, Field::rationals()), Error);
}

TEST_CASE("function algebra k(Z2)") {
    Field q = Field::rationals();
    auto h = function_algebra(cyclic(2), q);
    CHECK(h.check().pass());
    // delta_e * delta_e = delta_e, delta_e * delta_g = 0.
    CHECK(h.alg.mul[0][0] == SparseVec::unit(0, q));
    CHECK(h.alg.mul[0][1].empty());
    // unit = delta_e + delta_g.
    CHECK(h.alg.unit.nnz() == 2);
    // Delta(delta_g) = delta_e x delta_g + delta_g x delta_e.
    SparseVec want(q);
    want.add_term(0 * 2 + 1, Scalar::one(q));
    want.add_term(1 * 2 + 0, Scalar::one(q));
    CHECK(h.coa.cop[1] == want);
}

TEST_CASE("dual of kZ2 is k(Z2)") {
    Field q = Field::rationals();
    auto h = group_algebra(cyclic(2), q);
    auto [d, pairing] = dual_hopf(h);
    CHECK(pairing == Matrix::identity(2, q));
    CHECK(d.check().pass());
    auto kg = function_algebra(cyclic(2), q);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(d.coa.cop[i] == kg.coa.cop[i]);
        CHECK(d.coa.counit[i] == kg.coa.counit[i]);
        for (std::size_t j = 0; j < 2; ++j) CHECK(d.alg.mul[i][j] == kg.alg.mul[i][j]);
    }
}

TEST_CASE("dual pairing is multiplicative against the coproduct") {
    Field f5 = Field::prime(5);
    auto h = group_algebra(s3(), f5);
    auto [d, pairing] = dual_hopf(h);
    CHECK(d.check().pass());
    std::size_t n = 6;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t x = 0; x < n; ++x) {
                // <e^a e^b, e_x> vs sum <e^a, x1><e^b, x2>.
                Scalar lhs = d.alg.mul[a][b].at(x);
                Scalar rhs = h.coa.cop[x].at(a * n + b);
                CHECK(lhs == rhs);
            }
}

TEST_CASE("double dual returns the original structure tensors") {
    Field f5 = Field::prime(5);
    auto h = group_algebra(s3(), f5);
    auto [d, p1] = dual_hopf(h);
    auto [dd, p2] = dual_hopf(d);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(dd.coa.cop[i] == h.coa.cop[i]);
        CHECK(dd.coa.counit[i] == h.coa.counit[i]);
        for (std::size_t j = 0; j < 6; ++j) CHECK(dd.alg.mul[i][j] == h.alg.mul[i][j]);
    }
    CHECK(dd.antipode == h.antipode);
}

TEST_CASE("convolution inverse: counit and identity") {
    Field q = Field::rationals();
    auto h = group_algebra(cyclic(2), q);
    TensorFunctional eps;
    eps.legs = 1;
    eps.mat = Matrix(1, 2, q);
    eps.mat.at(0, 0) = Scalar::one(q);
    eps.mat.at(0, 1) = Scalar::one(q);
    auto einv = convolution_inverse(eps, h.coa, ground_field(q));
    REQUIRE(einv);
    CHECK(einv->mat == eps.mat);

    // id: H -> H has the antipode as convolution inverse.
    TensorFunctional idm;
    idm.legs = 1;
    idm.mat = Matrix::identity(2, q);
    auto sinv = convolution_inverse(idm, h.coa, h.alg);
    REQUIRE(sinv);
    CHECK(sinv->mat == h.antipode);
}

TEST_CASE("bicharacter inverse on kZ3 over F7") {
    Field f7 = Field::prime(7);
    auto h = group_algebra(cyclic(3), f7);
    auto r = bicharacter(f7, 3, 2);
    auto rinv = convolution_inverse(r, h.coa, ground_field(f7));
    REQUIRE(rinv);
    // Pointwise inverse bicharacter: q^{-ab} = 4^{ab} since 2*4 = 8 = 1 mod 7.
    CHECK(rinv->mat == bicharacter(f7, 3, 4).mat);
}

TEST_CASE("coquasitriangular checks on kZ3/F7") {
    Field f7 = Field::prime(7);
    auto h = group_algebra(cyclic(3), f7);
    CQTStructure triv;
    triv.r = bicharacter(f7, 3, 1);
    triv.r_inv = bicharacter(f7, 3, 1);
    CHECK(check_coquasitriangular(h, triv).pass());
    // q = 2 is a primitive cube root of 1 mod 7: passes.
    CQTStructure good;
    good.r = bicharacter(f7, 3, 2);
    good.r_inv = bicharacter(f7, 3, 4);
    CHECK(check_coquasitriangular(h, good).pass());
    // q = 3 has 3^3 = 6 != 1 mod 7: multiplicativity fails.
    CQTStructure bad;
    bad.r = bicharacter(f7, 3, 3);
    bad.r_inv = bicharacter(f7, 3, 5);
    auto rep = check_coquasitriangular(h, bad);
    CHECK(!rep.pass());
    bool mult_failed = false;
    for (auto& l : rep.laws)
        if (!l.pass && l.law.find("multiplicative") != std::string::npos) mult_failed = true;
    CHECK(mult_failed);
}

TEST_CASE("hopf algebra as trivial coquasi-bialgebra") {
    Field q = Field::rationals();
    auto h = group_algebra(cyclic(3), q);
    CoquasiBialgebra cq;
    cq.alg = h.alg;
    cq.coa = h.coa;
    cq.phi.legs = 3;
    cq.phi.mat = Matrix(1, 27, q);
    for (std::size_t i = 0; i < 27; ++i) cq.phi.mat.at(0, i) = Scalar::one(q);  // eps^3 on kG
    cq.phi_inv = cq.phi;
    CHECK(check_coquasi_bialgebra(cq).pass());
}

TEST_CASE("assembling a hopf algebra solves the antipode when absent") {
    Field q = Field::rationals();
    auto h = group_algebra(cyclic(3), q);
    auto solved = assemble_hopf(h.alg, h.coa);
    CHECK(solved.antipode == h.antipode);
    CHECK(solved.check().pass());
    // A bialgebra without an antipode is rejected: the 2-element monoid
    // {1, m} with m^2 = m is not a group, so its monoid bialgebra is not Hopf.
    FDAlgebra alg;
    alg.field = q;
    alg.dim = 2;
    alg.mul.assign(2, std::vector<SparseVec>(2, SparseVec(q)));
    alg.mul[0][0] = SparseVec::unit(0, q);
    alg.mul[0][1] = SparseVec::unit(1, q);
    alg.mul[1][0] = SparseVec::unit(1, q);
    alg.mul[1][1] = SparseVec::unit(1, q);
    alg.unit = SparseVec::unit(0, q);
    FDCoalgebra coa;
    coa.field = q;
    coa.dim = 2;
    coa.counit.assign(2, Scalar::one(q));
    for (std::size_t i = 0; i < 2; ++i) {
        SparseVec d(q);
        d.add_term(i * 2 + i, Scalar::one(q));
        coa.cop.push_back(d);
    }
    CHECK_THROWS_AS(assemble_hopf(alg, coa), Error);
}

TEST_CASE("simplicity probes") {
    Field q = Field::rationals();
    auto h = group_algebra(cyclic(2), q);
    CHECK(h.alg.trace_form_nondegenerate());
    CHECK(h.alg.center_basis().rows() == 2);  // commutative
    auto s = group_algebra(s3(), q);
    CHECK(s.alg.center_basis().rows() == 3);  // class algebra of S3
    // Element inversion: g is its own inverse in kZ2.
    auto gi = h.alg.invert_element(h.alg.basis(1));
    REQUIRE(gi);
    CHECK(*gi == h.alg.basis(1));
}
