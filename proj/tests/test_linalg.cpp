#include "doctest.h"

#include "algd/linalg.hpp"

using namespace algd;

static Matrix from_ints(const std::vector<std::vector<long>>& rows, const Field& f) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size(), f);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = Scalar::integer(rows[i][j], f);
    return m;
}

TEST_CASE("scalar arithmetic") {
    Field q = Field::rationals();
    Scalar a = Scalar::parse("2/4", q);
    CHECK(a.str() == "1/2");
    CHECK((a + a).is_one());
    CHECK((a - a).is_zero());
    CHECK((a * Scalar::integer(2, q)).is_one());
    CHECK(a.inv().str() == "2");

    Field f7 = Field::prime(7);
    Scalar b = Scalar::integer(-3, f7);
    CHECK(b.str() == "4");
    CHECK((b * b.inv()).is_one());
    CHECK_THROWS_AS(Field::prime(6), Error);
    CHECK_THROWS_AS((void)(a + b), Error);
}

TEST_CASE("rref identity and zero") {
    Field q = Field::rationals();
    auto [r1, p1] = Matrix::identity(2, q).rref();
    CHECK(r1 == Matrix::identity(2, q));
    CHECK(p1 == std::vector<std::size_t>{0, 1});

    Matrix z(2, 2, q);
    auto [r0, p0] = z.rref();
    CHECK(r0.is_zero());
    CHECK(p0.empty());
}

TEST_CASE("rref over F3 hand-reduced") {
    // [[1,2],[2,1]] over F3: second row is twice the first.
    Field f3 = Field::prime(3);
    auto [r, p] = from_ints({{1, 2}, {2, 1}}, f3).rref();
    CHECK(r == from_ints({{1, 2}, {0, 0}}, f3));
    CHECK(p == std::vector<std::size_t>{0});
}

TEST_CASE("solve") {
    Field q = Field::rationals();
    Matrix id = Matrix::identity(3, q);
    std::vector<Scalar> b = {Scalar::integer(1, q), Scalar::integer(-2, q), Scalar::integer(5, q)};
    auto x = id.solve(b);
    REQUIRE(x);
    CHECK(*x == b);

    Matrix z(2, 2, q);
    CHECK(!z.solve({Scalar::integer(1, q), Scalar::integer(0, q)}));

    Matrix two = from_ints({{2}}, q);
    auto y = two.solve({Scalar::integer(1, q)});
    REQUIRE(y);
    CHECK((*y)[0].str() == "1/2");
}

TEST_CASE("solve consistency: a*x == b exactly") {
    Field f5 = Field::prime(5);
    Matrix a = from_ints({{1, 2, 3}, {4, 0, 1}}, f5);
    std::vector<Scalar> b = {Scalar::integer(2, f5), Scalar::integer(3, f5)};
    auto x = a.solve(b);
    REQUIRE(x);
    CHECK(a.apply(*x) == b);
}

TEST_CASE("kernel") {
    Field q = Field::rationals();
    CHECK(Matrix::identity(4, q).kernel().rows() == 0);
    CHECK(Matrix(2, 2, q).kernel().rows() == 2);
    Matrix a = from_ints({{1, 1}}, q);
    Matrix k = a.kernel();
    REQUIRE(k.rows() == 1);
    // span{(1,-1)}: second coordinate is the negative of the first.
    CHECK(k.at(0, 0) == -k.at(0, 1));
    // a * k^T = 0 exactly.
    CHECK((a * k.transpose()).is_zero());
}

TEST_CASE("quotient basics") {
    Field q = Field::rationals();

    QuotientSpace full(3, q);
    full.finalize();
    CHECK(full.dim() == 3);
    SparseVec v = SparseVec::unit(1, q);
    CHECK(full.section(full.project(v)) == v);

    QuotientSpace dead(2, q);
    dead.add_relation(SparseVec::unit(0, q));
    dead.add_relation(SparseVec::unit(1, q));
    dead.finalize();
    CHECK(dead.dim() == 0);

    QuotientSpace line(2, q);
    SparseVec rel(q);
    rel.add_term(0, Scalar::one(q));
    rel.add_term(1, Scalar::integer(-1, q));
    line.add_relation(rel);
    line.finalize();
    CHECK(line.dim() == 1);
    CHECK(line.project(SparseVec::unit(0, q)) == line.project(SparseVec::unit(1, q)));
}

TEST_CASE("quotient invariants: P o S = id and relations project to zero") {
    Field f3 = Field::prime(3);
    QuotientSpace qs(4, f3);
    SparseVec r1(f3), r2(f3);
    r1.add_term(0, Scalar::integer(1, f3));
    r1.add_term(2, Scalar::integer(2, f3));
    r2.add_term(1, Scalar::integer(1, f3));
    r2.add_term(3, Scalar::integer(1, f3));
    qs.add_relation(r1);
    qs.add_relation(r2);
    qs.finalize();
    CHECK(qs.dim() == 2);
    for (std::size_t k = 0; k < qs.dim(); ++k) {
        std::vector<Scalar> w(qs.dim(), Scalar::zero(f3));
        w[k] = Scalar::one(f3);
        CHECK(qs.project(qs.section(w)) == w);
    }
    CHECK(qs.reduce(r1).empty());
    CHECK(qs.reduce(r2).empty());
    // v - S(P(v)) lies in the relation span for random-ish v.
    SparseVec v(f3);
    v.add_term(0, Scalar::integer(1, f3));
    v.add_term(1, Scalar::integer(2, f3));
    v.add_term(3, Scalar::integer(1, f3));
    SparseVec canon = qs.section(qs.project(v));
    CHECK(qs.in_relations(v - canon));
}

TEST_CASE("invert_between_quotients") {
    Field q = Field::rationals();
    QuotientSpace a(2, q), b(2, q);
    a.finalize();
    b.finalize();
    auto idmap = [](const SparseVec& v) { return v; };
    auto res = invert_between_quotients(idmap, a, b);
    CHECK(res.status == QuotientInverse::Status::Ok);
    CHECK(res.inverse == Matrix::identity(2, q));

    // A map sending a relation generator outside the codomain relations.
    QuotientSpace dom(2, q), cod(2, q);
    SparseVec rel(q);
    rel.add_term(0, Scalar::one(q));
    dom.add_relation(rel);
    dom.finalize();
    cod.finalize();  // no relations
    auto bad = invert_between_quotients(idmap, dom, cod);
    CHECK(bad.status == QuotientInverse::Status::NotWellDefined);

    // Singular induced map.
    QuotientSpace d2(2, q), c2(2, q);
    d2.finalize();
    c2.finalize();
    auto collapse = [&](const SparseVec& v) {
        SparseVec r(q);
        Scalar s = v.at(0) + v.at(1);
        r.add_term(0, s);
        return r;
    };
    auto sing = invert_between_quotients(collapse, d2, c2);
    CHECK(sing.status == QuotientInverse::Status::NotBijective);
}

TEST_CASE("echelon incremental reduction stays exact") {
    Field q = Field::rationals();
    Echelon e(q);
    for (int i = 0; i < 5; ++i) {
        SparseVec r(q);
        r.add_term(i, Scalar::one(q));
        r.add_term(i + 1, Scalar::integer(-1, q));
        CHECK(e.insert(r));
    }
    CHECK(e.rank() == 5);
    SparseVec v(q);
    v.add_term(0, Scalar::one(q));
    v.add_term(5, Scalar::integer(-1, q));
    CHECK(e.contains(v));
    SparseVec w(q);
    w.add_term(0, Scalar::one(q));
    w.add_term(5, Scalar::one(q));
    CHECK(!e.contains(w));
}

TEST_CASE("solve_in_span") {
    Field q = Field::rationals();
    SparseVec g1(q), g2(q);
    g1.add_term(0, Scalar::one(q));
    g1.add_term(1, Scalar::one(q));
    g2.add_term(1, Scalar::one(q));
    SparseVec t(q);
    t.add_term(0, Scalar::integer(2, q));
    t.add_term(1, Scalar::integer(3, q));
    auto c = solve_in_span({g1, g2}, t, q);
    REQUIRE(c);
    SparseVec back(q);
    back.axpy((*c)[0], g1);
    back.axpy((*c)[1], g2);
    CHECK(back == t);
    SparseVec out(q);
    out.add_term(2, Scalar::one(q));
    CHECK(!solve_in_span({g1, g2}, out, q));
}
