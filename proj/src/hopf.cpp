#include "algd/hopf.hpp"

#include <sstream>

namespace algd {

SparseVec FDAlgebra::multiply(const SparseVec& x, const SparseVec& y) const {
    SparseVec r(field);
    for (auto& [i, a] : x.terms())
        for (auto& [j, b] : y.terms()) r.axpy(a * b, mul[i][j]);
    return r;
}

Matrix FDAlgebra::left_regular(const SparseVec& x) const {
    Matrix m(dim, dim, field);
    for (std::size_t j = 0; j < dim; ++j) {
        SparseVec col = multiply(x, basis(j));
        for (auto& [i, c] : col.terms()) m.at(i, j) = c;
    }
    return m;
}

std::optional<SparseVec> FDAlgebra::invert_element(const SparseVec& x) const {
    // Solve x*y = 1 by the left-regular representation, then verify y*x = 1.
    Matrix lx = left_regular(x);
    auto y = lx.solve(unit.dense(dim));
    if (!y) return std::nullopt;
    SparseVec yv = SparseVec::from_dense(*y, field);
    if (!(multiply(yv, x) == unit)) return std::nullopt;
    return yv;
}

Matrix FDAlgebra::center_basis() const {
    // z in center iff (L_{e_i} - R_{e_i}) z = 0 for all i.
    Matrix sys(dim * dim, dim, field);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            SparseVec diff = multiply(basis(i), basis(j)) - multiply(basis(j), basis(i));
            for (auto& [k, c] : diff.terms()) sys.at(i * dim + k, j) += c;
        }
    }
    return sys.kernel();
}

bool FDAlgebra::trace_form_nondegenerate() const {
    Matrix t(dim, dim, field);
    std::vector<Matrix> lreg;
    lreg.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) lreg.push_back(left_regular(basis(i)));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            Matrix p = lreg[i] * lreg[j];
            Scalar tr = Scalar::zero(field);
            for (std::size_t k = 0; k < dim; ++k) tr += p.at(k, k);
            t.at(i, j) = tr;
        }
    return t.rank() == dim;
}

Report FDAlgebra::check(bool check_assoc) const {
    Report rep;
    rep.subject = "algebra";
    bool unit_ok = true;
    std::string w;
    for (std::size_t i = 0; i < dim && unit_ok; ++i) {
        if (!(multiply(unit, basis(i)) == basis(i))) {
            unit_ok = false;
            w = "1*" + label(i);
        } else if (!(multiply(basis(i), unit) == basis(i))) {
            unit_ok = false;
            w = label(i) + "*1";
        }
    }
    rep.record("two-sided unit", unit_ok, w);
    if (check_assoc && associative) {
        bool ok = true;
        std::string wit;
        for (std::size_t i = 0; i < dim && ok; ++i)
            for (std::size_t j = 0; j < dim && ok; ++j)
                for (std::size_t k = 0; k < dim && ok; ++k) {
                    SparseVec lhs = multiply(mul[i][j], basis(k));
                    SparseVec rhs = multiply(basis(i), mul[j][k]);
                    if (!(lhs == rhs)) {
                        ok = false;
                        wit = "(" + label(i) + label(j) + ")" + label(k) + " vs " + label(i) +
                              "(" + label(j) + label(k) + "): " + lhs.str() + " != " + rhs.str();
                    }
                }
        rep.record("associativity", ok, wit);
    }
    return rep;
}

SparseVec FDCoalgebra::coproduct(const SparseVec& x) const {
    SparseVec r(field);
    for (auto& [i, a] : x.terms()) r.axpy(a, cop[i]);
    return r;
}

Scalar FDCoalgebra::counit_of(const SparseVec& x) const {
    Scalar s = Scalar::zero(field);
    for (auto& [i, a] : x.terms()) s += a * counit[i];
    return s;
}

SparseVec FDCoalgebra::iterated(const SparseVec& x, std::size_t legs) const {
    if (legs == 1) return x;
    // Expand the first leg repeatedly: Delta^{m} = (Delta tensor id^{m-1}) o Delta^{m-1}.
    SparseVec cur = coproduct(x);  // 2 legs
    std::size_t have = 2;
    while (have < legs) {
        // cur lives in k^{dim^have}; split index as i * dim^{have-1} + rest.
        std::size_t tail = 1;
        for (std::size_t t = 1; t < have; ++t) tail *= dim;
        SparseVec next(field);
        for (auto& [idx, c] : cur.terms()) {
            std::size_t i = idx / tail, rest = idx % tail;
            for (auto& [pq, d] : cop[i].terms())
                next.add_term(pq * tail + rest, c * d);
        }
        cur = next;
        ++have;
    }
    return cur;
}

Report FDCoalgebra::check() const {
    Report rep;
    rep.subject = "coalgebra";
    bool co = true;
    std::string w;
    for (std::size_t i = 0; i < dim && co; ++i) {
        // (Delta tensor id) Delta = (id tensor Delta) Delta on e_i.
        SparseVec lhs(field), rhs(field);
        for (auto& [pq, c] : cop[i].terms()) {
            std::size_t p = pq / dim, q = pq % dim;
            for (auto& [rs, d] : cop[p].terms()) lhs.add_term(rs * dim + q, c * d);
            for (auto& [rs, d] : cop[q].terms()) rhs.add_term((p * dim) * dim + rs, c * d);
        }
        if (!(lhs == rhs)) {
            co = false;
            w = "basis " + std::to_string(i);
        }
    }
    rep.record("coassociativity", co, w);
    bool cu = true;
    std::string w2;
    for (std::size_t i = 0; i < dim && cu; ++i) {
        SparseVec left(field), right(field);
        for (auto& [pq, c] : cop[i].terms()) {
            std::size_t p = pq / dim, q = pq % dim;
            left.add_term(q, c * counit[p]);
            right.add_term(p, c * counit[q]);
        }
        if (!(left == SparseVec::unit(i, field)) || !(right == SparseVec::unit(i, field))) {
            cu = false;
            w2 = "basis " + std::to_string(i);
        }
    }
    rep.record("counit laws", cu, w2);
    return rep;
}

SparseVec tensor2(const SparseVec& x, const SparseVec& y, std::size_t n) {
    SparseVec r(x.field());
    for (auto& [i, a] : x.terms())
        for (auto& [j, b] : y.terms()) r.add_term(i * n + j, a * b);
    return r;
}

SparseVec tensor3(const SparseVec& x, const SparseVec& y, const SparseVec& z, std::size_t n) {
    return tensor2(tensor2(x, y, n), z, n);
}

SparseVec contract_mul(const FDAlgebra& a, const SparseVec& t2) {
    SparseVec r(a.field);
    for (auto& [ij, c] : t2.terms()) r.axpy(c, a.mul[ij / a.dim][ij % a.dim]);
    return r;
}

const Matrix& HopfAlgebra::inverse_antipode() const {
    if (!antipode_inv) throw Error("NoInverseAntipode", "inverse antipode required but absent");
    return *antipode_inv;
}

Report HopfAlgebra::check() const {
    Report rep;
    rep.subject = "hopf";
    rep.merge(alg.check());
    rep.merge(coa.check());
    std::size_t n = alg.dim;
    // Delta and counit are algebra maps.
    bool dm = true;
    std::string w;
    for (std::size_t i = 0; i < n && dm; ++i)
        for (std::size_t j = 0; j < n && dm; ++j) {
            SparseVec lhs = coa.coproduct(alg.mul[i][j]);
            // Delta(e_i) Delta(e_j) with factorwise product.
            SparseVec rhs(field());
            for (auto& [pq, c] : coa.cop[i].terms())
                for (auto& [rs, d] : coa.cop[j].terms()) {
                    SparseVec t = tensor2(alg.multiply(alg.basis(pq / n), alg.basis(rs / n)),
                                          alg.multiply(alg.basis(pq % n), alg.basis(rs % n)), n);
                    rhs.axpy(c * d, t);
                }
            if (!(lhs == rhs)) {
                dm = false;
                w = alg.label(i) + "," + alg.label(j);
            }
        }
    rep.record("coproduct multiplicative", dm, w);
    rep.record("coproduct unital", coa.coproduct(alg.unit) == tensor2(alg.unit, alg.unit, n), "");
    bool em = true;
    std::string we;
    for (std::size_t i = 0; i < n && em; ++i)
        for (std::size_t j = 0; j < n && em; ++j)
            if (coa.counit_of(alg.mul[i][j]) != coa.counit_of(alg.basis(i)) * coa.counit_of(alg.basis(j))) {
                em = false;
                we = alg.label(i) + "," + alg.label(j);
            }
    rep.record("counit multiplicative", em, we);
    rep.record("counit unital", coa.counit_of(alg.unit).is_one(), "");
    // Antipode: m(S tensor id)Delta = unit o counit = m(id tensor S)Delta.
    bool sa = true;
    std::string ws;
    for (std::size_t i = 0; i < n && sa; ++i) {
        SparseVec left(field()), right(field());
        for (auto& [pq, c] : coa.cop[i].terms()) {
            std::size_t p = pq / n, q = pq % n;
            left.axpy(c, alg.multiply(antipode.apply(alg.basis(p)), alg.basis(q)));
            right.axpy(c, alg.multiply(alg.basis(p), antipode.apply(alg.basis(q))));
        }
        SparseVec want = alg.unit.scaled(coa.counit[i]);
        if (!(left == want) || !(right == want)) {
            sa = false;
            ws = alg.label(i);
        }
    }
    rep.record("antipode convolution-inverts identity", sa, ws);
    if (antipode_inv) {
        rep.record("inverse antipode", (antipode * *antipode_inv) == Matrix::identity(n, field()), "");
    }
    return rep;
}

void check_group_table(const std::vector<std::vector<std::size_t>>& table) {
    std::size_t n = table.size();
    if (n == 0) throw Error("NotAGroup", "empty table");
    for (auto& row : table) {
        if (row.size() != n) throw Error("NotAGroup", "table not square");
        for (auto v : row)
            if (v >= n) throw Error("NotAGroup", "entry out of range");
    }
    for (std::size_t i = 0; i < n; ++i)
        if (table[0][i] != i || table[i][0] != i)
            throw Error("NotAGroup", "index 0 is not an identity");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (table[table[i][j]][k] != table[i][table[j][k]])
                    throw Error("NotAGroup", "associativity fails at (" + std::to_string(i) + "," +
                                                 std::to_string(j) + "," + std::to_string(k) + ")");
    for (std::size_t i = 0; i < n; ++i) {
        bool has_inv = false;
        for (std::size_t j = 0; j < n; ++j)
            if (table[i][j] == 0 && table[j][i] == 0) has_inv = true;
        if (!has_inv) throw Error("NotAGroup", "element " + std::to_string(i) + " has no inverse");
    }
}

static std::size_t group_inverse(const std::vector<std::vector<std::size_t>>& table, std::size_t i) {
    for (std::size_t j = 0; j < table.size(); ++j)
        if (table[i][j] == 0) return j;
    throw Error("NotAGroup", "no inverse");
}

HopfAlgebra group_algebra(const std::vector<std::vector<std::size_t>>& table, const Field& f) {
    check_group_table(table);
    std::size_t n = table.size();
    HopfAlgebra h;
    h.alg.field = f;
    h.alg.dim = n;
    h.alg.mul.assign(n, std::vector<SparseVec>(n, SparseVec(f)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h.alg.mul[i][j] = SparseVec::unit(table[i][j], f);
    h.alg.unit = SparseVec::unit(0, f);
    for (std::size_t i = 0; i < n; ++i) h.alg.labels.push_back("g" + std::to_string(i));
    h.coa.field = f;
    h.coa.dim = n;
    h.coa.counit.assign(n, Scalar::one(f));
    for (std::size_t i = 0; i < n; ++i) {
        SparseVec d(f);
        d.add_term(i * n + i, Scalar::one(f));
        h.coa.cop.push_back(d);
    }
    h.antipode = Matrix(n, n, f);
    for (std::size_t i = 0; i < n; ++i) h.antipode.at(group_inverse(table, i), i) = Scalar::one(f);
    h.antipode_inv = h.antipode.inverse();
    return h;
}

HopfAlgebra function_algebra(const std::vector<std::vector<std::size_t>>& table, const Field& f) {
    check_group_table(table);
    std::size_t n = table.size();
    HopfAlgebra h;
    h.alg.field = f;
    h.alg.dim = n;
    h.alg.mul.assign(n, std::vector<SparseVec>(n, SparseVec(f)));
    for (std::size_t i = 0; i < n; ++i) h.alg.mul[i][i] = SparseVec::unit(i, f);
    h.alg.unit = SparseVec(f);
    for (std::size_t i = 0; i < n; ++i) h.alg.unit.add_term(i, Scalar::one(f));
    for (std::size_t i = 0; i < n; ++i) h.alg.labels.push_back("d" + std::to_string(i));
    h.coa.field = f;
    h.coa.dim = n;
    h.coa.counit.assign(n, Scalar::zero(f));
    h.coa.counit[0] = Scalar::one(f);
    for (std::size_t u = 0; u < n; ++u) {
        SparseVec d(f);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (table[a][b] == u) d.add_term(a * n + b, Scalar::one(f));
        h.coa.cop.push_back(d);
    }
    h.antipode = Matrix(n, n, f);
    for (std::size_t i = 0; i < n; ++i) h.antipode.at(group_inverse(table, i), i) = Scalar::one(f);
    h.antipode_inv = h.antipode.inverse();
    return h;
}

HopfAlgebra assemble_hopf(const FDAlgebra& alg, const FDCoalgebra& coa,
                          const std::optional<Matrix>& antipode) {
    HopfAlgebra h;
    h.alg = alg;
    h.coa = coa;
    if (antipode) {
        h.antipode = *antipode;
    } else {
        TensorFunctional idm;
        idm.legs = 1;
        idm.mat = Matrix::identity(alg.dim, alg.field);
        auto s = convolution_inverse(idm, coa, alg);
        if (!s) throw Error("NotHopf", "the identity has no convolution inverse");
        h.antipode = s->mat;
    }
    auto inv = h.antipode.inverse();
    if (inv) h.antipode_inv = *inv;
    Report rep = h.check();
    if (!rep.pass())
        throw Error("NotHopf", rep.first_failure()->law + " [" + rep.first_failure()->witness + "]");
    return h;
}

std::pair<HopfAlgebra, Matrix> dual_hopf(const HopfAlgebra& h) {
    std::size_t n = h.dim();
    Field f = h.field();
    HopfAlgebra d;
    d.alg.field = f;
    d.alg.dim = n;
    d.alg.mul.assign(n, std::vector<SparseVec>(n, SparseVec(f)));
    // (e^i e^j)(x) = e^i(x_(1)) e^j(x_(2)): the coefficient of e^k is the
    // coefficient of e_i tensor e_j in Delta e_k.
    for (std::size_t k = 0; k < n; ++k)
        for (auto& [pq, c] : h.coa.cop[k].terms())
            d.alg.mul[pq / n][pq % n].add_term(k, c);
    d.alg.unit = SparseVec(f);
    for (std::size_t k = 0; k < n; ++k)
        if (!h.coa.counit[k].is_zero()) d.alg.unit.add_term(k, h.coa.counit[k]);
    for (std::size_t i = 0; i < n; ++i) d.alg.labels.push_back("f" + std::to_string(i));
    d.coa.field = f;
    d.coa.dim = n;
    d.coa.counit.assign(n, Scalar::zero(f));
    for (std::size_t k = 0; k < n; ++k) d.coa.counit[k] = h.alg.unit.at(k);
    // Delta e^k has coefficient at e^i tensor e^j = coefficient of e_k in e_i e_j.
    for (std::size_t k = 0; k < n; ++k) {
        SparseVec dk(f);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Scalar c = h.alg.mul[i][j].at(k);
                if (!c.is_zero()) dk.add_term(i * n + j, c);
            }
        d.coa.cop.push_back(dk);
    }
    d.antipode = h.antipode.transpose();
    if (h.antipode_inv) d.antipode_inv = h.antipode_inv->transpose();
    return {d, Matrix::identity(n, f)};
}

std::optional<TensorFunctional> convolution_inverse(const TensorFunctional& f,
                                                    const FDCoalgebra& domain,
                                                    const FDAlgebra& codomain) {
    std::size_t n = domain.dim;
    std::size_t m = 1;
    for (std::size_t i = 0; i < f.legs; ++i) m *= n;
    std::size_t adim = codomain.dim;
    // Unknown g as a (adim x m) matrix; equations: for each multi-index I,
    // sum f(I_(1)) g(I_(2)) = unit * eps(I). Leg-wise coproducts.
    // Build Delta applied to each leg of the basis multi-index.
    // For multi-index I = (i_1..i_legs): Delta(I) = prod of cop[i_t] split
    // into two multi-indices.
    Matrix sys(m * adim, m * adim, codomain.field);
    std::vector<Scalar> rhs(m * adim, Scalar::zero(codomain.field));
    std::vector<std::size_t> digits(f.legs);
    for (std::size_t I = 0; I < m; ++I) {
        std::size_t tmp = I;
        for (std::size_t t = f.legs; t-- > 0;) {
            digits[t] = tmp % n;
            tmp /= n;
        }
        // Accumulate pairs (J, K, coeff): product over legs of cop entries.
        std::vector<std::tuple<std::size_t, std::size_t, Scalar>> pairs;
        pairs.emplace_back(0, 0, Scalar::one(codomain.field));
        for (std::size_t t = 0; t < f.legs; ++t) {
            std::vector<std::tuple<std::size_t, std::size_t, Scalar>> next;
            for (auto& [J, K, c] : pairs)
                for (auto& [pq, d] : domain.cop[digits[t]].terms())
                    next.emplace_back(J * n + pq / n, K * n + pq % n, c * d);
            pairs = std::move(next);
        }
        // Row block for I: for each output coordinate a of the codomain.
        for (auto& [J, K, c] : pairs) {
            SparseVec fJ = f.mat.apply(SparseVec::unit(J, codomain.field));
            // term: fJ * g(e_K): contributes to row I via codomain product.
            for (auto& [x, fx] : fJ.terms())
                for (std::size_t y = 0; y < adim; ++y) {
                    SparseVec prod = codomain.mul[x][y];
                    for (auto& [z, pz] : prod.terms())
                        sys.at(I * adim + z, K * adim + y) += c * fx * pz;
                }
        }
        Scalar eps = Scalar::one(codomain.field);
        for (std::size_t t = 0; t < f.legs; ++t) eps *= domain.counit[digits[t]];
        for (auto& [z, uz] : codomain.unit.terms()) rhs[I * adim + z] += eps * uz;
    }
    auto sol = sys.solve(rhs);
    if (!sol) return std::nullopt;
    TensorFunctional g;
    g.legs = f.legs;
    g.mat = Matrix(adim, m, codomain.field);
    for (std::size_t K = 0; K < m; ++K)
        for (std::size_t y = 0; y < adim; ++y) g.mat.at(y, K) = (*sol)[K * adim + y];
    // Verify the other side g * f = unit o eps.
    for (std::size_t I = 0; I < m; ++I) {
        std::size_t tmp = I;
        for (std::size_t t = f.legs; t-- > 0;) {
            digits[t] = tmp % n;
            tmp /= n;
        }
        std::vector<std::tuple<std::size_t, std::size_t, Scalar>> pairs;
        pairs.emplace_back(0, 0, Scalar::one(codomain.field));
        for (std::size_t t = 0; t < f.legs; ++t) {
            std::vector<std::tuple<std::size_t, std::size_t, Scalar>> next;
            for (auto& [J, K, c] : pairs)
                for (auto& [pq, d] : domain.cop[digits[t]].terms())
                    next.emplace_back(J * n + pq / n, K * n + pq % n, c * d);
            pairs = std::move(next);
        }
        SparseVec acc(codomain.field);
        for (auto& [J, K, c] : pairs) {
            SparseVec gJ = g.mat.apply(SparseVec::unit(J, codomain.field));
            SparseVec fK = f.mat.apply(SparseVec::unit(K, codomain.field));
            acc.axpy(c, codomain.multiply(gJ, fK));
        }
        Scalar eps = Scalar::one(codomain.field);
        for (std::size_t t = 0; t < f.legs; ++t) eps *= domain.counit[digits[t]];
        if (!(acc == codomain.unit.scaled(eps))) return std::nullopt;
    }
    return g;
}

Report check_coquasitriangular(const HopfAlgebra& h, const CQTStructure& r) {
    Report rep;
    rep.subject = "coquasitriangular";
    std::size_t n = h.dim();
    Field f = h.field();
    auto R = [&](const SparseVec& x, const SparseVec& y) {
        SparseVec v = r.r.mat.apply(tensor2(x, y, n));
        return v.at(0);
    };
    // R * R^{-1} = eps tensor eps (both orders).
    {
        bool ok = true;
        std::string w;
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = 0; j < n && ok; ++j) {
                Scalar lhs = Scalar::zero(f), rhs = Scalar::zero(f);
                for (auto& [pq, c] : h.coa.cop[i].terms())
                    for (auto& [rs, d] : h.coa.cop[j].terms()) {
                        SparseVec t1 = tensor2(h.alg.basis(pq / n), h.alg.basis(rs / n), n);
                        SparseVec t2 = tensor2(h.alg.basis(pq % n), h.alg.basis(rs % n), n);
                        lhs += c * d * r.r.mat.apply(t1).at(0) * r.r_inv.mat.apply(t2).at(0);
                        rhs += c * d * r.r_inv.mat.apply(t1).at(0) * r.r.mat.apply(t2).at(0);
                    }
                Scalar want = h.coa.counit[i] * h.coa.counit[j];
                if (lhs != want || rhs != want) {
                    ok = false;
                    w = h.alg.label(i) + "," + h.alg.label(j);
                }
            }
        rep.record("R convolution-invertible", ok, w);
    }
    // R(h, gf) = R(h_(1), f) R(h_(2), g).
    bool m1 = true;
    std::string w1;
    for (std::size_t hi = 0; hi < n && m1; ++hi)
        for (std::size_t gi = 0; gi < n && m1; ++gi)
            for (std::size_t fi = 0; fi < n && m1; ++fi) {
                Scalar lhs = R(h.alg.basis(hi), h.alg.multiply(h.alg.basis(gi), h.alg.basis(fi)));
                Scalar rhs = Scalar::zero(f);
                for (auto& [pq, c] : h.coa.cop[hi].terms())
                    rhs += c * R(h.alg.basis(pq / n), h.alg.basis(fi)) *
                           R(h.alg.basis(pq % n), h.alg.basis(gi));
                if (lhs != rhs) {
                    m1 = false;
                    w1 = "(" + h.alg.label(hi) + ";" + h.alg.label(gi) + h.alg.label(fi) + ")";
                }
            }
    rep.record("R multiplicative in second slot", m1, w1);
    // R(hg, f) = R(h, f_(1)) R(g, f_(2)).
    bool m2 = true;
    std::string w2;
    for (std::size_t hi = 0; hi < n && m2; ++hi)
        for (std::size_t gi = 0; gi < n && m2; ++gi)
            for (std::size_t fi = 0; fi < n && m2; ++fi) {
                Scalar lhs = R(h.alg.multiply(h.alg.basis(hi), h.alg.basis(gi)), h.alg.basis(fi));
                Scalar rhs = Scalar::zero(f);
                for (auto& [pq, c] : h.coa.cop[fi].terms())
                    rhs += c * R(h.alg.basis(hi), h.alg.basis(pq / n)) *
                           R(h.alg.basis(gi), h.alg.basis(pq % n));
                if (lhs != rhs) {
                    m2 = false;
                    w2 = "(" + h.alg.label(hi) + h.alg.label(gi) + ";" + h.alg.label(fi) + ")";
                }
            }
    rep.record("R multiplicative in first slot", m2, w2);
    // g_(1) h_(1) R(h_(2), g_(2)) = R(h_(1), g_(1)) h_(2) g_(2).
    bool br = true;
    std::string w3;
    for (std::size_t hi = 0; hi < n && br; ++hi)
        for (std::size_t gi = 0; gi < n && br; ++gi) {
            SparseVec lhs(f), rhs(f);
            for (auto& [pq, c] : h.coa.cop[hi].terms())
                for (auto& [rs, d] : h.coa.cop[gi].terms()) {
                    std::size_t h1 = pq / n, h2 = pq % n, g1 = rs / n, g2 = rs % n;
                    lhs.axpy(c * d * R(h.alg.basis(h2), h.alg.basis(g2)),
                             h.alg.multiply(h.alg.basis(g1), h.alg.basis(h1)));
                    rhs.axpy(c * d * R(h.alg.basis(h1), h.alg.basis(g1)),
                             h.alg.multiply(h.alg.basis(h2), h.alg.basis(g2)));
                }
            if (!(lhs == rhs)) {
                br = false;
                w3 = h.alg.label(hi) + "," + h.alg.label(gi);
            }
        }
    rep.record("quasi-commutativity", br, w3);
    return rep;
}

Report check_coquasi_bialgebra(const CoquasiBialgebra& h) {
    Report rep;
    rep.subject = "coquasi-bialgebra";
    std::size_t n = h.dim();
    Field f = h.field();
    rep.merge(h.coa.check());
    rep.merge(h.alg.check(false));  // unit laws only; associativity not required
    auto phi3 = [&](const SparseVec& x, const SparseVec& y, const SparseVec& z) {
        return h.phi.mat.apply(tensor3(x, y, z, n)).at(0);
    };
    // Product and unit are coalgebra morphisms.
    bool pm = true;
    std::string wpm;
    for (std::size_t i = 0; i < n && pm; ++i)
        for (std::size_t j = 0; j < n && pm; ++j) {
            SparseVec lhs = h.coa.coproduct(h.alg.mul[i][j]);
            SparseVec rhs(f);
            for (auto& [pq, c] : h.coa.cop[i].terms())
                for (auto& [rs, d] : h.coa.cop[j].terms())
                    rhs.axpy(c * d, tensor2(h.alg.multiply(h.alg.basis(pq / n), h.alg.basis(rs / n)),
                                            h.alg.multiply(h.alg.basis(pq % n), h.alg.basis(rs % n)), n));
            if (!(lhs == rhs)) {
                pm = false;
                wpm = h.alg.label(i) + "," + h.alg.label(j);
            }
            if (h.coa.counit_of(h.alg.mul[i][j]) !=
                h.coa.counit_of(h.alg.basis(i)) * h.coa.counit_of(h.alg.basis(j))) {
                pm = false;
                wpm = "counit at " + h.alg.label(i) + "," + h.alg.label(j);
            }
        }
    rep.record("product is a coalgebra map", pm, wpm);
    rep.record("unit is grouplike",
               h.coa.coproduct(h.alg.unit) == tensor2(h.alg.unit, h.alg.unit, n) &&
                   h.coa.counit_of(h.alg.unit).is_one(),
               "");
    // phi * phi^{-1} = eps^3 both ways (convolution inverses are unique, so
    // the stored inverse must agree with the solved one).
    {
        FDAlgebra ground;
        ground.field = f;
        ground.dim = 1;
        ground.mul.assign(1, std::vector<SparseVec>(1, SparseVec::unit(0, f)));
        ground.unit = SparseVec::unit(0, f);
        auto inv = convolution_inverse(h.phi, h.coa, ground);
        bool ok = inv.has_value() && inv->mat == h.phi_inv.mat;
        rep.record("associator convolution-invertible (stored inverse correct)", ok, "");
    }
    // (1) phi(h, 1, g) = eps(hg).
    bool n1 = true;
    std::string wn1;
    for (std::size_t i = 0; i < n && n1; ++i)
        for (std::size_t j = 0; j < n && n1; ++j) {
            if (phi3(h.alg.basis(i), h.alg.unit, h.alg.basis(j)) !=
                h.coa.counit_of(h.alg.multiply(h.alg.basis(i), h.alg.basis(j)))) {
                n1 = false;
                wn1 = h.alg.label(i) + ",1," + h.alg.label(j);
            }
        }
    rep.record("associator normalisation", n1, wn1);
    // (2) 3-cocycle condition over basis 4-tuples (h,g,f,l):
    // phi(h1,g1,f1 l1) phi(h2 g2, f2, l2)
    //   = phi(g1,f1,l1) phi(h1, g2 f2, l2) phi(h2, g3, f3).
    bool c2 = true;
    std::string wc2;
    for (std::size_t a = 0; a < n && c2; ++a)
        for (std::size_t b = 0; b < n && c2; ++b)
            for (std::size_t c = 0; c < n && c2; ++c)
                for (std::size_t d = 0; d < n && c2; ++d) {
                    Scalar lhs = Scalar::zero(f), rhs = Scalar::zero(f);
                    for (auto& [hh, ch] : h.coa.cop[a].terms())
                        for (auto& [gg, cg] : h.coa.cop[b].terms())
                            for (auto& [ff, cf] : h.coa.cop[c].terms())
                                for (auto& [ll, cl] : h.coa.cop[d].terms()) {
                                    std::size_t h1 = hh / n, h2 = hh % n, g1 = gg / n, g2 = gg % n;
                                    std::size_t f1 = ff / n, f2 = ff % n, l1 = ll / n, l2 = ll % n;
                                    lhs += ch * cg * cf * cl *
                                           phi3(h.alg.basis(h1), h.alg.basis(g1),
                                                h.alg.multiply(h.alg.basis(f1), h.alg.basis(l1))) *
                                           phi3(h.alg.multiply(h.alg.basis(h2), h.alg.basis(g2)),
                                                h.alg.basis(f2), h.alg.basis(l2));
                                }
                    SparseVec g3 = h.coa.iterated(h.alg.basis(b), 3);
                    SparseVec f3 = h.coa.iterated(h.alg.basis(c), 3);
                    for (auto& [hh, ch] : h.coa.cop[a].terms()) {
                        std::size_t h1 = hh / n, h2 = hh % n;
                        for (auto& [gI, cg] : g3.terms()) {
                            std::size_t g1 = gI / (n * n), g2 = (gI / n) % n, g3i = gI % n;
                            for (auto& [fI, cf] : f3.terms()) {
                                std::size_t f1 = fI / (n * n), f2 = (fI / n) % n, f3i = fI % n;
                                for (auto& [ll, cl] : h.coa.cop[d].terms()) {
                                    std::size_t l1 = ll / n, l2 = ll % n;
                                    rhs += ch * cg * cf * cl *
                                           phi3(h.alg.basis(g1), h.alg.basis(f1), h.alg.basis(l1)) *
                                           phi3(h.alg.basis(h1),
                                                h.alg.multiply(h.alg.basis(g2), h.alg.basis(f2)),
                                                h.alg.basis(l2)) *
                                           phi3(h.alg.basis(h2), h.alg.basis(g3i), h.alg.basis(f3i));
                                }
                            }
                        }
                    }
                    if (lhs != rhs) {
                        c2 = false;
                        wc2 = "(" + std::to_string(a) + "," + std::to_string(b) + "," +
                              std::to_string(c) + "," + std::to_string(d) + ")";
                    }
                }
    rep.record("3-cocycle condition", c2, wc2);
    // (3) quasi-associativity: phi(h1,g1,f1) (h2 g2) f2 = h1 (g1 f1) phi(h2,g2,f2).
    bool c3 = true;
    std::string wc3;
    for (std::size_t a = 0; a < n && c3; ++a)
        for (std::size_t b = 0; b < n && c3; ++b)
            for (std::size_t c = 0; c < n && c3; ++c) {
                SparseVec lhs(f), rhs(f);
                for (auto& [hh, ch] : h.coa.cop[a].terms())
                    for (auto& [gg, cg] : h.coa.cop[b].terms())
                        for (auto& [ff, cf] : h.coa.cop[c].terms()) {
                            std::size_t h1 = hh / n, h2 = hh % n, g1 = gg / n, g2 = gg % n;
                            std::size_t f1 = ff / n, f2 = ff % n;
                            Scalar w = ch * cg * cf;
                            lhs.axpy(w * phi3(h.alg.basis(h1), h.alg.basis(g1), h.alg.basis(f1)),
                                     h.alg.multiply(h.alg.multiply(h.alg.basis(h2), h.alg.basis(g2)),
                                                    h.alg.basis(f2)));
                            rhs.axpy(w * phi3(h.alg.basis(h2), h.alg.basis(g2), h.alg.basis(f2)),
                                     h.alg.multiply(h.alg.basis(h1),
                                                    h.alg.multiply(h.alg.basis(g1), h.alg.basis(f1))));
                        }
                if (!(lhs == rhs)) {
                    c3 = false;
                    wc3 = "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
                }
            }
    rep.record("quasi-associativity", c3, wc3);
    return rep;
}

}  // namespace algd
