#include "algd/algebroid.hpp"

#include <sstream>
#include <thread>

namespace algd {

namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= b;
    return r;
}

// Splits a row-major multi-index into digits (leg 0 most significant).
std::vector<std::size_t> split_index(std::size_t I, std::size_t n, std::size_t legs) {
    std::vector<std::size_t> d(legs);
    for (std::size_t t = legs; t-- > 0;) {
        d[t] = I % n;
        I /= n;
    }
    return d;
}

std::size_t join_index(const std::vector<std::size_t>& d, std::size_t n) {
    std::size_t I = 0;
    for (auto x : d) I = I * n + x;
    return I;
}

std::string tuple_str(const std::vector<std::size_t>& d) {
    std::string s = "(";
    for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
    return s + ")";
}

}  // namespace

SparseVec LeftBialgebroid::cop_lift(const SparseVec& x) const {
    SparseVec r(field());
    for (auto& [i, c] : x.terms()) r.axpy(c, cop[i]);
    return r;
}

SparseVec LeftBialgebroid::cop_iterated(const SparseVec& x, std::size_t legs) const {
    if (legs == 1) return x;
    SparseVec cur = cop_lift(x);
    std::size_t have = 2;
    while (have < legs) {
        cur = cop_on_leg(*this, cur, have, 0);
        ++have;
    }
    return cur;
}

SparseVec LeftBialgebroid::eps_of_product(const std::vector<SparseVec>& xs) const {
    SparseVec cur = eps(xs.back());
    for (std::size_t i = xs.size() - 1; i-- > 0;) cur = eps(total.multiply(xs[i], t_of(cur)));
    return cur;
}

SparseVec mul_pairs(const LeftBialgebroid& l, const SparseVec& a, const SparseVec& b) {
    std::size_t n = l.n();
    SparseVec r(l.field());
    for (auto& [I, c] : a.terms())
        for (auto& [J, d] : b.terms()) {
            SparseVec t = tensor2(l.total.mul[I / n][J / n], l.total.mul[I % n][J % n], n);
            r.axpy(c * d, t);
        }
    return r;
}

SparseVec mul_leg(const LeftBialgebroid& l, const SparseVec& lift, std::size_t legs,
                  std::size_t leg, const SparseVec& elt, bool elt_on_left) {
    std::size_t n = l.n();
    SparseVec r(l.field());
    for (auto& [I, c] : lift.terms()) {
        auto d = split_index(I, n, legs);
        SparseVec prod = elt_on_left ? l.total.multiply(elt, l.total.basis(d[leg]))
                                     : l.total.multiply(l.total.basis(d[leg]), elt);
        for (auto& [k, e] : prod.terms()) {
            auto d2 = d;
            d2[leg] = k;
            r.add_term(join_index(d2, n), c * e);
        }
    }
    return r;
}

SparseVec cop_on_leg(const LeftBialgebroid& l, const SparseVec& lift, std::size_t legs,
                     std::size_t leg) {
    std::size_t n = l.n();
    SparseVec r(l.field());
    for (auto& [I, c] : lift.terms()) {
        auto d = split_index(I, n, legs);
        for (auto& [pq, e] : l.cop[d[leg]].terms()) {
            std::vector<std::size_t> d2;
            d2.reserve(legs + 1);
            for (std::size_t t = 0; t < legs; ++t) {
                if (t == leg) {
                    d2.push_back(pq / n);
                    d2.push_back(pq % n);
                } else {
                    d2.push_back(d[t]);
                }
            }
            r.add_term(join_index(d2, n), c * e);
        }
    }
    return r;
}

QuotientSpace build_leg_quotient(const LeftBialgebroid& l, std::size_t legs,
                                 const std::vector<std::pair<LegAction, LegAction>>& families) {
    std::size_t n = l.n();
    QuotientSpace qs(ipow(n, legs), l.field());
    std::size_t total = ipow(n, legs);
    std::vector<std::size_t> stride(legs, 1);
    for (std::size_t t = legs; t-- > 1;) stride[t - 1] = stride[t] * n;
    for (auto& [A, B] : families) {
        for (std::size_t a = 0; a < l.nb(); ++a) {
            SparseVec elt_a = A.use_src ? l.src.apply(SparseVec::unit(a, l.field()))
                                        : l.tgt.apply(SparseVec::unit(a, l.field()));
            SparseVec elt_b = B.use_src ? l.src.apply(SparseVec::unit(a, l.field()))
                                        : l.tgt.apply(SparseVec::unit(a, l.field()));
            // The acted leg only depends on its own digit: precompute tables.
            std::vector<SparseVec> tab_a, tab_b;
            tab_a.reserve(n);
            tab_b.reserve(n);
            for (std::size_t c = 0; c < n; ++c) {
                tab_a.push_back(A.left ? l.total.multiply(elt_a, l.total.basis(c))
                                       : l.total.multiply(l.total.basis(c), elt_a));
                tab_b.push_back(B.left ? l.total.multiply(elt_b, l.total.basis(c))
                                       : l.total.multiply(l.total.basis(c), elt_b));
            }
            for (std::size_t I = 0; I < total; ++I) {
                std::size_t da = (I / stride[A.leg]) % n;
                std::size_t db = (I / stride[B.leg]) % n;
                std::size_t base_a = I - da * stride[A.leg];
                std::size_t base_b = I - db * stride[B.leg];
                SparseVec rel(l.field());
                for (auto& [k, e] : tab_a[da].terms())
                    rel.add_term(base_a + k * stride[A.leg], e);
                for (auto& [k, e] : tab_b[db].terms())
                    rel.add_term(base_b + k * stride[B.leg], -e);
                qs.add_relation(rel);
            }
        }
    }
    qs.finalize();
    return qs;
}

namespace relfam {
// t(a) left on leg i  vs  s(a) left on leg i+1 (balanced over B).
std::pair<LegAction, LegAction> B(std::size_t i) {
    return {{i, true, false}, {i + 1, true, true}};
}
// X t(a) (x) Y = X (x) t(a) Y (the lambda-side balanced product).
std::pair<LegAction, LegAction> BopT(std::size_t i) {
    return {{i, false, false}, {i + 1, true, false}};
}
// s(a) X (x) Y = X (x) Y s(a) (the mu-side balanced product).
std::pair<LegAction, LegAction> BopS(std::size_t i) {
    return {{i, true, true}, {i + 1, false, true}};
}
// X s(a) (x) Y = X (x) s(a) Y, and the same with t: functional domains are
// balanced over B^e, realized as the union of these two families.
std::pair<LegAction, LegAction> BeS(std::size_t i) {
    return {{i, false, true}, {i + 1, true, true}};
}
std::pair<LegAction, LegAction> BeT(std::size_t i) {
    return {{i, false, false}, {i + 1, true, false}};
}
}  // namespace relfam

TensorQuotients build_quotients(const LeftBialgebroid& l) {
    TensorQuotients q;
    q.qB = build_leg_quotient(l, 2, {relfam::B(0)});
    q.qBopT = build_leg_quotient(l, 2, {relfam::BopT(0)});
    q.qBopS = build_leg_quotient(l, 2, {relfam::BopS(0)});
    q.qBe = build_leg_quotient(l, 2, {relfam::BeS(0), relfam::BeT(0)});
    return q;
}

BFunctional unit_functional(const LeftBialgebroid& l, std::size_t legs) {
    std::size_t n = l.n(), m = ipow(n, legs);
    BFunctional u;
    u.legs = legs;
    u.mat = Matrix(l.nb(), m, l.field());
    for (std::size_t I = 0; I < m; ++I) {
        auto d = split_index(I, n, legs);
        std::vector<SparseVec> xs;
        for (auto i : d) xs.push_back(l.total.basis(i));
        SparseVec v = l.eps_of_product(xs);
        for (auto& [b, c] : v.terms()) u.mat.at(b, I) = c;
    }
    return u;
}

// Legwise coproduct splitting of a basis multi-index: list of (J, K, coeff).
static std::vector<std::tuple<std::size_t, std::size_t, Scalar>> legwise_split(
    const LeftBialgebroid& l, const std::vector<std::size_t>& d) {
    std::size_t n = l.n();
    std::vector<std::tuple<std::size_t, std::size_t, Scalar>> pairs;
    pairs.emplace_back(0, 0, Scalar::one(l.field()));
    for (auto i : d) {
        std::vector<std::tuple<std::size_t, std::size_t, Scalar>> next;
        for (auto& [J, K, c] : pairs)
            for (auto& [pq, e] : l.cop[i].terms())
                next.emplace_back(J * n + pq / n, K * n + pq % n, c * e);
        pairs = std::move(next);
    }
    return pairs;
}

BFunctional conv_mul(const LeftBialgebroid& l, const BFunctional& f, const BFunctional& g) {
    std::size_t n = l.n(), m = ipow(n, f.legs);
    BFunctional r;
    r.legs = f.legs;
    r.mat = Matrix(l.nb(), m, l.field());
    for (std::size_t I = 0; I < m; ++I) {
        auto d = split_index(I, n, f.legs);
        SparseVec acc(l.field());
        for (auto& [J, K, c] : legwise_split(l, d)) {
            SparseVec fv = f.mat.apply(SparseVec::unit(J, l.field()));
            SparseVec gv = g.mat.apply(SparseVec::unit(K, l.field()));
            acc.axpy(c, l.base.multiply(fv, gv));
        }
        for (auto& [b, c] : acc.terms()) r.mat.at(b, I) = c;
    }
    return r;
}

std::optional<BFunctional> conv_inverse(const LeftBialgebroid& l, const BFunctional& f) {
    // Over a nontrivial base the convolution unit only behaves as a unit
    // against bimodule maps, so a one-sided solve can land on a spurious
    // solution; both sides are imposed at once.
    std::size_t n = l.n(), m = ipow(n, f.legs), nb = l.nb();
    BFunctional unit = unit_functional(l, f.legs);
    Matrix sys(2 * m * nb, m * nb, l.field());
    std::vector<Scalar> rhs(2 * m * nb, Scalar::zero(l.field()));
    for (std::size_t I = 0; I < m; ++I) {
        auto d = split_index(I, n, f.legs);
        for (auto& [J, K, c] : legwise_split(l, d)) {
            SparseVec fv = f.mat.apply(SparseVec::unit(J, l.field()));
            // f * g rows.
            for (auto& [x, fx] : fv.terms())
                for (std::size_t y = 0; y < nb; ++y)
                    for (auto& [z, pz] : l.base.mul[x][y].terms())
                        sys.at(I * nb + z, K * nb + y) += c * fx * pz;
            // g * f rows (g on the first Sweedler leg).
            SparseVec fk = f.mat.apply(SparseVec::unit(K, l.field()));
            for (auto& [x, fx] : fk.terms())
                for (std::size_t y = 0; y < nb; ++y)
                    for (auto& [z, pz] : l.base.mul[y][x].terms())
                        sys.at((m + I) * nb + z, J * nb + y) += c * fx * pz;
        }
        for (std::size_t b = 0; b < nb; ++b) {
            rhs[I * nb + b] = unit.mat.at(b, I);
            rhs[(m + I) * nb + b] = unit.mat.at(b, I);
        }
    }
    // Restrict to bimodule maps balanced over B^e: within that subalgebra the
    // convolution unit is genuine and the two-sided inverse is unique.
    std::vector<std::pair<SparseVec, SparseVec>> homogeneous;  // lhs args, rhs args
    std::vector<std::tuple<SparseVec, SparseVec, std::size_t, bool>> modulated;
    // (lhs arg, plain arg, base index, left-multiplication?)
    {
        Field fld = l.field();
        for (std::size_t a = 0; a < nb; ++a) {
            SparseVec sa = l.src.apply(SparseVec::unit(a, fld));
            SparseVec ta = l.tgt.apply(SparseVec::unit(a, fld));
            for (std::size_t I = 0; I < m; ++I) {
                auto d = split_index(I, n, f.legs);
                SparseVec base = SparseVec::unit(I, fld);
                modulated.emplace_back(mul_leg(l, base, f.legs, 0, sa, true), base, a, true);
                modulated.emplace_back(mul_leg(l, base, f.legs, 0, ta, true), base, a, false);
                for (std::size_t leg = 0; leg + 1 < f.legs; ++leg) {
                    homogeneous.emplace_back(mul_leg(l, base, f.legs, leg, sa, false),
                                             mul_leg(l, base, f.legs, leg + 1, sa, true));
                    homogeneous.emplace_back(mul_leg(l, base, f.legs, leg, ta, false),
                                             mul_leg(l, base, f.legs, leg + 1, ta, true));
                }
                if (f.legs == 1) {
                    homogeneous.emplace_back(mul_leg(l, base, 1, 0, sa, false),
                                             mul_leg(l, base, 1, 0, ta, false));
                }
                (void)d;
            }
        }
    }
    std::size_t extra = (homogeneous.size() + modulated.size()) * nb;
    Matrix full(2 * m * nb + extra, m * nb, l.field());
    std::vector<Scalar> frhs(2 * m * nb + extra, Scalar::zero(l.field()));
    for (std::size_t i = 0; i < 2 * m * nb; ++i) {
        for (std::size_t j = 0; j < m * nb; ++j) full.at(i, j) = sys.at(i, j);
        frhs[i] = rhs[i];
    }
    std::size_t row = 2 * m * nb;
    for (auto& [lhs, rhs2] : homogeneous) {
        for (std::size_t r = 0; r < nb; ++r) {
            for (auto& [K, c] : lhs.terms()) full.at(row, K * nb + r) += c;
            for (auto& [K, c] : rhs2.terms()) full.at(row, K * nb + r) -= c;
            ++row;
        }
    }
    for (auto& [lhs, base, a, left] : modulated) {
        for (std::size_t r = 0; r < nb; ++r) {
            for (auto& [K, c] : lhs.terms()) full.at(row, K * nb + r) += c;
            for (std::size_t y = 0; y < nb; ++y) {
                Scalar coeff =
                    left ? l.base.multiply(SparseVec::unit(a, l.field()), SparseVec::unit(y, l.field())).at(r)
                         : l.base.multiply(SparseVec::unit(y, l.field()), SparseVec::unit(a, l.field())).at(r);
                if (coeff.is_zero()) continue;
                for (auto& [K, c] : base.terms()) full.at(row, K * nb + y) -= coeff * c;
            }
            ++row;
        }
    }
    auto sol = full.solve(frhs);
    if (!sol) return std::nullopt;
    BFunctional g;
    g.legs = f.legs;
    g.mat = Matrix(nb, m, l.field());
    for (std::size_t K = 0; K < m; ++K)
        for (std::size_t y = 0; y < nb; ++y) g.mat.at(y, K) = (*sol)[K * nb + y];
    if (!(conv_mul(l, g, f).mat == unit.mat) || !(conv_mul(l, f, g).mat == unit.mat))
        return std::nullopt;
    return g;
}

SparseVec HopfData::pm(const LeftBialgebroid& l, const SparseVec& x) const {
    SparseVec r(l.field());
    for (auto& [i, c] : x.terms()) r.axpy(c, plus_minus[i]);
    return r;
}

SparseVec HopfData::mp(const LeftBialgebroid& l, const SparseVec& x) const {
    SparseVec r(l.field());
    for (auto& [i, c] : x.terms()) r.axpy(c, minus_plus[i]);
    return r;
}

Report check_bialgebroid(const LeftBialgebroid& l) {
    Report rep;
    rep.subject = "bialgebroid";
    std::size_t n = l.n(), nb = l.nb();
    Field f = l.field();
    auto B = [&](std::size_t a) { return SparseVec::unit(a, f); };
    auto s = [&](std::size_t a) { return l.src.apply(B(a)); };
    auto t = [&](std::size_t a) { return l.tgt.apply(B(a)); };

    {
        Report ra = l.base.check();
        for (auto& law : ra.laws) rep.record("base " + law.law, law.pass, law.witness);
        Report rt = l.total.check();
        for (auto& law : rt.laws) rep.record("total " + law.law, law.pass, law.witness);
    }

    bool ok = true;
    std::string w;
    for (std::size_t a = 0; a < nb && ok; ++a)
        for (std::size_t b = 0; b < nb && ok; ++b)
            if (!(l.total.multiply(s(a), s(b)) == l.src.apply(l.base.mul[a][b]))) {
                ok = false;
                w = "s at (" + std::to_string(a) + "," + std::to_string(b) + ")";
            }
    if (ok && !(l.src.apply(l.base.unit) == l.unit())) {
        ok = false;
        w = "s(1) != 1";
    }
    rep.record("source is an algebra map", ok, w);

    ok = true;
    w.clear();
    for (std::size_t a = 0; a < nb && ok; ++a)
        for (std::size_t b = 0; b < nb && ok; ++b)
            if (!(l.total.multiply(t(b), t(a)) == l.tgt.apply(l.base.mul[a][b]))) {
                ok = false;
                w = "t at (" + std::to_string(a) + "," + std::to_string(b) + ")";
            }
    if (ok && !(l.tgt.apply(l.base.unit) == l.unit())) {
        ok = false;
        w = "t(1) != 1";
    }
    rep.record("target is an anti-algebra map", ok, w);

    ok = true;
    w.clear();
    for (std::size_t a = 0; a < nb && ok; ++a)
        for (std::size_t b = 0; b < nb && ok; ++b)
            if (!(l.total.multiply(s(a), t(b)) == l.total.multiply(t(b), s(a)))) {
                ok = false;
                w = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
            }
    rep.record("source and target images commute", ok, w);

    QuotientSpace qB = build_leg_quotient(l, 2, {relfam::B(0)});
    auto eq_qB = [&](const SparseVec& x, const SparseVec& y) {
        return qB.in_relations(x - y);
    };

    ok = true;
    w.clear();
    for (std::size_t a = 0; a < nb && ok; ++a)
        for (std::size_t c = 0; c < nb && ok; ++c)
            for (std::size_t x = 0; x < n && ok; ++x) {
                SparseVec lhs =
                    l.cop_lift(l.total.multiply(l.total.multiply(s(a), t(c)), l.total.basis(x)));
                SparseVec rhs = mul_leg(l, mul_leg(l, l.cop[x], 2, 0, s(a), true), 2, 1, t(c), true);
                if (!eq_qB(lhs, rhs)) {
                    ok = false;
                    w = "(b" + std::to_string(a) + ",b" + std::to_string(c) + ",X" +
                        std::to_string(x) + ")";
                }
            }
    rep.record("coproduct is a bimodule map", ok, w);

    ok = true;
    w.clear();
    for (std::size_t a = 0; a < nb && ok; ++a)
        for (std::size_t c = 0; c < nb && ok; ++c)
            for (std::size_t x = 0; x < n && ok; ++x) {
                SparseVec lhs =
                    l.eps(l.total.multiply(l.total.multiply(s(a), t(c)), l.total.basis(x)));
                SparseVec rhs = l.base.multiply(l.base.multiply(B(a), l.eps(l.total.basis(x))), B(c));
                if (!(lhs == rhs)) {
                    ok = false;
                    w = "(b" + std::to_string(a) + ",b" + std::to_string(c) + ",X" +
                        std::to_string(x) + ")";
                }
            }
    rep.record("counit is a bimodule map", ok, w);

    {
        QuotientSpace q3 = build_leg_quotient(l, 3, {relfam::B(0), relfam::B(1)});
        ok = true;
        w.clear();
        for (std::size_t x = 0; x < n && ok; ++x) {
            SparseVec lhs = cop_on_leg(l, l.cop[x], 2, 0);
            SparseVec rhs = cop_on_leg(l, l.cop[x], 2, 1);
            if (!q3.in_relations(lhs - rhs)) {
                ok = false;
                w = "X" + std::to_string(x);
            }
        }
        rep.record("coassociativity in the balanced triple product", ok, w);
    }

    ok = true;
    w.clear();
    for (std::size_t x = 0; x < n && ok; ++x) {
        SparseVec left(f), right(f);
        for (auto& [pq, c] : l.cop[x].terms()) {
            left.axpy(c, l.total.multiply(l.s_of(l.eps(l.total.basis(pq / n))), l.total.basis(pq % n)));
            right.axpy(c,
                       l.total.multiply(l.t_of(l.eps(l.total.basis(pq % n))), l.total.basis(pq / n)));
        }
        if (!(left == l.total.basis(x)) || !(right == l.total.basis(x))) {
            ok = false;
            w = "X" + std::to_string(x);
        }
    }
    rep.record("counit laws", ok, w);

    ok = true;
    w.clear();
    for (std::size_t x = 0; x < n && ok; ++x)
        for (std::size_t b = 0; b < nb && ok; ++b) {
            SparseVec lhs = mul_leg(l, l.cop[x], 2, 0, t(b), false);
            SparseVec rhs = mul_leg(l, l.cop[x], 2, 1, s(b), false);
            if (!eq_qB(lhs, rhs)) {
                ok = false;
                w = "(X" + std::to_string(x) + ",b" + std::to_string(b) + ")";
            }
        }
    rep.record("coproduct lands in the Takeuchi product", ok, w);

    if (l.total.associative) {
        ok = true;
        w.clear();
        for (std::size_t x = 0; x < n && ok; ++x)
            for (std::size_t y = 0; y < n && ok; ++y) {
                SparseVec lhs = l.cop_lift(l.total.mul[x][y]);
                SparseVec rhs = mul_pairs(l, l.cop[x], l.cop[y]);
                if (!eq_qB(lhs, rhs)) {
                    ok = false;
                    w = "(X" + std::to_string(x) + ",Y" + std::to_string(y) + ")";
                }
            }
        rep.record("coproduct is multiplicative", ok, w);
    }

    rep.record("coproduct is unital", eq_qB(l.cop_lift(l.unit()), tensor2(l.unit(), l.unit(), n)),
               "");

    ok = l.eps(l.unit()) == l.base.unit;
    w = ok ? "" : "eps(1) != 1";
    for (std::size_t b = 0; b < nb && ok; ++b)
        for (std::size_t x = 0; x < n && ok; ++x)
            if (!(l.eps(l.total.multiply(s(b), l.total.basis(x))) ==
                  l.base.multiply(B(b), l.eps(l.total.basis(x))))) {
                ok = false;
                w = "eps(s(b)X) at (b" + std::to_string(b) + ",X" + std::to_string(x) + ")";
            }
    for (std::size_t x = 0; x < n && ok; ++x)
        for (std::size_t y = 0; y < n && ok; ++y) {
            SparseVec ey = l.eps(l.total.basis(y));
            SparseVec mid = l.eps(l.total.multiply(l.total.basis(x), l.total.basis(y)));
            if (!(l.eps(l.total.multiply(l.total.basis(x), l.s_of(ey))) == mid) ||
                !(l.eps(l.total.multiply(l.total.basis(x), l.t_of(ey))) == mid)) {
                ok = false;
                w = "left character at (X" + std::to_string(x) + ",Y" + std::to_string(y) + ")";
            }
        }
    rep.record("counit is a left character", ok, w);

    return rep;
}

HopfData make_hopf(const LeftBialgebroid& l, const TensorQuotients& q) {
    HopfData hd;
    std::size_t n = l.n();
    Field f = l.field();
    auto lam = [&](const SparseVec& T) {
        SparseVec r(f);
        for (auto& [I, c] : T.terms()) {
            SparseVec v = mul_leg(l, l.cop[I / n], 2, 1, l.total.basis(I % n), false);
            r.axpy(c, v);
        }
        return r;
    };
    auto mu = [&](const SparseVec& T) {
        SparseVec r(f);
        for (auto& [I, c] : T.terms()) {
            SparseVec v = mul_leg(l, l.cop[I % n], 2, 0, l.total.basis(I / n), false);
            r.axpy(c, v);
        }
        return r;
    };
    {
        auto res = invert_between_quotients(lam, q.qBopT, q.qB);
        if (res.status == QuotientInverse::Status::NotWellDefined)
            throw Error("InternalInconsistency", "lambda not well defined: " + res.detail);
        if (res.status == QuotientInverse::Status::Ok) {
            hd.left_ok = true;
            hd.lambda_q = res.induced;
            hd.lambda_inv_q = res.inverse;
            for (std::size_t x = 0; x < n; ++x) {
                auto coords = q.qB.project(tensor2(l.total.basis(x), l.unit(), n));
                hd.plus_minus.push_back(q.qBopT.section(res.inverse.apply(coords)));
            }
        } else {
            hd.left_detail = "NotLeftHopf: " + res.detail;
        }
    }
    {
        auto res = invert_between_quotients(mu, q.qBopS, q.qB);
        if (res.status == QuotientInverse::Status::NotWellDefined)
            throw Error("InternalInconsistency", "mu not well defined: " + res.detail);
        if (res.status == QuotientInverse::Status::Ok) {
            hd.anti_ok = true;
            hd.mu_q = res.induced;
            hd.mu_inv_q = res.inverse;
            for (std::size_t x = 0; x < n; ++x) {
                auto coords = q.qB.project(tensor2(l.unit(), l.total.basis(x), n));
                hd.minus_plus.push_back(q.qBopS.section(res.inverse.apply(coords)));
            }
        } else {
            hd.anti_detail = "NotAntiLeftHopf: " + res.detail;
        }
    }
    return hd;
}

Report check_hopf_identities(const LeftBialgebroid& l, const TensorQuotients& q,
                             const HopfData& hd) {
    Report rep;
    rep.subject = "hopf-identities";
    std::size_t n = l.n(), nb = l.nb();
    Field f = l.field();
    // The four triple quotients are independent; build them concurrently.
    QuotientSpace t5l, t6l, t5m, t6m;
    {
        std::thread a([&] {
            if (hd.left_ok) t5l = build_leg_quotient(l, 3, {relfam::B(0), relfam::BopT(1)});
        });
        std::thread b([&] {
            if (hd.left_ok) t6l = build_leg_quotient(l, 3, {relfam::BopT(0), relfam::B(1)});
        });
        std::thread c([&] {
            if (hd.anti_ok) t5m = build_leg_quotient(l, 3, {relfam::BopS(0), relfam::B(1)});
        });
        std::thread d([&] {
            if (hd.anti_ok)
                t6m = build_leg_quotient(
                    l, 3, {relfam::B(0), {LegAction{0, true, true}, LegAction{2, false, true}}});
        });
        a.join();
        b.join();
        c.join();
        d.join();
    }
    auto bas = [&](std::size_t i) { return l.total.basis(i); };
    auto s = [&](std::size_t a) { return l.src.apply(SparseVec::unit(a, f)); };
    auto t = [&](std::size_t a) { return l.tgt.apply(SparseVec::unit(a, f)); };

    auto run = [&](const std::string& name, std::size_t count,
                   const std::function<bool(std::size_t, std::string&)>& fn) {
        bool ok = true;
        std::string w;
        for (std::size_t k = 0; k < count && ok; ++k)
            if (!fn(k, w)) ok = false;
        rep.record(name, ok, w);
    };

    if (hd.left_ok) {
        auto lam = [&](const SparseVec& T) {
            SparseVec r(f);
            for (auto& [I, c] : T.terms())
                r.axpy(c, mul_leg(l, l.cop[I / n], 2, 1, bas(I % n), false));
            return r;
        };
        run("lambda (1): X+_(1) (x) X+_(2) X- = X (x) 1", n, [&](std::size_t x, std::string& w) {
            if (q.qB.same_class(lam(hd.plus_minus[x]), tensor2(bas(x), l.unit(), n))) return true;
            w = "X" + std::to_string(x);
            return false;
        });
        run("lambda (2): X_(1)+ (x) X_(1)- X_(2) = X (x) 1", n, [&](std::size_t x, std::string& w) {
            SparseVec lhs(f);
            for (auto& [pq, c] : l.cop[x].terms())
                lhs.axpy(c, mul_leg(l, hd.plus_minus[pq / n], 2, 1, bas(pq % n), false));
            if (q.qBopT.same_class(lhs, tensor2(bas(x), l.unit(), n))) return true;
            w = "X" + std::to_string(x);
            return false;
        });
        run("lambda (3): (XY)+ (x) (XY)- = X+ Y+ (x) Y- X-", n * n,
            [&](std::size_t k, std::string& w) {
                std::size_t x = k / n, y = k % n;
                SparseVec lhs = hd.pm(l, l.total.mul[x][y]);
                SparseVec rhs(f);
                for (auto& [I, c] : hd.plus_minus[x].terms())
                    for (auto& [J, d] : hd.plus_minus[y].terms())
                        rhs.axpy(c * d,
                                 tensor2(l.total.mul[I / n][J / n], l.total.mul[J % n][I % n], n));
                if (q.qBopT.same_class(lhs, rhs)) return true;
                w = "(X" + std::to_string(x) + ",Y" + std::to_string(y) + ")";
                return false;
            });
        run("lambda (4): 1+ (x) 1- = 1 (x) 1", 1, [&](std::size_t, std::string& w) {
            if (q.qBopT.same_class(hd.pm(l, l.unit()), tensor2(l.unit(), l.unit(), n))) return true;
            w = "1";
            return false;
        });
        {
            QuotientSpace& q3 = t5l;
            run("lambda (5): X+_(1) (x) X+_(2) (x) X- = X_(1) (x) X_(2)+ (x) X_(2)-", n,
                [&](std::size_t x, std::string& w) {
                    SparseVec lhs = cop_on_leg(l, hd.plus_minus[x], 2, 0);
                    SparseVec rhs(f);
                    for (auto& [pq, c] : l.cop[x].terms())
                        rhs.axpy(c, tensor2(SparseVec::unit(pq / n, f), hd.plus_minus[pq % n],
                                            n * n));
                    if (q3.in_relations(lhs - rhs)) return true;
                    w = "X" + std::to_string(x);
                    return false;
                });
        }
        {
            QuotientSpace& q3 = t6l;
            run("lambda (6): X+ (x) X-_(1) (x) X-_(2) = X++ (x) X- (x) X+-", n,
                [&](std::size_t x, std::string& w) {
                    SparseVec lhs = cop_on_leg(l, hd.plus_minus[x], 2, 1);
                    SparseVec rhs(f);
                    for (auto& [I, c] : hd.plus_minus[x].terms()) {
                        std::size_t u = I / n, v = I % n;
                        for (auto& [J, d] : hd.plus_minus[u].terms())
                            rhs.add_term((J / n) * n * n + v * n + (J % n), c * d);
                    }
                    if (q3.in_relations(lhs - rhs)) return true;
                    w = "X" + std::to_string(x);
                    return false;
                });
        }
        run("lambda (7): X = X+ t(eps(X-))", n, [&](std::size_t x, std::string& w) {
            SparseVec acc(f);
            for (auto& [I, c] : hd.plus_minus[x].terms())
                acc.axpy(c, l.total.multiply(bas(I / n), l.t_of(l.eps(bas(I % n)))));
            if (acc == bas(x)) return true;
            w = "X" + std::to_string(x) + ": got " + acc.str();
            return false;
        });
        run("lambda (8): X+ X- = s(eps(X))", n, [&](std::size_t x, std::string& w) {
            SparseVec acc(f);
            for (auto& [I, c] : hd.plus_minus[x].terms()) acc.axpy(c, l.total.mul[I / n][I % n]);
            if (acc == l.s_of(l.eps(bas(x)))) return true;
            w = "X" + std::to_string(x);
            return false;
        });
        run("lambda-st (1): (X s(a))+ (x) (X s(a))- = X+ s(a) (x) X-", n * nb,
            [&](std::size_t k, std::string& w) {
                std::size_t x = k / nb, a = k % nb;
                SparseVec lhs = hd.pm(l, l.total.multiply(bas(x), s(a)));
                SparseVec rhs = mul_leg(l, hd.plus_minus[x], 2, 0, s(a), false);
                if (q.qBopT.same_class(lhs, rhs)) return true;
                w = "(X" + std::to_string(x) + ",b" + std::to_string(a) + ")";
                return false;
            });
        run("lambda-st (2): (s(a) X)+ (x) (s(a) X)- = s(a) X+ (x) X-", n * nb,
            [&](std::size_t k, std::string& w) {
                std::size_t x = k / nb, a = k % nb;
                SparseVec lhs = hd.pm(l, l.total.multiply(s(a), bas(x)));
                SparseVec rhs = mul_leg(l, hd.plus_minus[x], 2, 0, s(a), true);
                if (q.qBopT.same_class(lhs, rhs)) return true;
                w = "(X" + std::to_string(x) + ",b" + std::to_string(a) + ")";
                return false;
            });
        run("lambda-st (3): (t(a) X)+ (x) (t(a) X)- = X+ (x) X- s(a)", n * nb,
            [&](std::size_t k, std::string& w) {
                std::size_t x = k / nb, a = k % nb;
                SparseVec lhs = hd.pm(l, l.total.multiply(t(a), bas(x)));
                SparseVec rhs = mul_leg(l, hd.plus_minus[x], 2, 1, s(a), false);
                if (q.qBopT.same_class(lhs, rhs)) return true;
                w = "(X" + std::to_string(x) + ",b" + std::to_string(a) + ")";
                return false;
            });
        run("lambda-st (4): (X t(a))+ (x) (X t(a))- = X+ (x) s(a) X-", n * nb,
            [&](std::size_t k, std::string& w) {
                std::size_t x = k / nb, a = k % nb;
                SparseVec lhs = hd.pm(l, l.total.multiply(bas(x), t(a)));
                SparseVec rhs = mul_leg(l, hd.plus_minus[x], 2, 1, s(a), true);
                if (q.qBopT.same_class(lhs, rhs)) return true;
                w = "(X" + std::to_string(x) + ",b" + std::to_string(a) + ")";
                return false;
            });
        run("lambda-st (5): t(a) X+ (x) X- = X+ (x) X- t(a)", n * nb,
            [&](std::size_t k, std::string& w) {
                std::size_t x = k / nb, a = k % nb;
                SparseVec lhs = mul_leg(l, hd.plus_minus[x], 2, 0, t(a), true);
                SparseVec rhs = mul_leg(l, hd.plus_minus[x], 2, 1, t(a), false);
                if (q.qBopT.same_class(lhs, rhs)) return true;
                w = "(X" + std::to_string(x) + ",b" + std::to_string(a) + ")";
                return false;
            });
    } else {
        rep.fail("lambda identities", "not a left Hopf algebroid: " + hd.left_detail);
    }

    if (hd.anti_ok) {
        run("mu (1): X[+]_(1) X[-] (x) X[+]_(2) = 1 (x) X", n, [&](std::size_t x, std::string& w) {
            SparseVec lhs(f);
            for (auto& [I, c] : hd.minus_plus[x].terms())
                lhs.axpy(c, mul_leg(l, l.cop[I % n], 2, 0, bas(I / n), false));
            if (q.qB.same_class(lhs, tensor2(l.unit(), bas(x), n))) return true;
            w = "X" + std::to_string(x);
            return false;
        });
        run("mu (2): X_(2)[-] X_(1) (x) X_(2)[+] = 1 (x) X", n, [&](std::size_t x, std::string& w) {
            SparseVec lhs(f);
            for (auto& [pq, c] : l.cop[x].terms())
                lhs.axpy(c, mul_leg(l, hd.minus_plus[pq % n], 2, 0, bas(pq / n), false));
            if (q.qBopS.same_class(lhs, tensor2(l.unit(), bas(x), n))) return true;
            w = "X" + std::to_string(x);
            return false;
        });
        run("mu (3): (XY)[-] (x) (XY)[+] = Y[-] X[-] (x) X[+] Y[+]", n * n,
            [&](std::size_t k, std::string& w) {
                std::size_t x = k / n, y = k % n;
                SparseVec lhs = hd.mp(l, l.total.mul[x][y]);
                SparseVec rhs(f);
                for (auto& [I, c] : hd.minus_plus[x].terms())
                    for (auto& [J, d] : hd.minus_plus[y].terms())
                        rhs.axpy(c * d,
                                 tensor2(l.total.mul[J / n][I / n], l.total.mul[I % n][J % n], n));
                if (q.qBopS.same_class(lhs, rhs)) return true;
                w = "(X" + std::to_string(x) + ",Y" + std::to_string(y) + ")";
                return false;
            });
        run("mu (4): 1[-] (x) 1[+] = 1 (x) 1", 1, [&](std::size_t, std::string& w) {
            if (q.qBopS.same_class(hd.mp(l, l.unit()), tensor2(l.unit(), l.unit(), n))) return true;
            w = "1";
            return false;
        });
        {
            QuotientSpace& q3 = t5m;
            run("mu (5): X[-] (x) X[+]_(1) (x) X[+]_(2) = X_(1)[-] (x) X_(1)[+] (x) X_(2)", n,
                [&](std::size_t x, std::string& w) {
                    SparseVec lhs = cop_on_leg(l, hd.minus_plus[x], 2, 1);
                    SparseVec rhs(f);
                    for (auto& [pq, c] : l.cop[x].terms())
                        rhs.axpy(c, tensor2(hd.minus_plus[pq / n], SparseVec::unit(pq % n, f), n));
                    if (q3.in_relations(lhs - rhs)) return true;
                    w = "X" + std::to_string(x);
                    return false;
                });
        }
        {
            QuotientSpace& q3 = t6m;
            run("mu (6): X[-]_(1) (x) X[-]_(2) (x) X[+] = X[+][-] (x) X[-] (x) X[+][+]", n,
                [&](std::size_t x, std::string& w) {
                    SparseVec lhs = cop_on_leg(l, hd.minus_plus[x], 2, 0);
                    SparseVec rhs(f);
                    for (auto& [I, c] : hd.minus_plus[x].terms()) {
                        std::size_t m = I / n, p = I % n;
                        for (auto& [J, d] : hd.minus_plus[p].terms())
                            rhs.add_term((J / n) * n * n + m * n + (J % n), c * d);
                    }
                    if (q3.in_relations(lhs - rhs)) return true;
                    w = "X" + std::to_string(x);
                    return false;
                });
        }
        run("mu (7): X = X[+] s(eps(X[-]))", n, [&](std::size_t x, std::string& w) {
            SparseVec acc(f);
            for (auto& [I, c] : hd.minus_plus[x].terms())
                acc.axpy(c, l.total.multiply(bas(I % n), l.s_of(l.eps(bas(I / n)))));
            if (acc == bas(x)) return true;
            w = "X" + std::to_string(x);
            return false;
        });
        run("mu (8): X[+] X[-] = t(eps(X))", n, [&](std::size_t x, std::string& w) {
            SparseVec acc(f);
            for (auto& [I, c] : hd.minus_plus[x].terms()) acc.axpy(c, l.total.mul[I % n][I / n]);
            if (acc == l.t_of(l.eps(bas(x)))) return true;
            w = "X" + std::to_string(x);
            return false;
        });
        run("mu-st (9): (X s(b))[-] (x) (X s(b))[+] = t(b) X[-] (x) X[+]", n * nb,
            [&](std::size_t k, std::string& w) {
                std::size_t x = k / nb, a = k % nb;
                SparseVec lhs = hd.mp(l, l.total.multiply(bas(x), s(a)));
                SparseVec rhs = mul_leg(l, hd.minus_plus[x], 2, 0, t(a), true);
                if (q.qBopS.same_class(lhs, rhs)) return true;
                w = "(X" + std::to_string(x) + ",b" + std::to_string(a) + ")";
                return false;
            });
        run("mu-st (10): (s(b) X)[-] (x) (s(b) X)[+] = X[-] t(b) (x) X[+]", n * nb,
            [&](std::size_t k, std::string& w) {
                std::size_t x = k / nb, a = k % nb;
                SparseVec lhs = hd.mp(l, l.total.multiply(s(a), bas(x)));
                SparseVec rhs = mul_leg(l, hd.minus_plus[x], 2, 0, t(a), false);
                if (q.qBopS.same_class(lhs, rhs)) return true;
                w = "(X" + std::to_string(x) + ",b" + std::to_string(a) + ")";
                return false;
            });
        run("mu-st (11): (X t(b))[-] (x) (X t(b))[+] = X[-] (x) X[+] t(b)", n * nb,
            [&](std::size_t k, std::string& w) {
                std::size_t x = k / nb, a = k % nb;
                SparseVec lhs = hd.mp(l, l.total.multiply(bas(x), t(a)));
                SparseVec rhs = mul_leg(l, hd.minus_plus[x], 2, 1, t(a), false);
                if (q.qBopS.same_class(lhs, rhs)) return true;
                w = "(X" + std::to_string(x) + ",b" + std::to_string(a) + ")";
                return false;
            });
        run("mu-st (12): (t(b) X)[-] (x) (t(b) X)[+] = X[-] (x) t(b) X[+]", n * nb,
            [&](std::size_t k, std::string& w) {
                std::size_t x = k / nb, a = k % nb;
                SparseVec lhs = hd.mp(l, l.total.multiply(t(a), bas(x)));
                SparseVec rhs = mul_leg(l, hd.minus_plus[x], 2, 1, t(a), true);
                if (q.qBopS.same_class(lhs, rhs)) return true;
                w = "(X" + std::to_string(x) + ",b" + std::to_string(a) + ")";
                return false;
            });
        run("mu-st (13): X[-] (x) s(b) X[+] = X[-] s(b) (x) X[+]", n * nb,
            [&](std::size_t k, std::string& w) {
                std::size_t x = k / nb, a = k % nb;
                SparseVec lhs = mul_leg(l, hd.minus_plus[x], 2, 1, s(a), true);
                SparseVec rhs = mul_leg(l, hd.minus_plus[x], 2, 0, s(a), false);
                if (q.qBopS.same_class(lhs, rhs)) return true;
                w = "(X" + std::to_string(x) + ",b" + std::to_string(a) + ")";
                return false;
            });
    } else {
        rep.fail("mu identities", "not an anti-left Hopf algebroid: " + hd.anti_detail);
    }
    return rep;
}

Report check_morphism(const LeftBialgebroid& l1, const LeftBialgebroid& l2,
                      const AlgebroidMorphism& m) {
    Report rep;
    rep.subject = "morphism";
    std::size_t n1 = l1.n(), nb1 = l1.nb(), n2 = l2.n();
    Field f = l1.field();
    auto Phi = [&](const SparseVec& x) { return m.total_map.apply(x); };
    auto phi = [&](const SparseVec& b) { return m.base_map.apply(b); };

    bool ok = true;
    std::string w;
    for (std::size_t a = 0; a < nb1 && ok; ++a)
        for (std::size_t b = 0; b < nb1 && ok; ++b)
            if (!(phi(l1.base.mul[a][b]) ==
                  l2.base.multiply(phi(SparseVec::unit(a, f)), phi(SparseVec::unit(b, f))))) {
                ok = false;
                w = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
            }
    if (ok && !(phi(l1.base.unit) == l2.base.unit)) {
        ok = false;
        w = "phi(1) != 1";
    }
    rep.record("base map is an algebra map", ok, w);
    rep.record("base map bijective", m.base_map.inverse().has_value(), "");

    ok = true;
    w.clear();
    for (std::size_t x = 0; x < n1 && ok; ++x)
        for (std::size_t y = 0; y < n1 && ok; ++y)
            if (!(Phi(l1.total.mul[x][y]) ==
                  l2.total.multiply(Phi(l1.total.basis(x)), Phi(l1.total.basis(y))))) {
                ok = false;
                w = "(X" + std::to_string(x) + ",Y" + std::to_string(y) + ")";
            }
    if (ok && !(Phi(l1.unit()) == l2.unit())) {
        ok = false;
        w = "Phi(1) != 1";
    }
    rep.record("total map is an algebra map", ok, w);
    rep.record("total map bijective", m.total_map.inverse().has_value(), "");

    ok = true;
    w.clear();
    for (std::size_t a = 0; a < nb1 && ok; ++a) {
        if (!(Phi(l1.src.apply(SparseVec::unit(a, f))) ==
              l2.src.apply(phi(SparseVec::unit(a, f))))) {
            ok = false;
            w = "source intertwining at b" + std::to_string(a);
        } else if (!(Phi(l1.tgt.apply(SparseVec::unit(a, f))) ==
                     l2.tgt.apply(phi(SparseVec::unit(a, f))))) {
            ok = false;
            w = "target intertwining at b" + std::to_string(a);
        }
    }
    rep.record("intertwines source and target", ok, w);

    {
        QuotientSpace qB2 = build_leg_quotient(l2, 2, {relfam::B(0)});
        ok = true;
        w.clear();
        for (std::size_t x = 0; x < n1 && ok; ++x) {
            SparseVec lhs(f);
            for (auto& [pq, c] : l1.cop[x].terms())
                lhs.axpy(c, tensor2(Phi(l1.total.basis(pq / n1)), Phi(l1.total.basis(pq % n1)), n2));
            SparseVec rhs = l2.cop_lift(Phi(l1.total.basis(x)));
            if (!qB2.same_class(lhs, rhs)) {
                ok = false;
                w = "X" + std::to_string(x);
            }
        }
        rep.record("coproduct intertwined", ok, w);
    }

    ok = true;
    w.clear();
    for (std::size_t x = 0; x < n1 && ok; ++x)
        if (!(l2.eps(Phi(l1.total.basis(x))) == phi(l1.eps(l1.total.basis(x))))) {
            ok = false;
            w = "X" + std::to_string(x);
        }
    rep.record("counit intertwined", ok, w);

    ok = true;
    w.clear();
    for (std::size_t a = 0; a < nb1 && ok; ++a)
        if (!(l2.eps(Phi(l1.src.apply(SparseVec::unit(a, f)))) == phi(SparseVec::unit(a, f)))) {
            ok = false;
            w = "b" + std::to_string(a);
        }
    rep.record("base map determined by eps Phi s", ok, w);
    return rep;
}

Report check_coquasi_algebroid(const CoquasiLeftBialgebroid& cl) {
    const LeftBialgebroid& l = cl.core;
    Report rep;
    rep.subject = "coquasi-bialgebroid";
    std::size_t n = l.n(), nb = l.nb();
    Field f = l.field();
    rep.merge(check_bialgebroid(l));

    auto bas = [&](std::size_t i) { return l.total.basis(i); };
    auto mul = [&](const SparseVec& a, const SparseVec& b) { return l.total.multiply(a, b); };
    auto Phi3 = [&](const SparseVec& x, const SparseVec& y, const SparseVec& z) {
        return cl.assoc.mat.apply(tensor3(x, y, z, n));
    };

    // Coproduct multiplicative also for a nonassociative total (the product
    // is still a bilinear map; only its associativity is relaxed).
    {
        QuotientSpace qB = build_leg_quotient(l, 2, {relfam::B(0)});
        bool ok = true;
        std::string w;
        for (std::size_t x = 0; x < n && ok; ++x)
            for (std::size_t y = 0; y < n && ok; ++y)
                if (!qB.same_class(l.cop_lift(l.total.mul[x][y]),
                                   mul_pairs(l, l.cop[x], l.cop[y]))) {
                    ok = false;
                    w = "(X" + std::to_string(x) + ",Y" + std::to_string(y) + ")";
                }
        rep.record("coproduct is multiplicative", ok, w);
    }

    {
        bool ok = true;
        std::string w;
        for (std::size_t a = 0; a < nb && ok; ++a) {
            SparseVec sa = l.src.apply(SparseVec::unit(a, f));
            SparseVec ta = l.tgt.apply(SparseVec::unit(a, f));
            SparseVec base_a = SparseVec::unit(a, f);
            for (std::size_t x = 0; x < n && ok; ++x)
                for (std::size_t y = 0; y < n && ok; ++y)
                    for (std::size_t z = 0; z < n && ok; ++z) {
                        SparseVec p = Phi3(bas(x), bas(y), bas(z));
                        if (!(Phi3(mul(sa, bas(x)), bas(y), bas(z)) ==
                              l.base.multiply(base_a, p)) ||
                            !(Phi3(mul(ta, bas(x)), bas(y), bas(z)) ==
                              l.base.multiply(p, base_a))) {
                            ok = false;
                            w = "bilinearity at " + tuple_str({x, y, z}) + ",b" + std::to_string(a);
                        }
                        if (ok && (!(Phi3(mul(bas(x), sa), bas(y), bas(z)) ==
                                     Phi3(bas(x), mul(sa, bas(y)), bas(z))) ||
                                   !(Phi3(mul(bas(x), ta), bas(y), bas(z)) ==
                                     Phi3(bas(x), mul(ta, bas(y)), bas(z))) ||
                                   !(Phi3(bas(x), mul(bas(y), sa), bas(z)) ==
                                     Phi3(bas(x), bas(y), mul(sa, bas(z)))) ||
                                   !(Phi3(bas(x), mul(bas(y), ta), bas(z)) ==
                                     Phi3(bas(x), bas(y), mul(ta, bas(z)))))) {
                            ok = false;
                            w = "balancing at " + tuple_str({x, y, z}) + ",b" + std::to_string(a);
                        }
                    }
        }
        rep.record("associator is balanced and bilinear", ok, w);
    }

    {
        bool ok = true;
        std::string w;
        for (std::size_t x = 0; x < n && ok; ++x)
            for (std::size_t y = 0; y < n && ok; ++y) {
                SparseVec e = l.eps_of_product({bas(x), bas(y)});
                if (!(Phi3(l.unit(), bas(x), bas(y)) == e) ||
                    !(Phi3(bas(x), l.unit(), bas(y)) == e)) {
                    ok = false;
                    w = "(X" + std::to_string(x) + ",Y" + std::to_string(y) + ")";
                }
            }
        rep.record("associator normalisation", ok, w);
    }

    {
        bool ok = true;
        std::string w;
        for (std::size_t b = 0; b < nb && ok; ++b) {
            SparseVec sb = l.src.apply(SparseVec::unit(b, f));
            SparseVec tb = l.tgt.apply(SparseVec::unit(b, f));
            for (std::size_t x = 0; x < n && ok; ++x)
                for (std::size_t y = 0; y < n && ok; ++y)
                    for (std::size_t z = 0; z < n && ok; ++z)
                        if (!(Phi3(bas(x), bas(y), mul(bas(z), sb)) ==
                              Phi3(bas(x), bas(y), mul(bas(z), tb)))) {
                            ok = false;
                            w = tuple_str({x, y, z}) + ",b" + std::to_string(b);
                        }
        }
        rep.record("associator s/t insensitive in the last slot", ok, w);
    }

    {
        BFunctional phi{3, cl.assoc.mat};
        BFunctional phi_inv{3, cl.assoc_inv.mat};
        BFunctional unit3 = unit_functional(l, 3);
        bool ok = conv_mul(l, phi, phi_inv).mat == unit3.mat &&
                  conv_mul(l, phi_inv, phi).mat == unit3.mat;
        rep.record("associator convolution-invertible", ok, "");
    }

    {
        bool ok = true;
        std::string w;
        for (std::size_t a = 0; a < n && ok; ++a)
            for (std::size_t b = 0; b < n && ok; ++b)
                for (std::size_t c = 0; c < n && ok; ++c)
                    for (std::size_t d = 0; d < n && ok; ++d) {
                        SparseVec lhs(f), rhs(f);
                        for (auto& [hx, ch] : l.cop[a].terms())
                            for (auto& [gx, cg] : l.cop[b].terms())
                                for (auto& [fx, cf] : l.cop[c].terms())
                                    for (auto& [lx, clw] : l.cop[d].terms()) {
                                        Scalar wgt = ch * cg * cf * clw;
                                        lhs.axpy(
                                            wgt,
                                            l.base.multiply(
                                                Phi3(bas(hx / n), bas(gx / n),
                                                     mul(bas(fx / n), bas(lx / n))),
                                                Phi3(mul(bas(hx % n), bas(gx % n)), bas(fx % n),
                                                     bas(lx % n))));
                                    }
                        SparseVec g3 = l.cop_iterated(bas(b), 3);
                        SparseVec f3 = l.cop_iterated(bas(c), 3);
                        for (auto& [hx, ch] : l.cop[a].terms())
                            for (auto& [gI, cg] : g3.terms()) {
                                std::size_t g1 = gI / (n * n), g2 = (gI / n) % n, g3i = gI % n;
                                for (auto& [fI, cf] : f3.terms()) {
                                    std::size_t f1 = fI / (n * n), f2 = (fI / n) % n, f3i = fI % n;
                                    for (auto& [lx, clw] : l.cop[d].terms()) {
                                        Scalar wgt = ch * cg * cf * clw;
                                        SparseVec inner = Phi3(bas(g1), bas(f1), bas(lx / n));
                                        SparseVec mid = mul(l.s_of(inner), mul(bas(g2), bas(f2)));
                                        rhs.axpy(wgt,
                                                 l.base.multiply(
                                                     Phi3(bas(hx / n), mid, bas(lx % n)),
                                                     Phi3(bas(hx % n), bas(g3i), bas(f3i))));
                                    }
                                }
                            }
                        if (!(lhs == rhs)) {
                            ok = false;
                            w = tuple_str({a, b, c, d});
                        }
                    }
        rep.record("associator 3-cocycle condition", ok, w);
    }

    {
        bool ok = true;
        std::string w;
        for (std::size_t a = 0; a < n && ok; ++a)
            for (std::size_t b = 0; b < n && ok; ++b)
                for (std::size_t c = 0; c < n && ok; ++c) {
                    SparseVec lhs(f), rhs(f);
                    for (auto& [hx, ch] : l.cop[a].terms())
                        for (auto& [gx, cg] : l.cop[b].terms())
                            for (auto& [fx, cf] : l.cop[c].terms()) {
                                Scalar wgt = ch * cg * cf;
                                SparseVec v1 = Phi3(bas(hx / n), bas(gx / n), bas(fx / n));
                                lhs.axpy(wgt, mul(l.s_of(v1),
                                                  mul(mul(bas(hx % n), bas(gx % n)), bas(fx % n))));
                                SparseVec v2 = Phi3(bas(hx % n), bas(gx % n), bas(fx % n));
                                rhs.axpy(wgt, mul(l.t_of(v2),
                                                  mul(bas(hx / n), mul(bas(gx / n), bas(fx / n)))));
                            }
                    if (!(lhs == rhs)) {
                        ok = false;
                        w = tuple_str({a, b, c});
                    }
                }
        rep.record("associator intertwines the two bracketings", ok, w);
    }
    return rep;
}

LeftBialgebroid bialgebroid_over_field(const HopfAlgebra& h) {
    LeftBialgebroid l;
    Field f = h.field();
    l.base.field = f;
    l.base.dim = 1;
    l.base.mul.assign(1, std::vector<SparseVec>(1, SparseVec::unit(0, f)));
    l.base.unit = SparseVec::unit(0, f);
    l.total = h.alg;
    l.src = Matrix(h.dim(), 1, f);
    for (auto& [i, c] : h.alg.unit.terms()) l.src.at(i, 0) = c;
    l.tgt = l.src;
    l.cop = h.coa.cop;
    l.counit = Matrix(1, h.dim(), f);
    for (std::size_t i = 0; i < h.dim(); ++i) l.counit.at(0, i) = h.coa.counit[i];
    return l;
}

}  // namespace algd
