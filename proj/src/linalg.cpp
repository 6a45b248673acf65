#include "algd/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace algd {

void SparseVec::add_term(std::size_t i, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), i,
                               [](const auto& t, std::size_t k) { return t.first < k; });
    if (it != terms_.end() && it->first == i) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    } else {
        terms_.insert(it, {i, c});
    }
}

Scalar SparseVec::at(std::size_t i) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), i,
                               [](const auto& t, std::size_t k) { return t.first < k; });
    if (it != terms_.end() && it->first == i) return it->second;
    return Scalar::zero(field_);
}

std::size_t SparseVec::lead() const { return terms_.front().first; }

SparseVec SparseVec::operator+(const SparseVec& o) const {
    SparseVec r(field_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j >= o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
            r.terms_.push_back(terms_[i++]);
        } else if (i >= terms_.size() || o.terms_[j].first < terms_[i].first) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            Scalar c = terms_[i].second + o.terms_[j].second;
            if (!c.is_zero()) r.terms_.emplace_back(terms_[i].first, c);
            ++i, ++j;
        }
    }
    return r;
}

SparseVec SparseVec::operator-(const SparseVec& o) const {
    if (o.terms_.empty()) return *this;
    return *this + o.scaled(-Scalar::one(o.field_));
}

SparseVec SparseVec::scaled(const Scalar& c) const {
    SparseVec r(field_);
    if (c.is_zero()) return r;
    r.terms_.reserve(terms_.size());
    for (auto& [i, a] : terms_) {
        Scalar b = a * c;
        if (!b.is_zero()) r.terms_.emplace_back(i, b);
    }
    return r;
}

void SparseVec::axpy(const Scalar& c, const SparseVec& o) {
    if (c.is_zero() || o.terms_.empty()) return;
    *this = *this + o.scaled(c);
}

std::vector<Scalar> SparseVec::dense(std::size_t n) const {
    std::vector<Scalar> d(n, Scalar::zero(field_));
    for (auto& [i, a] : terms_) d[i] = a;
    return d;
}

SparseVec SparseVec::from_dense(const std::vector<Scalar>& d, const Field& f) {
    SparseVec v(f);
    for (std::size_t i = 0; i < d.size(); ++i)
        if (!d[i].is_zero()) v.terms_.emplace_back(i, d[i]);
    return v;
}

std::string SparseVec::str() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (auto& [i, a] : terms_) {
        if (!first) os << ", ";
        first = false;
        os << "[" << i << "]=" << a.str();
    }
    os << "}";
    return os.str();
}

Matrix Matrix::identity(std::size_t n, const Field& f) {
    Matrix m(n, n, f);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw Error("ShapeMismatch", "matrix product");
    Matrix r(rows_, o.cols_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& aik = at(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                const Scalar& b = o.at(k, j);
                if (!b.is_zero()) r.at(i, j) += aik * b;
            }
        }
    return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("ShapeMismatch", "matrix sum");
    Matrix r(rows_, cols_, field_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("ShapeMismatch", "matrix difference");
    Matrix r(rows_, cols_, field_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

bool Matrix::operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t i = 0; i < a_.size(); ++i)
        if (a_[i] != o.a_[i]) return false;
    return true;
}

std::vector<Scalar> Matrix::apply(const std::vector<Scalar>& v) const {
    if (v.size() != cols_) throw Error("ShapeMismatch", "matrix apply");
    std::vector<Scalar> r(rows_, Scalar::zero(field_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] += at(i, j) * v[j];
    return r;
}

SparseVec Matrix::apply(const SparseVec& v) const {
    SparseVec r(field_);
    std::vector<Scalar> acc(rows_, Scalar::zero(field_));
    for (auto& [j, c] : v.terms()) {
        if (j >= cols_) throw Error("ShapeMismatch", "sparse apply index out of range");
        for (std::size_t i = 0; i < rows_; ++i) {
            const Scalar& aij = at(i, j);
            if (!aij.is_zero()) acc[i] += aij * c;
        }
    }
    return SparseVec::from_dense(acc, field_);
}

Matrix Matrix::transpose() const {
    Matrix r(cols_, rows_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

std::pair<Matrix, std::vector<std::size_t>> Matrix::rref() const {
    Matrix m = *this;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
        std::size_t sel = row;
        while (sel < rows_ && m.at(sel, col).is_zero()) ++sel;
        if (sel == rows_) continue;
        for (std::size_t j = 0; j < cols_; ++j) std::swap(m.at(row, j), m.at(sel, j));
        Scalar inv = m.at(row, col).inv();
        for (std::size_t j = col; j < cols_; ++j) m.at(row, j) *= inv;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == row || m.at(i, col).is_zero()) continue;
            Scalar f = m.at(i, col);
            for (std::size_t j = col; j < cols_; ++j) m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return {m, pivots};
}

std::optional<std::vector<Scalar>> Matrix::solve(const std::vector<Scalar>& b) const {
    if (b.size() != rows_) throw Error("ShapeMismatch", "solve rhs");
    Matrix aug(rows_, cols_ + 1, field_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_) = b[i];
    }
    auto [r, piv] = aug.rref();
    for (std::size_t k = 0; k < piv.size(); ++k)
        if (piv[k] == cols_) return std::nullopt;  // inconsistent
    std::vector<Scalar> x(cols_, Scalar::zero(field_));
    for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = r.at(k, cols_);
    return x;
}

Matrix Matrix::kernel() const {
    auto [r, piv] = rref();
    std::vector<bool> is_piv(cols_, false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<std::size_t> frees;
    for (std::size_t j = 0; j < cols_; ++j)
        if (!is_piv[j]) frees.push_back(j);
    Matrix k(frees.size(), cols_, field_);
    for (std::size_t fi = 0; fi < frees.size(); ++fi) {
        std::size_t fc = frees[fi];
        k.at(fi, fc) = Scalar::one(field_);
        for (std::size_t pi = 0; pi < piv.size(); ++pi) k.at(fi, piv[pi]) = -r.at(pi, fc);
    }
    return k;
}

std::optional<Matrix> Matrix::inverse() const {
    if (rows_ != cols_) return std::nullopt;
    Matrix aug(rows_, 2 * cols_, field_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_ + i) = Scalar::one(field_);
    }
    auto [r, piv] = aug.rref();
    if (piv.size() < rows_) return std::nullopt;
    for (std::size_t k = 0; k < rows_; ++k)
        if (piv[k] != k) return std::nullopt;
    Matrix inv(rows_, cols_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) inv.at(i, j) = r.at(i, cols_ + j);
    return inv;
}

bool Matrix::is_zero() const {
    for (auto& s : a_)
        if (!s.is_zero()) return false;
    return true;
}

std::string Matrix::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j).str();
    }
    os << "]";
    return os.str();
}

bool Echelon::insert(SparseVec v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    std::size_t pc = v.lead();
    SparseVec row = v.scaled(v.at(pc).inv());
    // Keep full reduction: eliminate the new pivot from the rows that still
    // have support there (tracked via the column index).
    auto sup = support_.find(pc);
    if (sup != support_.end()) {
        std::vector<std::size_t> affected(sup->second.begin(), sup->second.end());
        for (std::size_t p : affected) {
            SparseVec& r = rows_.at(p);
            Scalar c = r.at(pc);
            if (c.is_zero()) continue;
            unindex(p, r);
            r.axpy(-c, row);
            index(p, r);
        }
    }
    index(pc, row);
    rows_.emplace(pc, std::move(row));
    return true;
}

SparseVec Echelon::reduce(SparseVec v) const {
    // Full reduction guarantees no row has support on another row's pivot
    // column, so eliminating each pivot hit once (collected up front) leaves
    // a remainder supported on non-pivot columns only.
    std::vector<std::pair<std::size_t, Scalar>> hits;
    for (auto& [i, c] : v.terms())
        if (rows_.count(i)) hits.emplace_back(i, c);
    for (auto& [i, c] : hits) v.axpy(-c, rows_.at(i));
    return v;
}

void QuotientSpace::add_relation(const SparseVec& r) {
    if (finalized_) throw Error("Internal", "quotient already finalized");
    pending_.push_back(r);
}

std::pair<std::size_t, Scalar> QuotientSpace::find(std::size_t i) const {
    // Path compression with weight composition: e_i = w * e_root.
    if (parent_[i] == i) return {i, Scalar::one(field_)};
    std::vector<std::size_t> path;
    std::size_t cur = i;
    while (parent_[cur] != cur) {
        path.push_back(cur);
        cur = parent_[cur];
    }
    std::size_t root = cur;
    Scalar acc = Scalar::one(field_);
    for (std::size_t k = path.size(); k-- > 0;) {
        acc = weight_[path[k]] * acc;
        parent_[path[k]] = root;
        weight_[path[k]] = acc;
    }
    return {root, weight_[i]};
}

void QuotientSpace::finalize() {
    if (finalized_) return;
    finalized_ = true;
    use_forest_ = true;
    for (auto& r : pending_)
        if (r.nnz() > 2) {
            use_forest_ = false;
            break;
        }
    if (use_forest_) {
        parent_.resize(ambient_);
        weight_.assign(ambient_, Scalar::one(field_));
        killed_.assign(ambient_, false);
        for (std::size_t i = 0; i < ambient_; ++i) parent_[i] = i;
        for (auto& r : pending_) {
            if (r.empty()) continue;
            if (r.nnz() == 1) {
                auto [root, w] = find(r.terms()[0].first);
                killed_[root] = true;
                continue;
            }
            auto& ta = r.terms()[0];
            auto& tb = r.terms()[1];
            auto [ra, wa] = find(ta.first);
            auto [rb, wb] = find(tb.first);
            // c_a e_a + c_b e_b = 0, e_a = wa e_ra, e_b = wb e_rb.
            Scalar ratio = -(tb.second * wb) / (ta.second * wa);  // e_ra = ratio e_rb
            if (ra == rb) {
                if (!(ratio.is_one())) killed_[ra] = true;
                continue;
            }
            bool ka = killed_[ra], kb = killed_[rb];
            if (ra < rb) {
                parent_[ra] = rb;
                weight_[ra] = ratio;
                killed_[rb] = ka || kb;
            } else {
                parent_[rb] = ra;
                weight_[rb] = ratio.inv();
                killed_[ra] = ka || kb;
            }
        }
        free_.clear();
        for (std::size_t i = 0; i < ambient_; ++i) {
            auto [root, w] = find(i);
            if (root == i && !killed_[i]) free_.push_back(i);
        }
        pending_.clear();
        pending_.shrink_to_fit();
        return;
    }
    for (auto& r : pending_) rel_.insert(r);
    pending_.clear();
    pending_.shrink_to_fit();
    free_.clear();
    const auto& rows = rel_.rows();
    auto it = rows.begin();
    for (std::size_t j = 0; j < ambient_; ++j) {
        while (it != rows.end() && it->first < j) ++it;
        if (it != rows.end() && it->first == j) continue;
        free_.push_back(j);
    }
}

SparseVec QuotientSpace::reduce(const SparseVec& v) const {
    if (!finalized_) throw Error("Internal", "quotient not finalized");
    if (!use_forest_) return rel_.reduce(v);
    SparseVec out(field_);
    for (auto& [i, c] : v.terms()) {
        auto [root, w] = find(i);
        if (killed_[root]) continue;
        out.add_term(root, c * w);
    }
    return out;
}

void QuotientSpace::for_each_relation(const std::function<void(const SparseVec&)>& cb) const {
    if (!finalized_) throw Error("Internal", "quotient not finalized");
    if (!use_forest_) {
        for (auto& [p, r] : rel_.rows()) cb(r);
        return;
    }
    for (std::size_t i = 0; i < ambient_; ++i) {
        auto [root, w] = find(i);
        if (killed_[root]) {
            cb(SparseVec::unit(i, field_));
        } else if (root != i) {
            SparseVec r = SparseVec::unit(i, field_);
            r.add_term(root, -w);
            cb(r);
        }
    }
}

std::vector<Scalar> QuotientSpace::project(const SparseVec& v) const {
    if (!finalized_) throw Error("Internal", "quotient not finalized");
    SparseVec r = reduce(v);
    std::vector<Scalar> w(free_.size(), Scalar::zero(field_));
    std::size_t k = 0;
    for (auto& [i, c] : r.terms()) {
        while (k < free_.size() && free_[k] < i) ++k;
        if (k >= free_.size() || free_[k] != i)
            throw Error("Internal", "reduced vector hit a pivot column");
        w[k] = c;
    }
    return w;
}

SparseVec QuotientSpace::section(const std::vector<Scalar>& w) const {
    if (!finalized_) throw Error("Internal", "quotient not finalized");
    if (w.size() != free_.size()) throw Error("ShapeMismatch", "section coords");
    SparseVec v(field_);
    for (std::size_t k = 0; k < w.size(); ++k)
        if (!w[k].is_zero()) v.add_term(free_[k], w[k]);
    return v;
}

QuotientInverse invert_between_quotients(const std::function<SparseVec(const SparseVec&)>& f,
                                         const QuotientSpace& dom, const QuotientSpace& cod) {
    QuotientInverse out;
    // Well-definedness: relation generators must land in the codomain span.
    dom.for_each_relation([&](const SparseVec& r) {
        if (out.status != QuotientInverse::Status::Ok) return;
        SparseVec img = cod.reduce(f(r));
        if (!img.empty()) {
            out.status = QuotientInverse::Status::NotWellDefined;
            out.detail = "relation with lead " + std::to_string(r.lead()) + " maps to " + img.str();
        }
    });
    if (out.status != QuotientInverse::Status::Ok) return out;
    std::size_t q_dom = dom.dim(), q_cod = cod.dim();
    Matrix induced(q_cod, q_dom, dom.field());
    for (std::size_t j = 0; j < q_dom; ++j) {
        std::vector<Scalar> unit(q_dom, Scalar::zero(dom.field()));
        unit[j] = Scalar::one(dom.field());
        std::vector<Scalar> col = cod.project(f(dom.section(unit)));
        for (std::size_t i = 0; i < q_cod; ++i) induced.at(i, j) = col[i];
    }
    out.induced = induced;
    auto inv = induced.inverse();
    if (!inv) {
        out.status = QuotientInverse::Status::NotBijective;
        out.detail = "induced quotient matrix is singular (or not square)";
        return out;
    }
    out.inverse = *inv;
    return out;
}

std::optional<std::vector<Scalar>> solve_in_span(const std::vector<SparseVec>& generators,
                                                 const SparseVec& target, const Field& f) {
    // Augment each generator with a tracking coordinate block.
    std::size_t n = 0;
    for (auto& g : generators)
        for (auto& [i, c] : g.terms()) n = std::max(n, i + 1);
    for (auto& [i, c] : target.terms()) n = std::max(n, i + 1);
    Echelon ech(f);
    std::vector<SparseVec> tracked;
    for (std::size_t k = 0; k < generators.size(); ++k) {
        SparseVec g = generators[k];
        SparseVec t(f);
        for (auto& [i, c] : g.terms()) t.add_term(i, c);
        t.add_term(n + k, Scalar::one(f));
        ech.insert(t);
    }
    SparseVec r = ech.reduce(target);
    // r must be supported only on the tracking block.
    std::vector<Scalar> coeff(generators.size(), Scalar::zero(f));
    for (auto& [i, c] : r.terms()) {
        if (i < n) return std::nullopt;
        coeff[i - n] = -c;
    }
    return coeff;
}

}  // namespace algd
