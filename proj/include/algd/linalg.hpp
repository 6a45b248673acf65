#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "algd/scalar.hpp"

namespace algd {

// Sparse vector over one field: sorted (index, nonzero scalar) pairs.
class SparseVec {
  public:
    SparseVec() = default;
    explicit SparseVec(Field f) : field_(f) {}

    static SparseVec unit(std::size_t i, const Field& f) {
        SparseVec v(f);
        v.terms_.emplace_back(i, Scalar::one(f));
        return v;
    }

    Field field() const { return field_; }
    bool empty() const { return terms_.empty(); }
    std::size_t nnz() const { return terms_.size(); }
    const std::vector<std::pair<std::size_t, Scalar>>& terms() const& { return terms_; }
    // Rvalue overload returns by value so that iterating over the terms of a
    // temporary keeps them alive for the whole loop.
    std::vector<std::pair<std::size_t, Scalar>> terms() && { return std::move(terms_); }

    void add_term(std::size_t i, const Scalar& c);  // accumulates, keeps order
    Scalar at(std::size_t i) const;
    std::size_t lead() const;  // smallest index; empty() must be false

    SparseVec operator+(const SparseVec& o) const;
    SparseVec operator-(const SparseVec& o) const;
    SparseVec scaled(const Scalar& c) const;
    void axpy(const Scalar& c, const SparseVec& o);  // *this += c * o

    bool operator==(const SparseVec& o) const { return terms_ == o.terms_; }

    std::vector<Scalar> dense(std::size_t n) const;
    static SparseVec from_dense(const std::vector<Scalar>& d, const Field& f);

    std::string str() const;

  private:
    Field field_;
    std::vector<std::pair<std::size_t, Scalar>> terms_;
};

// Dense row-major matrix of exact scalars.
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t r, std::size_t c, const Field& f)
        : rows_(r), cols_(c), field_(f), a_(r * c, Scalar::zero(f)) {}

    static Matrix identity(std::size_t n, const Field& f);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Field field() const { return field_; }

    Scalar& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Scalar& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    bool operator==(const Matrix& o) const;

    std::vector<Scalar> apply(const std::vector<Scalar>& v) const;  // this * v
    SparseVec apply(const SparseVec& v) const;
    Matrix transpose() const;

    // Reduced row echelon form; returns pivot column list.
    std::pair<Matrix, std::vector<std::size_t>> rref() const;
    std::size_t rank() const { return rref().second.size(); }

    // Some x with this*x = b, or nullopt when b is outside the column space.
    std::optional<std::vector<Scalar>> solve(const std::vector<Scalar>& b) const;
    // Rows spanning {x : this*x = 0}; row count = cols - rank.
    Matrix kernel() const;
    std::optional<Matrix> inverse() const;  // nullopt when singular

    bool is_zero() const;
    std::string str() const;

  private:
    std::size_t rows_, cols_;
    Field field_;
    std::vector<Scalar> a_;
};

// Incrementally maintained reduced row echelon basis of a growing row span.
// Rows are stored sparse, each with a distinct pivot (leading) column with
// coefficient one, and zero in every other row's pivot column.
class Echelon {
  public:
    explicit Echelon(Field f) : field_(f) {}

    Field field() const { return field_; }
    // Reduces v against the current basis and, if a nonzero remainder is
    // left, inserts it (normalized) as a new row. Returns true if inserted.
    bool insert(SparseVec v);
    // Canonical remainder of v modulo the row span (all pivot columns
    // eliminated).
    SparseVec reduce(SparseVec v) const;
    bool contains(const SparseVec& v) const { return reduce(v).empty(); }

    std::size_t rank() const { return rows_.size(); }
    const std::map<std::size_t, SparseVec>& rows() const { return rows_; }

  private:
    Field field_;
    std::map<std::size_t, SparseVec> rows_;  // pivot column -> row
    // column -> pivots of rows supported there (keeps inserts near-linear)
    std::map<std::size_t, std::set<std::size_t>> support_;

    void index(std::size_t pivot, const SparseVec& row) {
        for (auto& [i, c] : row.terms()) support_[i].insert(pivot);
    }
    void unindex(std::size_t pivot, const SparseVec& row) {
        for (auto& [i, c] : row.terms()) {
            auto it = support_.find(i);
            if (it != support_.end()) it->second.erase(pivot);
        }
    }
};

// Quotient of k^n by the row span of a relation matrix. The canonical
// section embeds quotient coordinates on the non-pivot columns of the
// relation RREF, so project(section(w)) == w and v - section(project(v))
// always lies in the relation span.
//
// When every relation generator has at most two terms (the common case for
// monomial structure constants) the reduced echelon is a weighted forest;
// it is kept as a union-find with coefficient tracking, which makes the
// large balanced tensor-power quotients cheap. The canonical representative
// agrees with the generic RREF one: pivots are all class members except the
// largest index.
class QuotientSpace {
  public:
    QuotientSpace() : ambient_(0), field_(Field::rationals()), rel_(Field::rationals()) {}
    QuotientSpace(std::size_t ambient, Field f) : ambient_(ambient), field_(f), rel_(f) {}

    void add_relation(const SparseVec& r);
    void finalize();  // chooses the representation; idempotent

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return free_.size(); }  // quotient dimension
    Field field() const { return field_; }
    const std::vector<std::size_t>& free_columns() const { return free_; }

    // Canonical representative of v's class (supported on free columns).
    SparseVec reduce(const SparseVec& v) const;
    bool in_relations(const SparseVec& v) const { return reduce(v).empty(); }
    bool same_class(const SparseVec& a, const SparseVec& b) const {
        return reduce(a - b).empty();
    }

    std::vector<Scalar> project(const SparseVec& v) const;  // quotient coords
    SparseVec section(const std::vector<Scalar>& w) const;  // canonical lift

    // Visits a spanning set of the relation space.
    void for_each_relation(const std::function<void(const SparseVec&)>& cb) const;

  private:
    std::size_t ambient_;
    Field field_;
    Echelon rel_;
    std::vector<SparseVec> pending_;
    std::vector<std::size_t> free_;
    bool finalized_ = false;

    bool use_forest_ = false;
    mutable std::vector<std::size_t> parent_;
    mutable std::vector<Scalar> weight_;  // e_i = weight_[i] * e_parent[i]
    std::vector<bool> killed_;            // meaningful at roots

    std::pair<std::size_t, Scalar> find(std::size_t i) const;
};

// Outcome of inverting a map between two quotient spaces.
struct QuotientInverse {
    enum class Status { Ok, NotWellDefined, NotBijective };
    Status status = Status::Ok;
    Matrix induced;      // dim(cod) x dim(dom), valid when not NotWellDefined
    Matrix inverse;      // dim(dom) x dim(cod), valid when Ok
    std::string detail;  // witness description on failure
};

// f is given on ambient coordinates of dom and must map the relation span of
// dom into the relation span of cod; the induced quotient map is inverted.
QuotientInverse invert_between_quotients(const std::function<SparseVec(const SparseVec&)>& f,
                                         const QuotientSpace& dom, const QuotientSpace& cod);

// Solves A x = b where A's columns are given sparse (column-generator form):
// returns coefficient vector over the generators, reducing b against an
// echelon of the generators. Nullopt when b is not in their span.
std::optional<std::vector<Scalar>> solve_in_span(const std::vector<SparseVec>& generators,
                                                 const SparseVec& target, const Field& f);

}  // namespace algd
