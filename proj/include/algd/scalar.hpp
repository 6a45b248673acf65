#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace algd {

// Coded error used across the library for invalid inputs and failed
// preconditions. `code` is a stable machine-readable tag ("NotAGroup",
// "NotGalois", ...), `what()` carries the human-readable detail.
struct Error : std::runtime_error {
    std::string code;
    Error(std::string c, const std::string& msg)
        : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

// Ground field: the rationals (p == 0) or a prime field F_p, p < 2^61.
struct Field {
    std::uint64_t p = 0;

    bool rational() const { return p == 0; }
    bool operator==(const Field& o) const { return p == o.p; }
    bool operator!=(const Field& o) const { return p != o.p; }
    std::string str() const { return p == 0 ? "Q" : "F" + std::to_string(p); }

    static Field rationals() { return Field{0}; }
    static Field prime(std::uint64_t p);
};

bool is_prime_u64(std::uint64_t n);

// Exact field element. Rationals are kept in lowest terms with positive
// denominator (mpq_class canonicalizes); prime-field residues are reduced
// mod p. Arithmetic between different fields throws. The rational payload is
// lazily engaged so that prime-field scalars and rational zeros never touch
// the heap.
class Scalar {
  public:
    Scalar() : p_(0), res_(0) {}

    static Scalar zero(const Field& f) { return integer(0, f); }
    static Scalar one(const Field& f) { return integer(1, f); }
    static Scalar integer(long v, const Field& f);
    static Scalar rational(const mpq_class& q);
    static Scalar residue(std::uint64_t r, std::uint64_t p);
    // Parses "a", "-a" or "a/b" (rational field) or an integer residue.
    static Scalar parse(const std::string& s, const Field& f);

    Field field() const { return Field{p_}; }
    bool is_zero() const { return p_ ? res_ == 0 : (!rat_ || *rat_ == 0); }
    bool is_one() const { return p_ ? res_ == 1 : (rat_ && *rat_ == 1); }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator-() const;
    Scalar inv() const;  // throws Error("DivisionByZero") on 0
    Scalar operator/(const Scalar& o) const { return *this * o.inv(); }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // Canonical rendering: lowest-terms "a/b" (or "a") for rationals,
    // decimal residue for prime fields.
    std::string str() const;

    const mpq_class& rat() const;  // zero when disengaged
    std::uint64_t res() const { return res_; }

  private:
    std::uint64_t p_;              // 0 = rational
    std::uint64_t res_;            // residue when p_ != 0
    std::optional<mpq_class> rat_; // engaged only for nonzero-ish rationals

    void check_same(const Scalar& o) const {
        if (p_ != o.p_) throw Error("FieldMismatch", "mixing " + field().str() + " with " + o.field().str());
    }
};

}  // namespace algd
