#include "algd/scalar.hpp"

namespace algd {

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) -> std::uint64_t {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
    };
    auto powmod = [&](std::uint64_t a, std::uint64_t e, std::uint64_t m) {
        std::uint64_t r = 1;
        a %= m;
        while (e) {
            if (e & 1) r = mulmod(r, a, m);
            a = mulmod(a, a, m);
            e >>= 1;
        }
        return r;
    };
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

Field Field::prime(std::uint64_t p) {
    if (p >= (1ull << 61)) throw Error("ModulusTooLarge", "p must be < 2^61");
    if (!is_prime_u64(p)) throw Error("NotPrime", std::to_string(p) + " is not prime");
    return Field{p};
}

static const mpq_class kRatZero(0);

const mpq_class& Scalar::rat() const { return rat_ ? *rat_ : kRatZero; }

Scalar Scalar::integer(long v, const Field& f) {
    Scalar s;
    s.p_ = f.p;
    if (f.p) {
        long long m = static_cast<long long>(f.p);
        long long r = static_cast<long long>(v) % m;
        if (r < 0) r += m;
        s.res_ = static_cast<std::uint64_t>(r);
    } else if (v != 0) {
        s.rat_.emplace(v);
    }
    return s;
}

Scalar Scalar::rational(const mpq_class& q) {
    Scalar s;
    s.p_ = 0;
    if (q != 0) {
        s.rat_.emplace(q);
        s.rat_->canonicalize();
    }
    return s;
}

Scalar Scalar::residue(std::uint64_t r, std::uint64_t p) {
    Field f = Field::prime(p);
    Scalar s;
    s.p_ = f.p;
    s.res_ = r % p;
    return s;
}

Scalar Scalar::parse(const std::string& in, const Field& f) {
    if (in.empty()) throw Error("ParseError", "empty scalar");
    if (f.rational()) {
        mpq_class q;
        if (q.set_str(in, 10) != 0) throw Error("ParseError", "bad rational '" + in + "'");
        q.canonicalize();
        if (q.get_den() < 0) {
            q.get_num() = -q.get_num();
            q.get_den() = -q.get_den();
        }
        return rational(q);
    }
    mpz_class z;
    if (z.set_str(in, 10) != 0) throw Error("ParseError", "bad residue '" + in + "'");
    mpz_class m(static_cast<unsigned long>(f.p));
    mpz_class r = z % m;
    if (r < 0) r += m;
    return residue(r.get_ui(), f.p);
}

static std::uint64_t addm(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;
    if (s >= p) s -= p;
    return s;
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same(o);
    Scalar s;
    s.p_ = p_;
    if (p_) {
        s.res_ = addm(res_, o.res_, p_);
    } else if (rat_ || o.rat_) {
        mpq_class v = rat() + o.rat();
        if (v != 0) s.rat_.emplace(std::move(v));
    }
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const {
    check_same(o);
    Scalar s;
    s.p_ = p_;
    if (p_) {
        s.res_ = addm(res_, o.res_ == 0 ? 0 : p_ - o.res_, p_);
    } else if (rat_ || o.rat_) {
        mpq_class v = rat() - o.rat();
        if (v != 0) s.rat_.emplace(std::move(v));
    }
    return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
    check_same(o);
    Scalar s;
    s.p_ = p_;
    if (p_) {
        s.res_ = static_cast<std::uint64_t>((static_cast<unsigned __int128>(res_) * o.res_) % p_);
    } else if (rat_ && o.rat_) {
        mpq_class v = *rat_ * *o.rat_;
        if (v != 0) s.rat_.emplace(std::move(v));
    }
    return s;
}

Scalar Scalar::operator-() const {
    Scalar s;
    s.p_ = p_;
    if (p_) {
        s.res_ = res_ == 0 ? 0 : p_ - res_;
    } else if (rat_ && *rat_ != 0) {
        s.rat_.emplace(-*rat_);
    }
    return s;
}

Scalar Scalar::inv() const {
    if (is_zero()) throw Error("DivisionByZero", "inverse of zero");
    Scalar s;
    s.p_ = p_;
    if (p_) {
        // Extended Euclid on signed 128-bit intermediates.
        long long t = 0, newt = 1;
        long long r = static_cast<long long>(p_), newr = static_cast<long long>(res_);
        while (newr != 0) {
            long long q = r / newr;
            long long tmp = t - q * newt;
            t = newt;
            newt = tmp;
            tmp = r - q * newr;
            r = newr;
            newr = tmp;
        }
        if (t < 0) t += static_cast<long long>(p_);
        s.res_ = static_cast<std::uint64_t>(t);
    } else {
        s.rat_.emplace(1 / *rat_);
    }
    return s;
}

bool Scalar::operator==(const Scalar& o) const {
    check_same(o);
    if (p_) return res_ == o.res_;
    if (!rat_ && !o.rat_) return true;
    return rat() == o.rat();
}

std::string Scalar::str() const {
    if (p_) return std::to_string(res_);
    if (!rat_) return "0";
    if (rat_->get_den() == 1) return rat_->get_num().get_str();
    return rat_->get_num().get_str() + "/" + rat_->get_den().get_str();
}

}  // namespace algd
