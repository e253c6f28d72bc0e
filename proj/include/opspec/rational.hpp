#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace opspec {

using Int = mpz_class;

/* Exact rational scalar. Always kept canonical (denominator > 0, lowest
   terms), so operator== is structural equality. */
class Rat {
public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}
    Rat(int n) : v_(n) {}
    Rat(const Int& n) : v_(n) {}
    Rat(long num, long den) : v_(num, den) {
        if (den == 0) throw std::invalid_argument("Rat: zero denominator");
        v_.canonicalize();
    }
    Rat(const Int& num, const Int& den) : v_(num, den) {
        if (den == 0) throw std::invalid_argument("Rat: zero denominator");
        v_.canonicalize();
    }

    static Rat from_mpq(mpq_class q) {
        q.canonicalize();
        Rat r;
        r.v_ = std::move(q);
        return r;
    }

    const mpq_class& raw() const { return v_; }
    Int num() const { return v_.get_num(); }
    Int den() const { return v_.get_den(); }

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sgn(v_) == 0; }

    friend Rat operator+(const Rat& a, const Rat& b) { return from_mpq(a.v_ + b.v_); }
    friend Rat operator-(const Rat& a, const Rat& b) { return from_mpq(a.v_ - b.v_); }
    friend Rat operator*(const Rat& a, const Rat& b) { return from_mpq(a.v_ * b.v_); }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.is_zero()) throw std::invalid_argument("Rat: division by zero");
        return from_mpq(a.v_ / b.v_);
    }
    Rat operator-() const { return from_mpq(-v_); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

    Rat abs() const { return sign() < 0 ? -*this : *this; }

    /* True iff the value is the square of a rational. */
    bool is_perfect_square() const {
        if (sign() < 0) return false;
        return mpz_perfect_square_p(num().get_mpz_t()) && mpz_perfect_square_p(den().get_mpz_t());
    }
    /* Exact square root; only valid when is_perfect_square(). */
    Rat exact_sqrt() const {
        Int n = num(), d = den(), rn, rd;
        mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
        return Rat(rn, rd);
    }

    double to_double() const { return v_.get_d(); }

    /* Serialized as "p/q", the "/q" omitted when q = 1. */
    std::string str() const {
        std::string s = num().get_str();
        if (den() != 1) s += "/" + den().get_str();
        return s;
    }

    static Rat parse(const std::string& s);

private:
    mpq_class v_;
};

inline Rat Rat::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rat: empty string");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s), Int(1));
        Int n(s.substr(0, slash)), d(s.substr(slash + 1));
        return Rat(n, d);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("Rat: malformed rational '" + s + "'");
    }
}

}  // namespace opspec
