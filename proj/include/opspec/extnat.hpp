#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace opspec {

/* Element of N ∪ {∞}; carrier for nullities and deficiencies. */
class ExtNat {
public:
    constexpr ExtNat() : inf_(false), n_(0) {}

    static constexpr ExtNat fin(std::uint64_t n) {
        ExtNat e;
        e.inf_ = false;
        e.n_ = n;
        return e;
    }
    static constexpr ExtNat infinity() {
        ExtNat e;
        e.inf_ = true;
        e.n_ = 0;
        return e;
    }

    constexpr bool is_inf() const { return inf_; }
    constexpr bool is_fin() const { return !inf_; }
    constexpr std::uint64_t value() const {
        if (inf_) throw std::logic_error("ExtNat: value() on infinity");
        return n_;
    }
    constexpr bool is_zero() const { return !inf_ && n_ == 0; }

    friend constexpr bool operator==(const ExtNat& a, const ExtNat& b) {
        return a.inf_ == b.inf_ && (a.inf_ || a.n_ == b.n_);
    }
    friend constexpr bool operator!=(const ExtNat& a, const ExtNat& b) { return !(a == b); }
    /* Total order with Fin(n) < Inf for every n. */
    friend constexpr bool operator<(const ExtNat& a, const ExtNat& b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.n_ < b.n_;
    }
    friend constexpr bool operator<=(const ExtNat& a, const ExtNat& b) { return a == b || a < b; }
    friend constexpr bool operator>(const ExtNat& a, const ExtNat& b) { return b < a; }
    friend constexpr bool operator>=(const ExtNat& a, const ExtNat& b) { return b <= a; }

    std::string str() const { return inf_ ? "inf" : std::to_string(n_); }

private:
    bool inf_;
    std::uint64_t n_;
};

/* Fin(m)+Fin(n)=Fin(m+n); Inf absorbing. */
constexpr ExtNat extnat_add(const ExtNat& a, const ExtNat& b) {
    if (a.is_inf() || b.is_inf()) return ExtNat::infinity();
    return ExtNat::fin(a.value() + b.value());
}

/* Multiplicity times per-copy dimension: anything x 0 = 0, Inf absorbing otherwise. */
constexpr ExtNat extnat_scale(const ExtNat& mult, const ExtNat& v) {
    if (mult.is_fin() && mult.value() == 0) return ExtNat::fin(0);
    if (v.is_fin() && v.value() == 0) return ExtNat::fin(0);
    if (mult.is_inf() || v.is_inf()) return ExtNat::infinity();
    return ExtNat::fin(mult.value() * v.value());
}

/* Z ∪ {±∞, Undefined}; carrier for the Fredholm index α − β. */
struct ExtInt {
    enum class Kind { Fin, PlusInf, MinusInf, Undefined };
    Kind kind = Kind::Fin;
    std::int64_t k = 0;

    static ExtInt fin(std::int64_t v) { return {Kind::Fin, v}; }
    static ExtInt plus_inf() { return {Kind::PlusInf, 0}; }
    static ExtInt minus_inf() { return {Kind::MinusInf, 0}; }
    static ExtInt undefined() { return {Kind::Undefined, 0}; }

    friend bool operator==(const ExtInt& a, const ExtInt& b) {
        return a.kind == b.kind && (a.kind != Kind::Fin || a.k == b.k);
    }
    friend bool operator!=(const ExtInt& a, const ExtInt& b) { return !(a == b); }

    std::string str() const {
        switch (kind) {
            case Kind::Fin: return std::to_string(k);
            case Kind::PlusInf: return "+inf";
            case Kind::MinusInf: return "-inf";
            default: return "undefined";
        }
    }
};

/* α ⊖ β: Undefined iff both infinite. */
inline ExtInt extint_sub(const ExtNat& a, const ExtNat& b) {
    if (a.is_inf() && b.is_inf()) return ExtInt::undefined();
    if (a.is_inf()) return ExtInt::plus_inf();
    if (b.is_inf()) return ExtInt::minus_inf();
    return ExtInt::fin(static_cast<std::int64_t>(a.value()) - static_cast<std::int64_t>(b.value()));
}

/* Partial addition: nullopt where the sum is meaningless (∞ + (−∞), Undefined operands). */
inline std::optional<ExtInt> extint_add(const ExtInt& a, const ExtInt& b) {
    using K = ExtInt::Kind;
    if (a.kind == K::Undefined || b.kind == K::Undefined) return std::nullopt;
    if (a.kind == K::Fin && b.kind == K::Fin) return ExtInt::fin(a.k + b.k);
    if (a.kind == K::Fin) return b;
    if (b.kind == K::Fin) return a;
    if (a.kind == b.kind) return a;
    return std::nullopt;
}

}  // namespace opspec
