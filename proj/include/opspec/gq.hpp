#pragma once

#include "opspec/rational.hpp"

namespace opspec {

/* Gaussian rational: the exact complex scalar carrying the spectral
   parameter λ and all operator coefficients. */
struct GQ {
    Rat re, im;

    GQ() = default;
    GQ(Rat r) : re(std::move(r)), im(0) {}
    GQ(long r) : re(r), im(0) {}
    GQ(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }

    friend GQ operator+(const GQ& a, const GQ& b) { return {a.re + b.re, a.im + b.im}; }
    friend GQ operator-(const GQ& a, const GQ& b) { return {a.re - b.re, a.im - b.im}; }
    friend GQ operator*(const GQ& a, const GQ& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    GQ operator-() const { return {-re, -im}; }

    friend bool operator==(const GQ& a, const GQ& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GQ& a, const GQ& b) { return !(a == b); }

    std::string str() const {
        if (im.is_zero()) return re.str();
        std::string s = re.str();
        s += (im.sign() >= 0 ? "+" : "-");
        s += im.abs().str() + "i";
        return s;
    }
};

inline GQ conj(const GQ& z) { return {z.re, -z.im}; }

/* |z|^2, exactly. */
inline Rat abs2(const GQ& z) { return z.re * z.re + z.im * z.im; }

inline GQ operator/(const GQ& a, const GQ& b) {
    Rat d = abs2(b);
    if (d.is_zero()) throw std::invalid_argument("GQ: division by zero");
    GQ n = a * conj(b);
    return {n.re / d, n.im / d};
}

/* Lexicographic order, used only for canonical sorting/dedup. */
inline bool gq_less(const GQ& a, const GQ& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
}

}  // namespace opspec
