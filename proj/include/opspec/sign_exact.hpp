#pragma once

#include "opspec/rational.hpp"

#include <stdexcept>

namespace opspec {

/* Thrown when an arrangement computation cannot certify a result; callers
   must treat it as a refusal, never as a label. */
struct ArrangementError : std::runtime_error {
    explicit ArrangementError(const std::string& what) : std::runtime_error(what) {}
};

/* sign(P + Q*sqrt(s)), s >= 0, decided in rational arithmetic. */
inline int sign_pqs(const Rat& P, const Rat& Q, const Rat& s) {
    if (s.sign() < 0) throw std::invalid_argument("sign_pqs: negative radicand");
    int sq = s.is_zero() ? 0 : Q.sign();
    int sp = P.sign();
    if (sq == 0) return sp;
    if (sp == 0) return sq;
    if (sp == sq) return sp;
    // opposite signs: compare P^2 against Q^2 s
    int c = (P * P - Q * Q * s).sign();
    return c == 0 ? 0 : (c > 0 ? sp : sq);
}

/* sign(A + B*sqrt(u) + C*sqrt(v)), u, v >= 0. */
inline int sign_two_radicals(const Rat& A, const Rat& B, const Rat& u, const Rat& C, const Rat& v) {
    int s1 = sign_pqs(A, B, u);                     // A + B sqrt(u)
    int s2 = v.is_zero() ? 0 : C.sign();            // C sqrt(v)
    if (s1 == 0) return s2;
    if (s2 == 0) return s1;
    if (s1 == s2) return s1;
    // compare (A + B sqrt(u))^2 against C^2 v; both sides' signs are known
    Rat D = A * A + B * B * u - C * C * v;
    int c = sign_pqs(D, Rat(2) * A * B, u);
    return c == 0 ? 0 : (c > 0 ? s1 : s2);
}

/* Closed rational interval, endpoints exact. */
struct RatInterval {
    Rat lo, hi;

    RatInterval() = default;
    RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {}
    static RatInterval point(const Rat& r) { return {r, r}; }

    bool contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }
    /* 0 when the interval straddles zero. */
    int sign() const {
        if (lo.sign() > 0) return 1;
        if (hi.sign() < 0) return -1;
        return 0;
    }
    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / Rat(2); }

    friend RatInterval operator+(const RatInterval& a, const RatInterval& b) {
        return {a.lo + b.lo, a.hi + b.hi};
    }
    friend RatInterval operator-(const RatInterval& a, const RatInterval& b) {
        return {a.lo - b.hi, a.hi - b.lo};
    }
    friend RatInterval operator*(const RatInterval& a, const RatInterval& b) {
        Rat c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
        Rat lo = c1, hi = c1;
        for (const Rat* r : {&c2, &c3, &c4}) {
            if (*r < lo) lo = *r;
            if (*r > hi) hi = *r;
        }
        return {lo, hi};
    }
    RatInterval operator-() const { return {-hi, -lo}; }

    friend RatInterval operator*(const Rat& c, const RatInterval& x) {
        return c.sign() >= 0 ? RatInterval{c * x.lo, c * x.hi} : RatInterval{c * x.hi, c * x.lo};
    }
    friend RatInterval operator+(const Rat& c, const RatInterval& x) { return {c + x.lo, c + x.hi}; }
};

/* Interval containing sqrt(s), bisected `steps` times. */
inline RatInterval sqrt_interval(const Rat& s, int steps) {
    if (s.sign() < 0) throw std::invalid_argument("sqrt_interval: negative radicand");
    if (s.is_zero()) return RatInterval::point(Rat(0));
    if (s.is_perfect_square()) return RatInterval::point(s.exact_sqrt());
    Rat lo(0), hi = s < Rat(1) ? Rat(1) : s;
    for (int i = 0; i < steps; ++i) {
        Rat m = (lo + hi) / Rat(2);
        if (m * m <= s)
            lo = m;
        else
            hi = m;
    }
    return {lo, hi};
}

/* A real quadratic irrational: the chosen root of the monic polynomial
   t^2 + p t + q with two distinct real roots. side = -1 picks the smaller
   root, +1 the larger. */
struct QuadRoot {
    Rat p, q;
    int side = -1;

    Rat disc() const { return p * p / Rat(4) - q; }  // (p/2)^2 - q > 0
    Rat vertex() const { return -p / Rat(2); }

    /* Explicit radical form: root = vertex ± sqrt(disc). */
    RatInterval approx(int steps) const {
        RatInterval r = sqrt_interval(disc(), steps);
        Rat v = vertex();
        return side < 0 ? RatInterval{v - r.hi, v - r.lo} : RatInterval{v + r.lo, v + r.hi};
    }

    /* sign(root - r), exactly. */
    int cmp_rational(const Rat& r) const {
        Rat f = r * r + p * r + q;
        int sf = f.sign();
        Rat v = vertex();
        if (sf == 0) {
            // r is one of the two roots; which one is decided by its side of the vertex
            bool r_is_lower = r < v;
            if (side < 0) return r_is_lower ? 0 : -1;
            return r_is_lower ? 1 : 0;
        }
        if (sf > 0) return r < v ? 1 : -1;  // r outside (t-, t+)
        return side < 0 ? -1 : 1;           // r strictly between the roots
    }

    friend bool operator==(const QuadRoot& a, const QuadRoot& b) {
        return a.p == b.p && a.q == b.q && a.side == b.side;
    }
};

/* sign(L0 + L1 * t) at t = root. */
inline int sign_linear_at(const Rat& L0, const Rat& L1, const QuadRoot& t) {
    if (L1.is_zero()) return L0.sign();
    int c = t.cmp_rational(-L0 / L1);
    return L1.sign() * c;
}

/* sign(c0 + c1 t + c2 t^2) at t = root, via reduction mod the minimal polynomial. */
inline int sign_quadratic_at(const Rat& c0, const Rat& c1, const Rat& c2, const QuadRoot& t) {
    // t^2 = -(p t + q)
    return sign_linear_at(c0 - c2 * t.q, c1 - c2 * t.p, t);
}

namespace detail {

/* Certifies whether A + B t1 + C t2 + E t1 t2 == 0 given that a zero is
   algebraically possible; distinguishes t2 from its conjugate by intervals. */
inline bool bilinear_zero_certificate(const Rat& A, const Rat& B, const Rat& C, const Rat& E,
                                      const QuadRoot& t1, const QuadRoot& t2) {
    if (C.is_zero() && E.is_zero()) return A.is_zero() && B.is_zero();
    // Value is (C + E t1) (t2 - x) with x = -(A + B t1)/(C + E t1).
    // x is a root of t2's minimal polynomial iff N(t1) == 0 where
    // N = (A+Bt1)^2 - p2 (A+Bt1)(C+Et1) + q2 (C+Et1)^2, reduced mod m1.
    Rat a0 = A * A - t2.p * A * C + t2.q * C * C;
    Rat a1 = Rat(2) * A * B - t2.p * (A * E + B * C) + Rat(2) * t2.q * C * E;
    Rat a2 = B * B - t2.p * B * E + t2.q * E * E;
    // reduce a2 t^2 via t^2 = -(p1 t + q1)
    Rat r0 = a0 - a2 * t1.q;
    Rat r1 = a1 - a2 * t1.p;
    if (!(r0.is_zero() && r1.is_zero())) return false;  // x not a root of m2 at all
    // x equals t2 or its conjugate; separate by intervals (the two roots are distinct).
    QuadRoot other{t2.p, t2.q, -t2.side};
    for (int steps = 32; steps <= 4096; steps *= 2) {
        RatInterval i1 = t1.approx(steps);
        RatInterval den = C + E * i1;
        if (den.contains_zero()) continue;
        RatInterval num = -(A + B * i1);
        // x interval = num / den
        Rat cands[4] = {num.lo / den.lo, num.lo / den.hi, num.hi / den.lo, num.hi / den.hi};
        RatInterval x{cands[0], cands[0]};
        for (int i = 1; i < 4; ++i) {
            if (cands[i] < x.lo) x.lo = cands[i];
            if (cands[i] > x.hi) x.hi = cands[i];
        }
        RatInterval w2 = t2.approx(steps), wo = other.approx(steps);
        bool meets_t2 = !(x.hi < w2.lo || w2.hi < x.lo);
        bool meets_other = !(x.hi < wo.lo || wo.hi < x.lo);
        if (meets_t2 && !meets_other) return true;
        if (!meets_t2 && meets_other) return false;
    }
    throw ArrangementError("bilinear zero certificate: refinement exhausted");
}

}  // namespace detail

/* sign(A + B t1 + C t2 + E t1 t2) for roots of two different quadratics.
   Interval refinement with an algebraic zero certificate as fallback. */
inline int sign_bilinear_at(const Rat& A, const Rat& B, const Rat& C, const Rat& E,
                            const QuadRoot& t1, const QuadRoot& t2) {
    for (int steps = 24; steps <= 3072; steps *= 2) {
        RatInterval i1 = t1.approx(steps), i2 = t2.approx(steps);
        RatInterval val = A + (B * i1) + (C * i2) + (E * (i1 * i2));
        int s = val.sign();
        if (s != 0) return s;
        if (steps >= 192 && detail::bilinear_zero_certificate(A, B, C, E, t1, t2)) return 0;
    }
    if (detail::bilinear_zero_certificate(A, B, C, E, t1, t2)) return 0;
    throw ArrangementError("bilinear sign: refinement exhausted");
}

}  // namespace opspec
