#pragma once

#include "opspec/gq.hpp"
#include "opspec/sign_exact.hpp"

namespace opspec {

/* Evaluation point of the plane with coordinates u + sqrt(d) * v, u, v
   rational vectors, d >= 0 rational. Covers every sample the region engine
   produces: rational points (d = 0), points on circles with irrational
   radius, and circle-intersection vertices. Canonical form: d = 0 whenever
   the point is rational; a perfect-square d is folded away. */
struct QPoint {
    Rat ux, uy;  // rational part
    Rat vx, vy;  // radical part coefficients
    Rat d;       // radicand, >= 0

    QPoint() : d(0) {}
    QPoint(Rat x, Rat y) : ux(std::move(x)), uy(std::move(y)), d(0) {}

    static QPoint rational(const GQ& z) { return QPoint(z.re, z.im); }

    static QPoint make(Rat ux, Rat uy, Rat vx, Rat vy, Rat d) {
        QPoint p;
        p.ux = std::move(ux);
        p.uy = std::move(uy);
        p.vx = std::move(vx);
        p.vy = std::move(vy);
        p.d = std::move(d);
        p.canonicalize();
        return p;
    }

    void canonicalize() {
        if (d.sign() < 0) throw std::invalid_argument("QPoint: negative radicand");
        if (d.is_zero() || (vx.is_zero() && vy.is_zero())) {
            vx = vy = d = Rat(0);
            return;
        }
        if (d.is_perfect_square()) {
            Rat r = d.exact_sqrt();
            ux += r * vx;
            uy += r * vy;
            vx = vy = d = Rat(0);
        }
    }

    bool is_rational() const { return d.is_zero(); }
    GQ as_gq() const {
        if (!is_rational()) throw std::logic_error("QPoint: not rational");
        return {ux, uy};
    }

    /* sign(|this - c|^2 - r2), exact. */
    int circle_sign(const GQ& c, const Rat& r2) const {
        Rat ax = ux - c.re, ay = uy - c.im;
        Rat P = ax * ax + ay * ay + d * (vx * vx + vy * vy) - r2;
        Rat Q = Rat(2) * (ax * vx + ay * vy);
        return sign_pqs(P, Q, d);
    }

    bool equals_gq(const GQ& p) const {
        // canonical irrational points have at least one irrational coordinate
        if (!is_rational()) return false;
        return ux == p.re && uy == p.im;
    }

    RatInterval x_approx(int steps) const {
        RatInterval s = sqrt_interval(d, steps);
        return ux + (vx * s);
    }
    RatInterval y_approx(int steps) const {
        RatInterval s = sqrt_interval(d, steps);
        return uy + (vy * s);
    }
    double x_double() const { return x_approx(64).mid().to_double(); }
    double y_double() const { return y_approx(64).mid().to_double(); }
};

}  // namespace opspec
