#pragma once

#include "opspec/extnat.hpp"
#include "opspec/gq.hpp"
#include "opspec/qpoint.hpp"

#include <cstdint>
#include <vector>

namespace opspec {

enum class AtomKind { UShift, UShiftAdj, BShift, Diag };

/* One exactly-analyzable building block: an affine shift a + b*K (K the
   unilateral shift S, its adjoint S*, or the bilateral shift U), or a
   diagonal operator with finitely many distinct eigenvalues. `mult` copies
   are summed orthogonally. */
struct Atom {
    AtomKind kind = AtomKind::UShift;
    GQ a;                                       // affine offset (shift kinds)
    GQ b = GQ(Rat(1));                          // affine scale, nonzero (shift kinds)
    std::vector<std::pair<GQ, ExtNat>> values;  // Diag only: distinct eigenvalues
    ExtNat mult = ExtNat::fin(1);

    bool is_shift() const { return kind != AtomKind::Diag; }
};

/* Finite orthogonal direct sum of atoms on an infinite-dimensional
   separable Hilbert space. Immutable by convention. */
struct OperatorExpr {
    std::vector<Atom> atoms;
    bool adjoint_pending = false;
};

/* Exact pointwise Fredholm data of T - λ. betaBar is dim R(T-λ)^⊥; the
   algebraic deficiency is betaBar when the range is closed and ∞ otherwise,
   so "betaAlg finite => closed" holds by construction. */
struct PointData {
    ExtNat alpha;
    ExtNat betaBar;
    bool closed = true;

    ExtNat beta_alg() const { return closed ? betaBar : ExtNat::infinity(); }

    friend bool operator==(const PointData& x, const PointData& y) {
        return x.alpha == y.alpha && x.betaBar == y.betaBar && x.closed == y.closed;
    }
};

/* Address of one orthonormal basis vector of a kernel or range complement,
   inside the direct-sum layout of an expression. */
struct BasisAddress {
    std::uint64_t atom = 0;
    std::uint64_t copy = 0;
    enum class VecKind { Geometric, DiagCoord } vec = VecKind::Geometric;
    GQ mu;                        // Geometric: normalized (1, mu, mu^2, ...)
    std::uint64_t value_index = 0;  // DiagCoord: which eigenvalue
    std::uint64_t coord_index = 0;  // DiagCoord: index inside the eigenspace

    friend bool operator==(const BasisAddress& x, const BasisAddress& y) {
        if (x.atom != y.atom || x.copy != y.copy || x.vec != y.vec) return false;
        if (x.vec == VecKind::Geometric) return x.mu == y.mu;
        return x.value_index == y.value_index && x.coord_index == y.coord_index;
    }
};

struct BasisStream {
    ExtNat dim;                          // total length (∞ = unbounded stream)
    std::vector<BasisAddress> prefix;    // first min(limit, dim) addresses
};

struct Predicate {
    enum class Kind { Circle, Point };
    Kind kind = Kind::Circle;
    GQ c;    // circle center, or the point itself
    Rat r2;  // circle squared radius, > 0

    static Predicate circle(GQ center, Rat r2) { return {Kind::Circle, std::move(center), std::move(r2)}; }
    static Predicate point(GQ p) { return {Kind::Point, std::move(p), Rat(0)}; }

    friend bool operator==(const Predicate& a, const Predicate& b) {
        return a.kind == b.kind && a.c == b.c && (a.kind == Kind::Point || a.r2 == b.r2);
    }
};

void validate(const OperatorExpr& expr);  // throws std::invalid_argument

OperatorExpr normalize(OperatorExpr expr);
OperatorExpr adjoint(OperatorExpr expr);
OperatorExpr direct_sum(const OperatorExpr& a, const OperatorExpr& b);

/* Data of (atom - λ) for a single copy; multiplicity is applied by point_data. */
PointData atom_point_data(const Atom& atom, const QPoint& lambda);
inline PointData atom_point_data(const Atom& atom, const GQ& lambda) {
    return atom_point_data(atom, QPoint::rational(lambda));
}

PointData point_data(const OperatorExpr& expr, const QPoint& lambda);
inline PointData point_data(const OperatorExpr& expr, const GQ& lambda) {
    return point_data(expr, QPoint::rational(lambda));
}

ExtInt fredholm_index(const OperatorExpr& expr, const GQ& lambda);

/* Circles/points off which point_data is locally constant. Deduplicated. */
std::vector<Predicate> boundary_predicates(const OperatorExpr& expr);

/* Orthonormal basis address streams for N(expr-λ) and R(expr-λ)^⊥, in the
   canonical diagonal enumeration. Rejects λ where the range is not closed. */
BasisStream kernel_basis(const OperatorExpr& expr, const GQ& lambda, std::size_t limit);
BasisStream cokernel_basis(const OperatorExpr& expr, const GQ& lambda, std::size_t limit);

bool expr_equal(const OperatorExpr& a, const OperatorExpr& b);

}  // namespace opspec
