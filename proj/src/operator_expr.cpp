#include "opspec/operator_expr.hpp"

#include <algorithm>
#include <stdexcept>

namespace opspec {

void validate(const OperatorExpr& expr) {
    if (expr.atoms.empty()) throw std::invalid_argument("operator expression has no atoms");
    bool infinite_dim = false;
    for (const Atom& at : expr.atoms) {
        if (at.mult.is_fin() && at.mult.value() == 0)
            throw std::invalid_argument("atom multiplicity must be >= 1");
        if (at.is_shift()) {
            if (at.b.is_zero()) throw std::invalid_argument("shift atom requires b != 0");
            if (!at.values.empty()) throw std::invalid_argument("shift atom carries no eigenvalue list");
            infinite_dim = true;
        } else {
            if (at.values.empty()) throw std::invalid_argument("diag atom requires at least one eigenvalue");
            for (std::size_t i = 0; i < at.values.size(); ++i) {
                if (at.values[i].second.is_fin() && at.values[i].second.value() == 0)
                    throw std::invalid_argument("diag eigenvalue multiplicity must be >= 1");
                if (at.values[i].second.is_inf() || at.mult.is_inf()) infinite_dim = true;
                for (std::size_t j = i + 1; j < at.values.size(); ++j)
                    if (at.values[i].first == at.values[j].first)
                        throw std::invalid_argument("diag eigenvalues must be pairwise distinct");
            }
        }
        if (at.mult.is_inf()) infinite_dim = true;
    }
    if (!infinite_dim)
        throw std::invalid_argument("expression spans a finite-dimensional space");
}

static Atom atom_adjoint(Atom at) {
    switch (at.kind) {
        case AtomKind::UShift:
            at.kind = AtomKind::UShiftAdj;
            at.a = conj(at.a);
            at.b = conj(at.b);
            break;
        case AtomKind::UShiftAdj:
            at.kind = AtomKind::UShift;
            at.a = conj(at.a);
            at.b = conj(at.b);
            break;
        case AtomKind::BShift:
            // U* is unitarily the bilateral shift again (relabel e_n -> e_-n)
            at.a = conj(at.a);
            at.b = conj(at.b);
            break;
        case AtomKind::Diag:
            for (auto& v : at.values) v.first = conj(v.first);
            break;
    }
    return at;
}

OperatorExpr normalize(OperatorExpr expr) {
    if (expr.adjoint_pending) {
        for (Atom& at : expr.atoms) at = atom_adjoint(std::move(at));
        expr.adjoint_pending = false;
    }
    return expr;
}

OperatorExpr adjoint(OperatorExpr expr) {
    expr = normalize(std::move(expr));
    expr.adjoint_pending = true;
    return normalize(std::move(expr));
}

OperatorExpr direct_sum(const OperatorExpr& a, const OperatorExpr& b) {
    OperatorExpr na = normalize(a), nb = normalize(b);
    OperatorExpr out = na;
    out.atoms.insert(out.atoms.end(), nb.atoms.begin(), nb.atoms.end());
    return out;
}

bool expr_equal(const OperatorExpr& a0, const OperatorExpr& b0) {
    OperatorExpr a = normalize(a0), b = normalize(b0);
    if (a.atoms.size() != b.atoms.size()) return false;
    for (std::size_t i = 0; i < a.atoms.size(); ++i) {
        const Atom &x = a.atoms[i], &y = b.atoms[i];
        if (x.kind != y.kind || x.mult != y.mult) return false;
        if (x.is_shift()) {
            if (x.a != y.a || x.b != y.b) return false;
        } else {
            if (x.values != y.values) return false;
        }
    }
    return true;
}

/* Unit-model data of the three shift kinds at parameter mu, by |mu| vs 1:
     S:  inside (0,1,closed); on circle (0,0,open); outside invertible
     S*: mirror of S with alpha/betaBar swapped
     U:  invertible off the circle; (0,0,open) on it                      */
PointData atom_point_data(const Atom& atom, const QPoint& lambda) {
    if (atom.kind == AtomKind::Diag) {
        for (std::size_t i = 0; i < atom.values.size(); ++i) {
            if (lambda.equals_gq(atom.values[i].first)) {
                ExtNat m = atom.values[i].second;
                return {m, m, true};
            }
        }
        return {ExtNat::fin(0), ExtNat::fin(0), true};
    }
    // T - λ = b (K - mu), mu = (λ - a)/b; |mu| vs 1 is |λ - a|^2 vs |b|^2
    int s = lambda.circle_sign(atom.a, abs2(atom.b));
    switch (atom.kind) {
        case AtomKind::UShift:
            if (s < 0) return {ExtNat::fin(0), ExtNat::fin(1), true};
            if (s == 0) return {ExtNat::fin(0), ExtNat::fin(0), false};
            return {ExtNat::fin(0), ExtNat::fin(0), true};
        case AtomKind::UShiftAdj:
            if (s < 0) return {ExtNat::fin(1), ExtNat::fin(0), true};
            if (s == 0) return {ExtNat::fin(0), ExtNat::fin(0), false};
            return {ExtNat::fin(0), ExtNat::fin(0), true};
        default:  // BShift
            if (s == 0) return {ExtNat::fin(0), ExtNat::fin(0), false};
            return {ExtNat::fin(0), ExtNat::fin(0), true};
    }
}

PointData point_data(const OperatorExpr& expr0, const QPoint& lambda) {
    OperatorExpr expr = normalize(expr0);
    validate(expr);
    ExtNat alpha = ExtNat::fin(0), betaBar = ExtNat::fin(0);
    bool closed = true;
    // Finitely many distinct atoms: the direct sum has closed range iff every
    // atom does, and dimensions add with multiplicity.
    for (const Atom& at : expr.atoms) {
        PointData p = atom_point_data(at, lambda);
        alpha = extnat_add(alpha, extnat_scale(at.mult, p.alpha));
        betaBar = extnat_add(betaBar, extnat_scale(at.mult, p.betaBar));
        closed = closed && p.closed;
    }
    return {alpha, betaBar, closed};
}

ExtInt fredholm_index(const OperatorExpr& expr, const GQ& lambda) {
    PointData p = point_data(expr, lambda);
    return extint_sub(p.alpha, p.beta_alg());
}

std::vector<Predicate> boundary_predicates(const OperatorExpr& expr0) {
    OperatorExpr expr = normalize(expr0);
    std::vector<Predicate> preds;
    auto push = [&preds](Predicate p) {
        if (std::find(preds.begin(), preds.end(), p) == preds.end()) preds.push_back(std::move(p));
    };
    for (const Atom& at : expr.atoms) {
        if (at.is_shift())
            push(Predicate::circle(at.a, abs2(at.b)));
        else
            for (const auto& v : at.values) push(Predicate::point(v.first));
    }
    return preds;
}

namespace {

/* Per-copy kernel vectors of (atom - λ); ExtNat dimension plus a lazily
   indexable description. For shifts this is at most one geometric vector. */
struct CopyKernel {
    ExtNat dim = ExtNat::fin(0);
    bool geometric = false;
    GQ mu;
    // diag: list of (value_index, eigenspace dim)
    std::vector<std::pair<std::uint64_t, ExtNat>> diag_blocks;
};

CopyKernel copy_kernel(const Atom& at, const GQ& lambda) {
    CopyKernel k;
    if (at.kind == AtomKind::Diag) {
        for (std::size_t i = 0; i < at.values.size(); ++i) {
            if (at.values[i].first == lambda) {
                k.diag_blocks.push_back({i, at.values[i].second});
                k.dim = extnat_add(k.dim, at.values[i].second);
            }
        }
        return k;
    }
    if (at.kind == AtomKind::UShiftAdj) {
        GQ mu = (lambda - at.a) / at.b;
        if (abs2(mu) < Rat(1)) {
            k.dim = ExtNat::fin(1);
            k.geometric = true;
            k.mu = mu;
        }
    }
    return k;
}

/* Address of the j-th kernel vector within one copy. */
BasisAddress copy_vector(const CopyKernel& k, std::uint64_t atom, std::uint64_t copy, std::uint64_t j) {
    BasisAddress a;
    a.atom = atom;
    a.copy = copy;
    if (k.geometric) {
        a.vec = BasisAddress::VecKind::Geometric;
        a.mu = k.mu;
        return a;
    }
    a.vec = BasisAddress::VecKind::DiagCoord;
    for (const auto& blk : k.diag_blocks) {
        if (blk.second.is_inf() || j < blk.second.value()) {
            a.value_index = blk.first;
            a.coord_index = j;
            return a;
        }
        j -= blk.second.value();
    }
    throw std::logic_error("copy_vector: index out of range");
}

}  // namespace

BasisStream kernel_basis(const OperatorExpr& expr0, const GQ& lambda, std::size_t limit) {
    OperatorExpr expr = normalize(expr0);
    validate(expr);
    PointData pd = point_data(expr, lambda);
    if (!pd.closed)
        throw std::invalid_argument(
            "kernel_basis: range of expr - lambda is not closed at this point");
    BasisStream out;
    out.dim = pd.alpha;

    std::vector<CopyKernel> kernels;
    kernels.reserve(expr.atoms.size());
    for (const Atom& at : expr.atoms) kernels.push_back(copy_kernel(at, lambda));

    /* Diagonal enumeration over (atom, copy, vector index): level L visits all
       triples with atom + copy + j = L, so every copy of every atom is reached
       even when copies or eigenspaces are infinite. */
    std::uint64_t want = limit;
    if (out.dim.is_fin() && out.dim.value() < want) want = out.dim.value();
    // want <= dim, so the levels below are guaranteed to produce enough vectors
    for (std::uint64_t level = 0; out.prefix.size() < want; ++level) {
        if (level > 1000000) throw std::logic_error("kernel_basis: enumeration stalled");
        for (std::uint64_t ai = 0; ai <= level && ai < expr.atoms.size(); ++ai) {
            const Atom& at = expr.atoms[ai];
            const CopyKernel& k = kernels[ai];
            if (k.dim.is_zero()) continue;
            for (std::uint64_t copy = 0; copy + ai <= level; ++copy) {
                if (at.mult.is_fin() && copy >= at.mult.value()) break;
                std::uint64_t j = level - ai - copy;
                if (k.dim.is_fin() && j >= k.dim.value()) continue;
                out.prefix.push_back(copy_vector(k, ai, copy, j));
                if (out.prefix.size() >= want) return out;
            }
        }
    }
    return out;
}

BasisStream cokernel_basis(const OperatorExpr& expr, const GQ& lambda, std::size_t limit) {
    return kernel_basis(adjoint(expr), conj(lambda), limit);
}

}  // namespace opspec
