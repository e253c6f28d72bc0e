#include "opspec/oracle.hpp"

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <algorithm>
#include <stdexcept>

namespace opspec {

namespace {

using Cx = std::complex<double>;

Cx to_cx(const GQ& z) { return {z.re.to_double(), z.im.to_double()}; }

/* Per-copy/per-value materialized layout of one expression. */
struct Layout {
    struct Seg {
        int atom;
        int copy;
        int offset;
        int dim;
        bool shift;                   // edge window applies
        std::vector<int> value_off;   // Diag: offset of each eigenvalue block
        std::vector<int> value_dim;
    };
    std::vector<Seg> segs;
    int dim = 0;
    bool capped = false;  // some infinite multiplicity was cut to the cap

    const Seg& find(int atom, int copy) const {
        for (const Seg& s : segs)
            if (s.atom == atom && s.copy == copy) return s;
        throw std::invalid_argument("oracle: basis address outside the truncation window");
    }
};

Layout make_layout(const OperatorExpr& expr, int n, const TruncationConfig& cfg) {
    Layout L;
    for (int ai = 0; ai < static_cast<int>(expr.atoms.size()); ++ai) {
        const Atom& at = expr.atoms[ai];
        int copies = cfg.copies(at.mult, n);
        if (at.mult.is_inf()) L.capped = true;
        for (int c = 0; c < copies; ++c) {
            Layout::Seg s;
            s.atom = ai;
            s.copy = c;
            s.offset = L.dim;
            s.shift = at.is_shift();
            if (at.is_shift()) {
                s.dim = n;
            } else {
                s.dim = 0;
                for (const auto& v : at.values) {
                    int m = cfg.copies(v.second, n);
                    if (v.second.is_inf()) L.capped = true;
                    s.value_off.push_back(s.dim);
                    s.value_dim.push_back(m);
                    s.dim += m;
                }
            }
            L.dim += s.dim;
            if (L.dim > cfg.max_total_dim)
                throw std::length_error("oracle: truncation exceeds the configured maximum size");
            L.segs.push_back(std::move(s));
        }
    }
    return L;
}

/* Position of integer k in the bilateral enumeration 0, 1, -1, 2, -2, ... */
int bilateral_pos(int k) { return k == 0 ? 0 : (k > 0 ? 2 * k - 1 : -2 * k); }

void fill_copy(DenseMatrix& M, const Layout::Seg& s, const Atom& at, int n) {
    int o = s.offset;
    Cx a = to_cx(at.a), b = to_cx(at.b);
    switch (at.kind) {
        case AtomKind::UShift:
            for (int i = 0; i < n; ++i) M(o + i, o + i) += a;
            for (int i = 0; i + 1 < n; ++i) M(o + i + 1, o + i) += b;
            break;
        case AtomKind::UShiftAdj:
            for (int i = 0; i < n; ++i) M(o + i, o + i) += a;
            for (int i = 0; i + 1 < n; ++i) M(o + i, o + i + 1) += b;
            break;
        case AtomKind::BShift: {
            for (int i = 0; i < n; ++i) M(o + i, o + i) += a;
            for (int k = -(n + 1); k <= n + 1; ++k) {
                int p = bilateral_pos(k), q = bilateral_pos(k + 1);
                if (p < n && q < n) M(o + q, o + p) += b;
            }
            break;
        }
        case AtomKind::Diag: {
            for (std::size_t vi = 0; vi < at.values.size(); ++vi) {
                Cx val = to_cx(at.values[vi].first);
                for (int j = 0; j < s.value_dim[vi]; ++j)
                    M(o + s.value_off[vi] + j, o + s.value_off[vi] + j) += val;
            }
            break;
        }
    }
}

DenseMatrix truncate_expr(const OperatorExpr& expr0, int n, const TruncationConfig& cfg,
                          Layout* out_layout) {
    if (n < 2) throw std::invalid_argument("oracle: truncation size must be >= 2");
    OperatorExpr expr = normalize(expr0);
    validate(expr);
    Layout L = make_layout(expr, n, cfg);
    DenseMatrix M = DenseMatrix::Zero(L.dim, L.dim);
    for (const auto& s : L.segs) fill_copy(M, s, expr.atoms[s.atom], n);
    if (out_layout) *out_layout = std::move(L);
    return M;
}

/* Materialize the vector of one basis address inside a truncated layout;
   empty when the address falls outside the window (capped copies). */
std::optional<Eigen::VectorXcd> materialize(const BasisAddress& addr, const Layout& L, int n) {
    for (const Layout::Seg& s : L.segs) {
        if (s.atom != static_cast<int>(addr.atom) || s.copy != static_cast<int>(addr.copy))
            continue;
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(L.dim);
        if (addr.vec == BasisAddress::VecKind::Geometric) {
            Cx mu = to_cx(addr.mu);
            double norm = std::sqrt(1.0 - std::norm(mu));  // true l2 normalization
            Cx p(1.0, 0.0);
            for (int j = 0; j < s.dim; ++j) {
                v[s.offset + j] = norm * p;
                p *= mu;
            }
        } else {
            int vi = static_cast<int>(addr.value_index);
            if (vi >= static_cast<int>(s.value_dim.size())) return std::nullopt;
            if (static_cast<int>(addr.coord_index) >= s.value_dim[vi]) return std::nullopt;
            v[s.offset + s.value_off[vi] + static_cast<int>(addr.coord_index)] = 1.0;
        }
        return v;
    }
    return std::nullopt;  // copy beyond the cap
}

DenseMatrix corner_matrix(const OperatorExpr& a, const OperatorExpr& b,
                          const CompletionCertificate& cert, const Layout& La, const Layout& Lb,
                          int n) {
    DenseMatrix C = DenseMatrix::Zero(La.dim, Lb.dim);
    std::vector<std::pair<BasisAddress, BasisAddress>> pairs = cert.pairs;
    if (cert.kase == CompletionCertificate::Case::Infinite) {
        std::size_t limit = static_cast<std::size_t>(La.dim + Lb.dim);
        BasisStream kb = kernel_basis(b, cert.at_lambda, limit);
        BasisStream ca = cokernel_basis(a, cert.at_lambda, limit);
        std::size_t m = std::min(kb.prefix.size(), ca.prefix.size());
        for (std::size_t i = 0; i < m; ++i) pairs.push_back({kb.prefix[i], ca.prefix[i]});
    }
    for (const auto& [kb_addr, ca_addr] : pairs) {
        auto vb = materialize(kb_addr, Lb, n);
        auto ua = materialize(ca_addr, La, n);
        if (!vb || !ua) continue;  // outside the window
        C += (*ua) * vb->adjoint();
    }
    return C;
}

struct SvdOut {
    std::vector<double> sigma;
    DenseMatrix U, V;  // columns
};

SvdOut svd_full(const DenseMatrix& M) {
    int m = static_cast<int>(M.rows()), n = static_cast<int>(M.cols());
    int k = std::min(m, n);
    DenseMatrix A = M;
    SvdOut out;
    out.sigma.resize(k);
    out.U.resize(m, k);
    DenseMatrix VT(k, n);
    int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'S', m, n, A.data(), m, out.sigma.data(),
                              out.U.data(), m, VT.data(), k);
    if (info != 0) throw std::runtime_error("oracle: zgesdd failed");
    out.V = VT.adjoint();
    return out;
}

}  // namespace

DenseMatrix truncate(const OperatorExpr& expr, int n, const TruncationConfig& cfg) {
    return truncate_expr(expr, n, cfg, nullptr);
}

DenseMatrix truncate(const BlockMatrixExpr& m, int n, const TruncationConfig& cfg) {
    OperatorExpr a = normalize(m.a), b = normalize(m.b);
    Layout La, Lb;
    DenseMatrix A = truncate_expr(a, n, cfg, &La);
    DenseMatrix B = truncate_expr(b, n, cfg, &Lb);
    if (La.dim + Lb.dim > cfg.max_total_dim)
        throw std::length_error("oracle: truncation exceeds the configured maximum size");
    DenseMatrix M = DenseMatrix::Zero(La.dim + Lb.dim, La.dim + Lb.dim);
    M.topLeftCorner(La.dim, La.dim) = A;
    M.bottomRightCorner(Lb.dim, Lb.dim) = B;
    if (!corner_is_zero(m.c))
        M.topRightCorner(La.dim, Lb.dim) =
            corner_matrix(a, b, std::get<CompletionCertificate>(m.c), La, Lb, n);
    return M;
}

std::vector<double> singular_values(const DenseMatrix& M) {
    int m = static_cast<int>(M.rows()), n = static_cast<int>(M.cols());
    int k = std::min(m, n);
    if (k == 0) return {};
    DenseMatrix A = M;
    std::vector<double> s(k);
    int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n, A.data(), m, s.data(), nullptr, 1,
                              nullptr, 1);
    if (info != 0) throw std::runtime_error("oracle: zgesdd failed");
    return s;
}

namespace {

/* Edge coordinate mask: last ceil(n/8) coordinates of each shift copy. */
std::vector<char> edge_mask(const Layout& L, int n) {
    std::vector<char> mask(L.dim, 0);
    int w = (n + 7) / 8;
    for (const auto& s : L.segs) {
        if (!s.shift) continue;
        for (int j = std::max(0, s.dim - w); j < s.dim; ++j) mask[s.offset + j] = 1;
    }
    return mask;
}

double edge_mass(const Eigen::VectorXcd& v, const std::vector<char>& mask) {
    double num = 0, den = 0;
    for (int i = 0; i < v.size(); ++i) {
        double a = std::norm(v[i]);
        den += a;
        if (mask[i]) num += a;
    }
    return den == 0 ? 1.0 : num / den;
}

NumericPointData estimate_impl(const std::function<DenseMatrix(int, Layout&, Layout*)>& build,
                               const std::vector<int>& sizes, double tol, bool any_inf_mult,
                               const TruncationConfig& cfg) {
    if (sizes.size() < 2) throw std::invalid_argument("oracle: need at least two sizes");
    for (std::size_t i = 1; i < sizes.size(); ++i)
        if (sizes[i] <= sizes[i - 1])
            throw std::invalid_argument("oracle: sizes must be strictly increasing");
    NumericPointData out;
    for (int n : sizes) {
        Layout La;  // primary layout (expr, or block A-part)
        Layout Lb;
        DenseMatrix M = build(n, La, &Lb);
        std::vector<char> mask;
        if (Lb.dim > 0) {
            mask = edge_mask(La, n);
            std::vector<char> mb = edge_mask(Lb, n);
            for (char c : mb) mask.push_back(c);
        } else {
            mask = edge_mask(La, n);
        }
        SvdOut sv = svd_full(M);
        NumericPointData::PerSize ps;
        ps.n = n;
        ps.dim = static_cast<int>(M.rows());
        ps.non_null_min = 0.0;
        for (int i = static_cast<int>(sv.sigma.size()) - 1; i >= 0; --i) {
            if (sv.sigma[i] < tol) {
                ps.small_sigma.push_back(sv.sigma[i]);
                double em_r = edge_mass(sv.V.col(i), mask);
                double em_l = edge_mass(sv.U.col(i), mask);
                ps.edge_mass_right.push_back(em_r);
                ps.edge_mass_left.push_back(em_l);
                if (em_r < 0.5) ++ps.alpha_n;
                if (em_l < 0.5) ++ps.beta_n;
            } else {
                ps.non_null_min = sv.sigma[i];
                break;
            }
        }
        out.per_size.push_back(std::move(ps));
    }
    const auto& last = out.per_size[out.per_size.size() - 1];
    const auto& prev = out.per_size[out.per_size.size() - 2];
    out.alpha_est = last.alpha_n;
    out.beta_est = last.beta_n;
    out.consistent = last.alpha_n == prev.alpha_n && last.beta_n == prev.beta_n;
    bool all_shrink = true, all_stable = true;
    for (std::size_t i = 1; i < out.per_size.size(); ++i) {
        double p = out.per_size[i - 1].non_null_min, c = out.per_size[i].non_null_min;
        if (p <= 0 || c <= 0) {
            all_shrink = all_stable = false;
            break;
        }
        double ratio = c / p;
        if (ratio > 0.55) all_shrink = false;
        if (ratio < 0.70) all_stable = false;
    }
    out.closed_evidence = all_stable   ? ClosedEvidence::StableGap
                          : all_shrink ? ClosedEvidence::ShrinkingGap
                                       : ClosedEvidence::Inconclusive;
    out.alpha_capped = any_inf_mult && out.alpha_est >= cfg.cap_per_atom;
    out.beta_capped = any_inf_mult && out.beta_est >= cfg.cap_per_atom;
    return out;
}

bool has_inf_mult(const OperatorExpr& e) {
    for (const Atom& at : e.atoms) {
        if (at.mult.is_inf()) return true;
        for (const auto& v : at.values)
            if (v.second.is_inf()) return true;
    }
    return false;
}

}  // namespace

NumericPointData estimate_point_data(const OperatorExpr& expr0, const GQ& lambda,
                                     const std::vector<int>& sizes, double tol,
                                     const TruncationConfig& cfg) {
    OperatorExpr expr = normalize(expr0);
    validate(expr);
    auto build = [&](int n, Layout& La, Layout*) {
        DenseMatrix M = truncate_expr(expr, n, cfg, &La);
        M -= to_cx(lambda) * DenseMatrix::Identity(La.dim, La.dim);
        return M;
    };
    return estimate_impl(build, sizes, tol, has_inf_mult(expr), cfg);
}

NumericPointData estimate_point_data(const BlockMatrixExpr& m, const GQ& lambda,
                                     const std::vector<int>& sizes, double tol,
                                     const TruncationConfig& cfg) {
    OperatorExpr a = normalize(m.a), b = normalize(m.b);
    auto build = [&](int n, Layout& La, Layout* Lb) {
        DenseMatrix A = truncate_expr(a, n, cfg, &La);
        DenseMatrix B = truncate_expr(b, n, cfg, Lb);
        int da = La.dim, db = Lb->dim;
        if (da + db > cfg.max_total_dim)
            throw std::length_error("oracle: truncation exceeds the configured maximum size");
        DenseMatrix M = DenseMatrix::Zero(da + db, da + db);
        M.topLeftCorner(da, da) = A;
        M.bottomRightCorner(db, db) = B;
        if (!corner_is_zero(m.c))
            M.topRightCorner(da, db) =
                corner_matrix(a, b, std::get<CompletionCertificate>(m.c), La, *Lb, n);
        M -= to_cx(lambda) * DenseMatrix::Identity(da + db, da + db);
        return M;
    };
    return estimate_impl(build, sizes, tol, has_inf_mult(a) || has_inf_mult(b), cfg);
}

Evidence oracle_resolvent_evidence(const NumericPointData& e, SpectrumKind kind) {
    if (!e.consistent) return Evidence::Unknown;
    bool stable = e.closed_evidence == ClosedEvidence::StableGap;
    bool shrinking = e.closed_evidence == ClosedEvidence::ShrinkingGap;
    bool gap_unknown = e.closed_evidence == ClosedEvidence::Inconclusive;
    auto tri = [&](bool good, bool bad) {
        if (bad) return Evidence::InSpectrum;
        if (good) return Evidence::InResolvent;
        return Evidence::Unknown;
    };
    switch (kind) {
        case SpectrumKind::Left:
            return tri(e.alpha_est == 0 && stable, e.alpha_est > 0 || shrinking);
        case SpectrumKind::Right:
            return tri(e.beta_est == 0 && stable, e.beta_est > 0 || shrinking);
        case SpectrumKind::USF:
            return tri(!e.alpha_capped && stable, e.alpha_capped || shrinking);
        case SpectrumKind::LSF:
            return tri(!e.beta_capped && stable, e.beta_capped || shrinking);
        case SpectrumKind::Essential:
            return tri(!e.alpha_capped && !e.beta_capped && stable,
                       e.alpha_capped || e.beta_capped || shrinking);
        case SpectrumKind::Point:
            return gap_unknown ? Evidence::Unknown : tri(e.alpha_est == 0, e.alpha_est > 0);
        case SpectrumKind::Defect:
            return tri(e.beta_est == 0 && stable, e.beta_est > 0 || shrinking);
        case SpectrumKind::FLI:
            return tri(e.alpha_est == 0 && !e.beta_capped && stable,
                       e.alpha_est > 0 || e.beta_capped || shrinking);
        case SpectrumKind::FRI:
            return tri(e.beta_est == 0 && !e.alpha_capped && stable,
                       e.beta_est > 0 || e.alpha_capped || shrinking);
        case SpectrumKind::Spec:
            return tri(e.alpha_est == 0 && e.beta_est == 0 && stable,
                       e.alpha_est > 0 || e.beta_est > 0 || shrinking);
    }
    return Evidence::Unknown;
}

double factorization_identity_check(const OperatorExpr& a0, const OperatorExpr& b0,
                                    const Corner& c, int n, const GQ& lambda,
                                    const TruncationConfig& cfg) {
    OperatorExpr a = normalize(a0), b = normalize(b0);
    Layout La, Lb;
    DenseMatrix A = truncate_expr(a, n, cfg, &La);
    DenseMatrix B = truncate_expr(b, n, cfg, &Lb);
    int da = La.dim, db = Lb.dim;
    Cx lam = to_cx(lambda);
    A -= lam * DenseMatrix::Identity(da, da);
    B -= lam * DenseMatrix::Identity(db, db);
    DenseMatrix C = DenseMatrix::Zero(da, db);
    if (!corner_is_zero(c))
        C = corner_matrix(a, b, std::get<CompletionCertificate>(c), La, Lb, n);

    DenseMatrix lhs = DenseMatrix::Zero(da + db, da + db);
    lhs.topLeftCorner(da, da) = A;
    lhs.topRightCorner(da, db) = C;
    lhs.bottomRightCorner(db, db) = B;

    DenseMatrix f1 = DenseMatrix::Identity(da + db, da + db);
    f1.bottomRightCorner(db, db) = B;
    DenseMatrix f2 = DenseMatrix::Identity(da + db, da + db);
    f2.topRightCorner(da, db) = C;
    DenseMatrix f3 = DenseMatrix::Identity(da + db, da + db);
    f3.topLeftCorner(da, da) = A;
    DenseMatrix rhs = f1 * f2 * f3;

    DenseMatrix diff = lhs - rhs;
    // restrict to interior coordinates (drop the edge window of every copy)
    std::vector<char> mask = edge_mask(La, n);
    std::vector<char> mb = edge_mask(Lb, n);
    mask.insert(mask.end(), mb.begin(), mb.end());
    std::vector<int> keep;
    for (int i = 0; i < da + db; ++i)
        if (!mask[i]) keep.push_back(i);
    DenseMatrix sub(keep.size(), keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (std::size_t j = 0; j < keep.size(); ++j) sub(i, j) = diff(keep[i], keep[j]);
    std::vector<double> s = singular_values(sub);
    return s.empty() ? 0.0 : s.front();
}

}  // namespace opspec
