#include "opspec/classify.hpp"

#include "opspec/arrangement.hpp"

namespace opspec {

bool classify(const PointData& p, SpectrumKind kind) {
    const ExtNat zero = ExtNat::fin(0);
    switch (kind) {
        case SpectrumKind::Left: return p.alpha == zero && p.closed;
        case SpectrumKind::Right: return p.beta_alg() == zero;
        case SpectrumKind::USF: return p.alpha.is_fin() && p.closed;
        case SpectrumKind::LSF: return p.beta_alg().is_fin();
        case SpectrumKind::Essential: return p.alpha.is_fin() && p.closed && p.beta_alg().is_fin();
        case SpectrumKind::Point: return p.alpha == zero;
        case SpectrumKind::Defect: return p.beta_alg() == zero;
        case SpectrumKind::FLI: return p.alpha == zero && p.beta_alg().is_fin();
        case SpectrumKind::FRI: return p.beta_alg() == zero && p.alpha.is_fin();
        case SpectrumKind::Spec: return p.alpha == zero && p.beta_alg() == zero;
    }
    return false;
}

bool classify(const OperatorExpr& expr, const QPoint& lambda, SpectrumKind kind) {
    return classify(point_data(expr, lambda), kind);
}

bool s_class_membership(const OperatorExpr& expr, SClassSign sign, BetaConvention conv) {
    CellDecomp cd = build_cells(boundary_predicates(expr));
    for (const auto& cell : cd.cells) {
        PointData p = point_data(expr, cell.sample);
        ExtNat beta = conv == BetaConvention::Algebraic ? p.beta_alg() : p.betaBar;
        if (p.alpha.is_inf() && beta.is_inf()) continue;  // neither side finite
        if (sign == SClassSign::Plus ? (p.alpha < beta) : (p.alpha > beta)) return false;
    }
    return true;
}

bool resolvent_condition(const OperatorExpr& a, const OperatorExpr& b, const QPoint& lambda,
                         ResolventWhich which) {
    PointData pa = point_data(a, lambda), pb = point_data(b, lambda);
    ExtNat alphaB = pb.alpha, betaA = pa.beta_alg();
    switch (which) {
        case ResolventWhich::Thm21:
            return classify(pa, SpectrumKind::Left) && classify(pb, SpectrumKind::LSF) &&
                   ((alphaB <= betaA && betaA.is_fin()) || (alphaB.is_inf() && betaA.is_inf()));
        case ResolventWhich::Thm22: {
            ExtNat betaAalg = pa.beta_alg(), alphaBv = pb.alpha;
            return classify(pb, SpectrumKind::Right) && classify(pa, SpectrumKind::USF) &&
                   ((betaAalg <= alphaBv && alphaBv.is_fin()) ||
                    (alphaBv.is_inf() && betaAalg.is_inf()));
        }
        case ResolventWhich::Prop23:
            return classify(pa, SpectrumKind::Left) && classify(pb, SpectrumKind::Right) &&
                   pb.alpha == pa.beta_alg();
    }
    return false;
}

const char* spectrum_kind_name(SpectrumKind kind) {
    switch (kind) {
        case SpectrumKind::Spec: return "spec";
        case SpectrumKind::Left: return "left";
        case SpectrumKind::Right: return "right";
        case SpectrumKind::USF: return "usf";
        case SpectrumKind::LSF: return "lsf";
        case SpectrumKind::Essential: return "essential";
        case SpectrumKind::Point: return "point";
        case SpectrumKind::Defect: return "defect";
        case SpectrumKind::FLI: return "fli";
        case SpectrumKind::FRI: return "fri";
    }
    return "?";
}

}  // namespace opspec
