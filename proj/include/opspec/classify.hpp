#pragma once

#include "opspec/operator_expr.hpp"

namespace opspec {

/* The spectra named in the source material: σ, σ_l, σ_r, σ_SF+, σ_SF-,
   σ_e, σ_p, σ_d, σ_FLI, σ_FRI. */
enum class SpectrumKind { Spec, Left, Right, USF, LSF, Essential, Point, Defect, FLI, FRI };

/* Which deficiency enters a comparison: the algebraic codimension (∞ off
   closed ranges) or dim R^⊥. Theorems are evaluated with Algebraic. */
enum class BetaConvention { Algebraic, Closure };

/* True iff λ is in the RESOLVENT set of the given kind (the good class). */
bool classify(const PointData& p, SpectrumKind kind);
bool classify(const OperatorExpr& expr, const QPoint& lambda, SpectrumKind kind);
inline bool classify(const OperatorExpr& expr, const GQ& lambda, SpectrumKind kind) {
    return classify(expr, QPoint::rational(lambda), kind);
}

enum class SClassSign { Plus, Minus };

/* Decides ∀λ: α(T-λ) >= β(T-λ) (Plus) resp. <= (Minus) whenever at least one
   side is finite, by sweeping every cell of the boundary arrangement. */
bool s_class_membership(const OperatorExpr& expr, SClassSign sign, BetaConvention conv);

enum class ResolventWhich { Thm21, Thm22, Prop23 };

/* The three-part completion conditions, evaluated exactly at λ. */
bool resolvent_condition(const OperatorExpr& a, const OperatorExpr& b, const QPoint& lambda,
                         ResolventWhich which);
inline bool resolvent_condition(const OperatorExpr& a, const OperatorExpr& b, const GQ& lambda,
                                ResolventWhich which) {
    return resolvent_condition(a, b, QPoint::rational(lambda), which);
}

const char* spectrum_kind_name(SpectrumKind kind);

}  // namespace opspec
