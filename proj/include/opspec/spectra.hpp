#pragma once

#include "opspec/arrangement.hpp"
#include "opspec/classify.hpp"

namespace opspec {

/* Exact spectrum of the given kind as a plane region, built by labeling the
   cells of the boundary arrangement with one classification per cell. */
RegionExpr spectrum_region(const OperatorExpr& expr, SpectrumKind kind);

/* η(σ(T)) = η(σ_FLI(T)) = η(σ_FRI(T)), checked as exact region equalities. */
bool eta_spectrum_equality(const OperatorExpr& expr);

}  // namespace opspec
