#include "opspec/spectra.hpp"

namespace opspec {

RegionExpr spectrum_region(const OperatorExpr& expr0, SpectrumKind kind) {
    OperatorExpr expr = normalize(expr0);
    validate(expr);
    return region_from_fn(boundary_predicates(expr),
                          [&](const QPoint& z) { return !classify(expr, z, kind); });
}

bool eta_spectrum_equality(const OperatorExpr& expr) {
    RegionExpr hull = region_eta(spectrum_region(expr, SpectrumKind::Spec));
    return region_equals(hull, region_eta(spectrum_region(expr, SpectrumKind::FLI))) &&
           region_equals(hull, region_eta(spectrum_region(expr, SpectrumKind::FRI)));
}

}  // namespace opspec
