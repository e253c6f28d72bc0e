#pragma once

#include "opspec/region.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace opspec {

/* Exact cell decomposition of the plane induced by a set of circle and
   point predicates: 2-dimensional faces, open circular arcs, vertex points
   (circle intersections, tangencies, on-circle points), whole circles
   without vertices ("loops"), and isolated predicate points.

   Every cell carries one exactly-evaluable sample (rational for faces,
   quadratic for arcs and vertices) and the sign of every predicate, so any
   RegionExpr over the same predicates is constant on the cell and its value
   there is computed exactly at the sample. */
struct CellDecomp {
    enum class CellKind { Face, Arc, Loop, Vertex, IsolatedPoint };

    struct Cell {
        CellKind kind = CellKind::Face;
        QPoint sample;
        std::vector<std::int8_t> circle_sign;  // one entry per circle predicate
        std::vector<std::int8_t> point_eq;     // one entry per point predicate
        int circle = -1;                       // Arc/Loop: owning circle index
        bool unbounded = false;                // Face only
    };

    std::vector<Predicate> preds;   // deduplicated input predicates
    std::vector<int> circle_preds;  // indices into preds
    std::vector<int> point_preds;
    std::vector<Cell> cells;
    std::vector<std::vector<int>> adj;  // incidence graph between cells
    int unbounded_face = -1;

    std::size_t face_count() const;
    std::vector<char> labels(const RegionExpr& r) const;
};

/* Throws ArrangementError on refusal (never yields an uncertified label)
   and std::invalid_argument for malformed predicates or more than 32 of
   them. */
CellDecomp build_cells(const std::vector<Predicate>& preds);
CellDecomp build_cells(const std::vector<RegionExpr>& regions);

/* OR of exact per-cell formulas for the cells labeled true, verified
   against every cell of the decomposition; refuses when the labeled set is
   not expressible over these predicates. */
RegionExpr region_from_labels(const CellDecomp& cd, const std::vector<char>& in_cell);

/* Region defined by an exact pointwise membership test that is constant on
   sign classes of the given predicates. */
RegionExpr region_from_fn(const std::vector<Predicate>& preds,
                          const std::function<bool(const QPoint&)>& member_fn);

bool region_equals(const RegionExpr& a, const RegionExpr& b);
bool region_is_empty(const RegionExpr& r);
bool region_subset(const RegionExpr& a, const RegionExpr& b);

/* Connected components of r, as verified regions (topological connectivity
   via the cell incidence graph). */
std::vector<RegionExpr> region_components(const RegionExpr& r);
/* Union of the bounded connected components of the complement. */
RegionExpr region_holes(const RegionExpr& r);
/* Polynomially convex hull: r with its holes filled. Errors on unbounded r. */
RegionExpr region_eta(const RegionExpr& r);
bool interior_is_empty(const RegionExpr& r);

}  // namespace opspec
