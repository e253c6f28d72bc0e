#pragma once

#include "opspec/operator_expr.hpp"
#include "opspec/qpoint.hpp"

#include <cstdint>
#include <vector>

namespace opspec {

/* Exact subset of the plane: a boolean formula over the atomic tests
   |λ-c|^2 < r2, |λ-c|^2 = r2 and λ = p, with Gaussian-rational data.
   Membership is decidable exactly at any rational (or quadratic) point. */
struct RegionExpr {
    struct Node {
        enum class Op { Const, Lt, Eq, AtPt, And, Or, Not };
        Op op = Op::Const;
        std::int32_t a = -1, b = -1;  // children
        std::int32_t pred = -1;       // Lt/Eq/AtPt
        bool cval = false;            // Const
    };

    std::vector<Predicate> preds;
    std::vector<Node> nodes;
    std::int32_t root = -1;

    bool valid() const { return root >= 0 && root < static_cast<std::int32_t>(nodes.size()); }
};

RegionExpr region_empty();
RegionExpr region_full();
RegionExpr region_circle(const GQ& center, const Rat& r2);       // the circle itself
RegionExpr region_open_disk(const GQ& center, const Rat& r2);
RegionExpr region_closed_disk(const GQ& center, const Rat& r2);
RegionExpr region_point(const GQ& p);

bool member(const RegionExpr& r, const QPoint& lambda);
inline bool member(const RegionExpr& r, const GQ& lambda) {
    return member(r, QPoint::rational(lambda));
}

RegionExpr region_union(const RegionExpr& a, const RegionExpr& b);
RegionExpr region_intersect(const RegionExpr& a, const RegionExpr& b);
RegionExpr region_complement(const RegionExpr& a);
RegionExpr region_difference(const RegionExpr& a, const RegionExpr& b);

/* Exact membership over an n x n rational grid spanning the window
   [x0,x1] x [y0,y1]; row 0 is the top (y1) row. */
std::vector<std::vector<bool>> sample_grid(const RegionExpr& r, const Rat& x0, const Rat& y0,
                                           const Rat& x1, const Rat& y1, std::size_t n);

}  // namespace opspec
