#include "opspec/region.hpp"

#include <algorithm>
#include <stdexcept>

namespace opspec {

namespace {

std::int32_t add_node(RegionExpr& r, RegionExpr::Node n) {
    r.nodes.push_back(n);
    return static_cast<std::int32_t>(r.nodes.size() - 1);
}

std::int32_t add_pred(RegionExpr& r, const Predicate& p) {
    auto it = std::find(r.preds.begin(), r.preds.end(), p);
    if (it != r.preds.end()) return static_cast<std::int32_t>(it - r.preds.begin());
    r.preds.push_back(p);
    return static_cast<std::int32_t>(r.preds.size() - 1);
}

RegionExpr const_region(bool v) {
    RegionExpr r;
    r.root = add_node(r, {RegionExpr::Node::Op::Const, -1, -1, -1, v});
    return r;
}

/* Copy the formula of `src` into `dst`, remapping predicate indices. */
std::int32_t graft(RegionExpr& dst, const RegionExpr& src, std::int32_t node,
                   const std::vector<std::int32_t>& predmap) {
    const auto& n = src.nodes[node];
    RegionExpr::Node out = n;
    if (n.pred >= 0) out.pred = predmap[n.pred];
    if (n.a >= 0) out.a = graft(dst, src, n.a, predmap);
    if (n.b >= 0) out.b = graft(dst, src, n.b, predmap);
    return add_node(dst, out);
}

RegionExpr combine(const RegionExpr& a, const RegionExpr& b, RegionExpr::Node::Op op) {
    RegionExpr r;
    r.preds = a.preds;
    std::vector<std::int32_t> mapa(a.preds.size());
    for (std::size_t i = 0; i < a.preds.size(); ++i) mapa[i] = static_cast<std::int32_t>(i);
    std::vector<std::int32_t> mapb(b.preds.size());
    for (std::size_t i = 0; i < b.preds.size(); ++i) mapb[i] = add_pred(r, b.preds[i]);
    std::int32_t na = graft(r, a, a.root, mapa);
    std::int32_t nb = graft(r, b, b.root, mapb);
    r.root = add_node(r, {op, na, nb, -1, false});
    return r;
}

}  // namespace

RegionExpr region_empty() { return const_region(false); }
RegionExpr region_full() { return const_region(true); }

RegionExpr region_circle(const GQ& center, const Rat& r2) {
    if (r2.sign() <= 0) throw std::invalid_argument("region_circle: r2 must be positive");
    RegionExpr r;
    std::int32_t p = add_pred(r, Predicate::circle(center, r2));
    r.root = add_node(r, {RegionExpr::Node::Op::Eq, -1, -1, p, false});
    return r;
}

RegionExpr region_open_disk(const GQ& center, const Rat& r2) {
    if (r2.sign() <= 0) throw std::invalid_argument("region_open_disk: r2 must be positive");
    RegionExpr r;
    std::int32_t p = add_pred(r, Predicate::circle(center, r2));
    r.root = add_node(r, {RegionExpr::Node::Op::Lt, -1, -1, p, false});
    return r;
}

RegionExpr region_closed_disk(const GQ& center, const Rat& r2) {
    return region_union(region_open_disk(center, r2), region_circle(center, r2));
}

RegionExpr region_point(const GQ& p) {
    RegionExpr r;
    std::int32_t pi = add_pred(r, Predicate::point(p));
    r.root = add_node(r, {RegionExpr::Node::Op::AtPt, -1, -1, pi, false});
    return r;
}

namespace {

bool eval_node(const RegionExpr& r, std::int32_t node, const QPoint& z) {
    const auto& n = r.nodes[node];
    using Op = RegionExpr::Node::Op;
    switch (n.op) {
        case Op::Const: return n.cval;
        case Op::Lt: return z.circle_sign(r.preds[n.pred].c, r.preds[n.pred].r2) < 0;
        case Op::Eq: return z.circle_sign(r.preds[n.pred].c, r.preds[n.pred].r2) == 0;
        case Op::AtPt: return z.equals_gq(r.preds[n.pred].c);
        case Op::And: return eval_node(r, n.a, z) && eval_node(r, n.b, z);
        case Op::Or: return eval_node(r, n.a, z) || eval_node(r, n.b, z);
        case Op::Not: return !eval_node(r, n.a, z);
    }
    return false;
}

}  // namespace

bool member(const RegionExpr& r, const QPoint& lambda) {
    if (!r.valid()) throw std::invalid_argument("member: malformed region");
    return eval_node(r, r.root, lambda);
}

RegionExpr region_union(const RegionExpr& a, const RegionExpr& b) {
    return combine(a, b, RegionExpr::Node::Op::Or);
}
RegionExpr region_intersect(const RegionExpr& a, const RegionExpr& b) {
    return combine(a, b, RegionExpr::Node::Op::And);
}
RegionExpr region_complement(const RegionExpr& a) {
    RegionExpr r = a;
    r.root = add_node(r, {RegionExpr::Node::Op::Not, a.root, -1, -1, false});
    return r;
}
RegionExpr region_difference(const RegionExpr& a, const RegionExpr& b) {
    return region_intersect(a, region_complement(b));
}

std::vector<std::vector<bool>> sample_grid(const RegionExpr& r, const Rat& x0, const Rat& y0,
                                           const Rat& x1, const Rat& y1, std::size_t n) {
    if (n < 1) throw std::invalid_argument("sample_grid: n must be >= 1");
    std::vector<std::vector<bool>> grid(n, std::vector<bool>(n, false));
    Rat dx = n == 1 ? Rat(0) : (x1 - x0) / Rat(static_cast<long>(n - 1));
    Rat dy = n == 1 ? Rat(0) : (y1 - y0) / Rat(static_cast<long>(n - 1));
    for (std::size_t i = 0; i < n; ++i) {
        Rat y = y1 - Rat(static_cast<long>(i)) * dy;
        for (std::size_t j = 0; j < n; ++j) {
            Rat x = x0 + Rat(static_cast<long>(j)) * dx;
            grid[i][j] = member(r, QPoint(x, y));
        }
    }
    return grid;
}

}  // namespace opspec
