#include "opspec/arrangement.hpp"

#include "opspec/sign_exact.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace opspec {

namespace {

struct Vec2 {
    Rat x, y;
};

Rat dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
Rat cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
Vec2 sub(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }

struct Circ {
    Vec2 c;
    Rat r2;
    int pred;  // index into preds
};

/* A point lying on some circle: either rational, or the chosen root of a
   rational quadratic along a rational line (point = p0 + t * dir). */
struct OCP {
    bool rational = true;
    Rat x, y;  // rational case
    Vec2 p0, dir;
    QuadRoot t;

    QPoint qpoint() const {
        if (rational) return QPoint(x, y);
        // p0 + (vertex ± sqrt(disc)) * dir
        Rat v = t.vertex(), disc = t.disc();
        Rat sgn = Rat(t.side);
        return QPoint::make(p0.x + v * dir.x, p0.y + v * dir.y, sgn * dir.x, sgn * dir.y, disc);
    }
};

/* Linear form a0 + a1 * t: the coordinates of line points relative to a
   center are of this shape. */
struct Lin {
    Rat a0, a1;
};

int sign_lin(const Lin& l, const QuadRoot& t) { return sign_linear_at(l.a0, l.a1, t); }

struct VertexRec {
    OCP pos;
    QPoint qpt;
    std::vector<int> circles;  // indices into circs, sorted
    std::vector<int> points;   // indices into point_preds slots
    int cell = -1;
};

struct ArcRec {
    int circle = -1;
    int vfrom = -1, vto = -1;  // ccw order around the circle
    Vec2 sample_dir;           // rational unit direction strictly inside the arc
    QPoint sample;
    int cell = -1;
};

struct LoopRec {
    int circle = -1;
    Vec2 sample_dir;
    QPoint sample;
    int cell = -1;
};

/* Half-edges: two per arc (ccw/cw traversal) and two per loop
   (inside/outside). The face lies to the LEFT of the traversal; for a ccw
   traversal of a circle that is its inside. */
struct HalfEdge {
    bool is_loop = false;
    int arc = -1;   // or loop index
    bool ccw = true;  // arcs: traversal direction; loops: true = inside face
    int cycle = -1;
    QPoint face_sample;  // rational point in the adjacent face
    Vec2 sample_dir;     // radial direction used to build face_sample
};

struct DSU {
    std::vector<int> p;
    explicit DSU(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

/* ------------------------------------------------------------------ */
/* Builder                                                             */
/* ------------------------------------------------------------------ */

struct Builder {
    std::vector<Predicate> preds;
    std::vector<int> circle_pred_idx;  // preds indices of circles
    std::vector<int> point_pred_idx;
    std::vector<Circ> circs;
    std::vector<Vec2> pts;  // point predicate positions

    std::vector<VertexRec> verts;
    std::map<std::vector<Rat>, int, bool (*)(const std::vector<Rat>&, const std::vector<Rat>&)>
        vkey{&Builder::rat_vec_less};
    std::vector<std::vector<int>> circle_verts;  // per circle, sorted ccw
    std::vector<ArcRec> arcs;
    std::vector<std::vector<int>> circle_arcs;  // per circle, arc i runs vlist[i] -> vlist[i+1]
    std::vector<LoopRec> loops;
    std::vector<int> circle_loop;  // per circle: loop index or -1
    std::vector<HalfEdge> hes;
    int n_cycles = 0;

    static bool rat_vec_less(const std::vector<Rat>& a, const std::vector<Rat>& b) {
        for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
            if (a[i] != b[i]) return a[i] < b[i];
        }
        return a.size() < b.size();
    }

    /* ---- exact sign of |P - c_k|^2 - r_k^2 for the three point shapes ---- */

    int circ_sign_rat(const Vec2& z, const Circ& k) const {
        return (sub(z, k.c).x * sub(z, k.c).x + sub(z, k.c).y * sub(z, k.c).y - k.r2).sign();
    }

    /* ---- vertex construction ---- */

    std::vector<Rat> key_rational(const Rat& x, const Rat& y) { return {Rat(0), x, y}; }
    std::vector<Rat> key_lineroot(const OCP& p) {
        return {Rat(1), p.p0.x, p.p0.y, p.dir.x, p.dir.y, p.t.p, p.t.q, Rat(p.t.side)};
    }

    int get_or_add_vertex(const OCP& pos) {
        std::vector<Rat> key = pos.rational ? key_rational(pos.x, pos.y) : key_lineroot(pos);
        auto it = vkey.find(key);
        if (it != vkey.end()) return it->second;
        VertexRec v;
        v.pos = pos;
        v.qpt = pos.qpoint();
        verts.push_back(std::move(v));
        int id = static_cast<int>(verts.size()) - 1;
        vkey.emplace(std::move(key), id);
        return id;
    }

    /* Canonical parametrization of the radical line a*x + b*y = e. */
    static void canon_line(Rat a, Rat b, Rat e, Vec2& p0, Vec2& dir) {
        // direction perpendicular to (a, b)
        Vec2 d{-b, a};
        // canonical scale: make the first nonzero coordinate equal to 1
        Rat s = !d.x.is_zero() ? d.x : d.y;
        d.x = d.x / s;
        d.y = d.y / s;
        // foot of the perpendicular from the origin
        Rat n2 = a * a + b * b;
        p0 = {a * e / n2, b * e / n2};
        dir = d;
    }

    /* Monic quadratic for the parameter of line p0 + t*dir on circle k. */
    static QuadRoot line_circle_quadratic(const Vec2& p0, const Vec2& dir, const Circ& k) {
        Rat n2 = dot(dir, dir);
        Vec2 w = sub(p0, k.c);
        QuadRoot q;
        q.p = Rat(2) * dot(w, dir) / n2;
        q.q = (dot(w, w) - k.r2) / n2;
        q.side = -1;
        return q;
    }

    void add_pair_vertices(int i, int j) {
        const Circ &ci = circs[i], &cj = circs[j];
        Vec2 dvec = sub(cj.c, ci.c);
        Rat d2 = dot(dvec, dvec);
        if (d2.is_zero()) return;  // concentric, distinct radii
        Rat g2 = ci.r2 * cj.r2;
        Rat base = d2 - ci.r2 - cj.r2;
        int cmp_plus = sign_pqs(base, Rat(-2), g2);   // d^2 vs (r_i + r_j)^2
        int cmp_minus = sign_pqs(base, Rat(2), g2);   // d^2 vs (r_i - r_j)^2
        if (cmp_plus > 0 || cmp_minus < 0) return;    // disjoint or nested

        if (cmp_plus == 0 || cmp_minus == 0) {
            // tangency; the touch point is rational
            Rat g = cmp_plus == 0 ? base / Rat(2) : -base / Rat(2);  // g = r_i r_j
            Rat scale;                                               // r_i / d, signed
            if (cmp_plus == 0) {
                scale = (ci.r2 + g) / d2;  // external: r_i d = r_i^2 + g
            } else if (ci.r2 > cj.r2) {
                scale = (ci.r2 - g) / d2;  // internal, i outside: r_i d = r_i^2 - g
            } else {
                // internal, j outside: point = c_j + (r_j/d)(c_i - c_j)
                Rat sj = (cj.r2 - g) / d2;
                OCP pos;
                pos.x = cj.c.x - sj * dvec.x;
                pos.y = cj.c.y - sj * dvec.y;
                int v = get_or_add_vertex(pos);
                attach_circle(v, i);
                attach_circle(v, j);
                return;
            }
            OCP pos;
            pos.x = ci.c.x + scale * dvec.x;
            pos.y = ci.c.y + scale * dvec.y;
            int v = get_or_add_vertex(pos);
            attach_circle(v, i);
            attach_circle(v, j);
            return;
        }

        // transversal crossing: two points on the radical line
        Rat a = Rat(2) * dvec.x, b = Rat(2) * dvec.y;
        Rat e = dot(cj.c, cj.c) - dot(ci.c, ci.c) - cj.r2 + ci.r2;
        Vec2 p0, dir;
        canon_line(a, b, e, p0, dir);
        QuadRoot q = line_circle_quadratic(p0, dir, ci);
        Rat disc = q.disc();
        if (disc.sign() <= 0) throw std::logic_error("crossing circles with no real roots");
        if (disc.is_perfect_square()) {
            Rat r = disc.exact_sqrt(), v0 = q.vertex();
            for (const Rat& t : {v0 - r, v0 + r}) {
                OCP pos;
                pos.x = p0.x + t * dir.x;
                pos.y = p0.y + t * dir.y;
                int v = get_or_add_vertex(pos);
                attach_circle(v, i);
                attach_circle(v, j);
            }
            return;
        }
        for (int side : {-1, +1}) {
            OCP pos;
            pos.rational = false;
            pos.p0 = p0;
            pos.dir = dir;
            pos.t = q;
            pos.t.side = side;
            int v = get_or_add_vertex(pos);
            attach_circle(v, i);
            attach_circle(v, j);
        }
    }

    void attach_circle(int v, int i) {
        auto& cs = verts[v].circles;
        if (std::find(cs.begin(), cs.end(), i) == cs.end()) cs.push_back(i);
    }

    /* Complete circle incidence: rational vertices may lie on circles beyond
       the pair that created them; line-root vertices lie on circle k iff the
       line-circle quadratic of k coincides with theirs. */
    void complete_incidence() {
        for (auto& v : verts) {
            for (int k = 0; k < static_cast<int>(circs.size()); ++k) {
                if (std::find(v.circles.begin(), v.circles.end(), k) != v.circles.end()) continue;
                if (v.pos.rational) {
                    if (circ_sign_rat({v.pos.x, v.pos.y}, circs[k]) == 0) v.circles.push_back(k);
                } else {
                    QuadRoot qk = line_circle_quadratic(v.pos.p0, v.pos.dir, circs[k]);
                    if (qk.p == v.pos.t.p && qk.q == v.pos.t.q && qk.disc().sign() > 0)
                        v.circles.push_back(k);
                }
            }
            std::sort(v.circles.begin(), v.circles.end());
        }
    }

    /* ---- angular order around a circle center ---- */

    /* Coordinates of (vertex - center) as exact sign sources. */
    struct DirObj {
        bool rational = true;
        Vec2 v;       // rational case
        Lin lx, ly;   // line case: components linear in t
        QuadRoot t;
        // identity of the underlying line/quadratic, for the same-field test
        Vec2 p0, dir;
    };

    DirObj dir_of(const OCP& pos, const Vec2& center) const {
        DirObj d;
        if (pos.rational) {
            d.rational = true;
            d.v = sub(Vec2{pos.x, pos.y}, center);
        } else {
            d.rational = false;
            d.lx = {pos.p0.x - center.x, pos.dir.x};
            d.ly = {pos.p0.y - center.y, pos.dir.y};
            d.t = pos.t;
            d.p0 = pos.p0;
            d.dir = pos.dir;
        }
        return d;
    }

    static int sign_x(const DirObj& d) { return d.rational ? d.v.x.sign() : sign_lin(d.lx, d.t); }
    static int sign_y(const DirObj& d) { return d.rational ? d.v.y.sign() : sign_lin(d.ly, d.t); }

    /* Quadrants: [0,90) -> 0, [90,180) -> 1, [180,270) -> 2, [270,360) -> 3,
       each containing its starting axis. */
    static int quadrant(int sx, int sy) {
        if (sx > 0 && sy >= 0) return 0;
        if (sx <= 0 && sy > 0) return 1;
        if (sx < 0 && sy <= 0) return 2;
        return 3;
    }
    static int quadrant(const DirObj& d) { return quadrant(sign_x(d), sign_y(d)); }

    /* sign of cross(a, b) for direction objects; 0 only for parallel. */
    static int cross_sign(const DirObj& a, const DirObj& b) {
        if (a.rational && b.rational) return cross(a.v, b.v).sign();
        if (a.rational && !b.rational) {
            // a.x * (ly) - a.y * (lx), linear in b.t
            Rat c0 = a.v.x * b.ly.a0 - a.v.y * b.lx.a0;
            Rat c1 = a.v.x * b.ly.a1 - a.v.y * b.lx.a1;
            return sign_linear_at(c0, c1, b.t);
        }
        if (!a.rational && b.rational) return -cross_sign(b, a);
        // both on lines
        bool same_field = a.p0.x == b.p0.x && a.p0.y == b.p0.y && a.dir.x == b.dir.x &&
                          a.dir.y == b.dir.y && a.t.p == b.t.p && a.t.q == b.t.q;
        if (same_field) {
            if (a.t.side == b.t.side) return 0;  // identical point
            // cross(w(t1), w(t2)) = (t2 - t1) cross(base, dir)
            Rat c = cross({a.lx.a0, a.ly.a0}, {a.lx.a1, a.ly.a1});
            int order = b.t.side > a.t.side ? 1 : -1;  // sign(t2 - t1)
            return order * c.sign();
        }
        // bilinear in the two roots
        Rat A = a.lx.a0 * b.ly.a0 - a.ly.a0 * b.lx.a0;
        Rat B = a.lx.a1 * b.ly.a0 - a.ly.a1 * b.lx.a0;
        Rat C = a.lx.a0 * b.ly.a1 - a.ly.a0 * b.lx.a1;
        Rat E = a.lx.a1 * b.ly.a1 - a.ly.a1 * b.lx.a1;
        return sign_bilinear_at(A, B, C, E, a.t, b.t);
    }

    static int dot_sign(const DirObj& a, const DirObj& b) {
        if (a.rational && b.rational) return dot(a.v, b.v).sign();
        if (a.rational && !b.rational) {
            Rat c0 = a.v.x * b.lx.a0 + a.v.y * b.ly.a0;
            Rat c1 = a.v.x * b.lx.a1 + a.v.y * b.ly.a1;
            return sign_linear_at(c0, c1, b.t);
        }
        if (!a.rational && b.rational) return dot_sign(b, a);
        bool same_field = a.p0.x == b.p0.x && a.p0.y == b.p0.y && a.dir.x == b.dir.x &&
                          a.dir.y == b.dir.y && a.t.p == b.t.p && a.t.q == b.t.q;
        if (same_field) {
            // dot(w(t1), w(t2)) = dot(u,u) + (t1+t2) dot(u,d) + t1 t2 dot(d,d)
            Rat uu = a.lx.a0 * a.lx.a0 + a.ly.a0 * a.ly.a0;
            Rat ud = a.lx.a0 * a.lx.a1 + a.ly.a0 * a.ly.a1;
            Rat dd = a.lx.a1 * a.lx.a1 + a.ly.a1 * a.ly.a1;
            if (a.t.side != b.t.side) {
                // t1 + t2 = -p, t1 t2 = q
                return (uu - ud * a.t.p + dd * a.t.q).sign();
            }
            // same point: |w|^2 = r^2 > 0
            return 1;
        }
        Rat A = a.lx.a0 * b.lx.a0 + a.ly.a0 * b.ly.a0;
        Rat B = a.lx.a1 * b.lx.a0 + a.ly.a1 * b.ly.a0;
        Rat C = a.lx.a0 * b.lx.a1 + a.ly.a0 * b.ly.a1;
        Rat E = a.lx.a1 * b.lx.a1 + a.ly.a1 * b.ly.a1;
        return sign_bilinear_at(A, B, C, E, a.t, b.t);
    }

    /* Strict angular order: a before b, counterclockwise from angle 0. */
    bool angular_less(const DirObj& a, const DirObj& b) const {
        int qa = quadrant(a), qb = quadrant(b);
        if (qa != qb) return qa < qb;
        int c = cross_sign(a, b);
        if (c == 0) throw std::logic_error("angular_less: coincident directions");
        return c > 0;
    }

    void sort_circle_vertices() {
        circle_verts.assign(circs.size(), {});
        for (int v = 0; v < static_cast<int>(verts.size()); ++v)
            for (int ci : verts[v].circles) circle_verts[ci].push_back(v);
        for (int ci = 0; ci < static_cast<int>(circs.size()); ++ci) {
            auto& vl = circle_verts[ci];
            const Vec2 c = circs[ci].c;
            std::sort(vl.begin(), vl.end(), [&](int x, int y) {
                return angular_less(dir_of(verts[x].pos, c), dir_of(verts[y].pos, c));
            });
        }
    }

    /* ---- rational probe directions and the between test ---- */

    static Vec2 probe_dir(const Rat& tv) {
        Rat t2 = tv * tv, den = Rat(1) + t2;
        return {(Rat(1) - t2) / den, Rat(2) * tv / den};
    }

    /* category of x relative to base u: 0 same direction, 1 left half,
       2 opposite, 3 right half */
    int cat_rel(const DirObj& u, const DirObj& x) const {
        int c = cross_sign(u, x);
        if (c > 0) return 1;
        if (c < 0) return 3;
        return dot_sign(u, x) > 0 ? 0 : 2;
    }

    bool strictly_between_ccw(const DirObj& u, const DirObj& v, const DirObj& w,
                              bool full_circle) const {
        if (full_circle) return cat_rel(u, w) != 0;
        int cw = cat_rel(u, w), cv = cat_rel(u, v);
        if (cw == 0) return false;
        if (cw != cv) return cw < cv;
        if (cw == 2) return false;  // both opposite: w coincides with v
        return cross_sign(w, v) > 0;
    }

    /* Exact test for the direction (-1, 0). */
    static bool at_pi(const DirObj& d) {
        return sign_y(d) == 0 && sign_x(d) < 0;
    }

    RatInterval t_chart(const DirObj& d, const Rat& r2, int steps) const {
        // tan(theta/2) = y / (x + r) with r the circle radius
        RatInterval r = sqrt_interval(r2, steps);
        RatInterval x = d.rational ? RatInterval::point(d.v.x)
                                   : d.lx.a0 + (d.lx.a1 * d.t.approx(steps));
        RatInterval y = d.rational ? RatInterval::point(d.v.y)
                                   : d.ly.a0 + (d.ly.a1 * d.t.approx(steps));
        RatInterval den = x + r;
        if (den.lo.sign() <= 0) throw std::range_error("t_chart: unresolved denominator");
        Rat cands[4] = {y.lo / den.lo, y.lo / den.hi, y.hi / den.lo, y.hi / den.hi};
        RatInterval out{cands[0], cands[0]};
        for (int i = 1; i < 4; ++i) {
            if (cands[i] < out.lo) out.lo = cands[i];
            if (cands[i] > out.hi) out.hi = cands[i];
        }
        return out;
    }

    /* A rational unit direction strictly inside the ccw interval (u, v);
       full_circle: any direction different from u. */
    Vec2 direction_between(const DirObj& u, const DirObj& v, const Rat& r2,
                           bool full_circle) const {
        auto ok = [&](const Vec2& w) {
            DirObj dw;
            dw.rational = true;
            dw.v = w;
            return strictly_between_ccw(u, v, dw, full_circle);
        };
        if (full_circle) {
            for (const Rat& t : {Rat(0), Rat(1), Rat(-1), Rat(2), Rat(-2), Rat(1, 2), Rat(-1, 2)}) {
                Vec2 w = probe_dir(t);
                if (ok(w)) return w;
            }
            Vec2 w{Rat(-1), Rat(0)};
            if (ok(w)) return w;
            throw ArrangementError("direction_between: no probe on full circle");
        }
        bool upi = at_pi(u), vpi = at_pi(v);
        for (int steps = 24; steps <= 2048; steps *= 2) {
            try {
                if (!upi && !vpi) {
                    RatInterval tu = t_chart(u, r2, steps), tv = t_chart(v, r2, steps);
                    if (!(tu.hi < tv.lo) && !(tv.hi < tu.lo)) continue;  // unresolved
                    if (tu.hi < tv.lo) {
                        Vec2 w = probe_dir((tu.hi + tv.lo) / Rat(2));
                        if (ok(w)) return w;
                    } else {
                        // ccw interval wraps through angle pi
                        Vec2 w{Rat(-1), Rat(0)};
                        if (ok(w)) return w;
                    }
                } else if (upi && !vpi) {
                    RatInterval tv = t_chart(v, r2, steps);
                    Vec2 w = probe_dir(tv.lo - Rat(1));
                    if (ok(w)) return w;
                } else if (!upi && vpi) {
                    RatInterval tu = t_chart(u, r2, steps);
                    Vec2 w = probe_dir(tu.hi + Rat(1));
                    if (ok(w)) return w;
                }
            } catch (const std::range_error&) {
                continue;  // refine further
            }
        }
        throw ArrangementError("direction_between: refinement exhausted");
    }

    /* ---- arcs, loops and their on-circle samples ---- */

    void build_arcs_and_loops() {
        circle_arcs.assign(circs.size(), {});
        circle_loop.assign(circs.size(), -1);
        for (int ci = 0; ci < static_cast<int>(circs.size()); ++ci) {
            const auto& vl = circle_verts[ci];
            const Circ& C = circs[ci];
            if (vl.empty()) {
                LoopRec lp;
                lp.circle = ci;
                lp.sample_dir = {Rat(1), Rat(0)};
                lp.sample = QPoint::make(C.c.x, C.c.y, Rat(1), Rat(0), C.r2);
                circle_loop[ci] = static_cast<int>(loops.size());
                loops.push_back(std::move(lp));
                continue;
            }
            int m = static_cast<int>(vl.size());
            for (int k = 0; k < m; ++k) {
                ArcRec a;
                a.circle = ci;
                a.vfrom = vl[k];
                a.vto = vl[(k + 1) % m];
                DirObj du = dir_of(verts[a.vfrom].pos, C.c);
                DirObj dv = dir_of(verts[a.vto].pos, C.c);
                a.sample_dir = direction_between(du, dv, C.r2, m == 1);
                a.sample = QPoint::make(C.c.x, C.c.y, a.sample_dir.x, a.sample_dir.y, C.r2);
                circle_arcs[ci].push_back(static_cast<int>(arcs.size()));
                arcs.push_back(std::move(a));
            }
        }
    }

    /* ---- face samples: rational points radially offset from an arc ---- */

    /* sign(sigma - sqrt(r2)) for rational sigma */
    static int cmp_sqrt(const Rat& sigma, const Rat& r2) {
        if (sigma.sign() <= 0) return -1;
        return (sigma * sigma - r2).sign();
    }

    /* f_k along the radial ray c + sigma * w: sigma^2 + 2 B sigma + Cc. */
    struct RadialQ {
        Rat B, Cc;
    };
    RadialQ radial_q(int ci, const Vec2& w, int k) const {
        Vec2 u = sub(circs[ci].c, circs[k].c);
        return {dot(u, w), dot(u, u) - circs[k].r2};
    }

    /* Rational point z = c + rho * w on the given side of circle ci whose
       radial segment to the circle crosses nothing. */
    QPoint face_sample(int ci, const Vec2& w, int side, int attempt) const {
        const Circ& C = circs[ci];
        for (int depth = 12 + 6 * attempt; depth <= 640; depth += 16) {
            Rat rho;
            RatInterval s = sqrt_interval(C.r2, depth);
            if (s.lo == s.hi) {
                Rat eps = s.lo / Rat(Int(1) << std::min(depth, 200));
                rho = side < 0 ? s.lo - eps : s.lo + eps;
            } else {
                rho = side < 0 ? s.lo : s.hi;
            }
            if (rho.sign() <= 0) continue;
            Vec2 z{C.c.x + rho * w.x, C.c.y + rho * w.y};
            bool good = true;
            for (int k = 0; k < static_cast<int>(circs.size()) && good; ++k) {
                if (k == ci) continue;
                RadialQ q = radial_q(ci, w, k);
                Rat frho = rho * rho + Rat(2) * q.B * rho + q.Cc;
                if (frho.is_zero()) { good = false; break; }  // z on circle k
                // f at the arc endpoint sqrt(r2) is nonzero since the open arc
                // avoids all vertices
                int fend = sign_pqs(C.r2 + q.Cc, Rat(2) * q.B, C.r2);
                if (fend == 0) throw std::logic_error("arc sample lies on another circle");
                if (frho.sign() != fend) { good = false; break; }
                Rat vtx = -q.B;  // vertex of the radial quadratic
                int lo_cmp = cmp_sqrt(vtx, C.r2);  // sign(vtx - sqrt(r2))
                bool inside_seg = side < 0 ? (vtx > rho && lo_cmp < 0) : (lo_cmp > 0 && vtx < rho);
                if (inside_seg) {
                    Rat fv = vtx * vtx + Rat(2) * q.B * vtx + q.Cc;
                    if (fv.sign() != fend) { good = false; break; }
                }
            }
            if (!good) continue;
            // z must avoid point predicates, and no point may sit on the segment
            for (const Vec2& p : pts) {
                if (p.x == z.x && p.y == z.y) { good = false; break; }
                Vec2 pc = sub(p, C.c);
                if (cross(pc, w).is_zero()) {
                    Rat sigma = dot(pc, w);
                    bool inseg = side < 0 ? (sigma > rho && cmp_sqrt(sigma, C.r2) < 0)
                                          : (cmp_sqrt(sigma, C.r2) > 0 && sigma < rho);
                    if (inseg) { good = false; break; }
                }
            }
            if (good) return QPoint(z.x, z.y);
        }
        throw ArrangementError("face_sample: refinement exhausted");
    }

    /* ---- germs and cycle tracing ---- */

    // at a vertex: outgoing germ of one circle, ccw or cw
    struct Germ {
        int circle;
        bool ccw_out;
        int halfedge;
    };

    int he_ccw(int arc) const { return 2 * arc; }
    int he_cw(int arc) const { return 2 * arc + 1; }
    int he_target(int he) const {
        const ArcRec& a = arcs[hes[he].arc];
        return hes[he].ccw ? a.vto : a.vfrom;
    }
    int he_twin(int he) const { return he ^ 1; }

    /* Direction of a germ at vertex v: the ccw tangent is rot90(v - c). */
    DirObj germ_dir(int vertex, int circle, bool ccw_out) const {
        DirObj rad = dir_of(verts[vertex].pos, circs[circle].c);
        DirObj d = rad;
        if (rad.rational) {
            d.v = ccw_out ? Vec2{-rad.v.y, rad.v.x} : Vec2{rad.v.y, -rad.v.x};
        } else {
            if (ccw_out) {
                d.lx = {-rad.ly.a0, -rad.ly.a1};
                d.ly = rad.lx;
            } else {
                d.lx = rad.ly;
                d.ly = {-rad.lx.a0, -rad.lx.a1};
            }
        }
        return d;
    }

    /* Germ order around a vertex: by direction angle; for coincident
       directions (tangent circles, always at rational vertices) the germ
       with the smaller signed curvature comes first. Signed curvature is
       +1/r for ccw germs, -1/r for cw germs. */
    bool germ_less(int vtx, const Germ& g1, const Germ& g2) const {
        DirObj d1 = germ_dir(vtx, g1.circle, g1.ccw_out);
        DirObj d2 = germ_dir(vtx, g2.circle, g2.ccw_out);
        int q1 = quadrant(d1), q2 = quadrant(d2);
        if (q1 != q2) return q1 < q2;
        int c = cross_sign(d1, d2);
        if (c != 0) return c > 0;
        if (dot_sign(d1, d2) < 0) throw std::logic_error("germ_less: opposite germs same quadrant");
        // identical direction: tangency; order by signed curvature ascending
        if (g1.ccw_out != g2.ccw_out) return !g1.ccw_out;
        int rc = (circs[g1.circle].r2 - circs[g2.circle].r2).sign();
        if (rc == 0) throw std::logic_error("germ_less: duplicate circle");
        // kappa = sign / r: for ccw (positive) smaller r is larger kappa
        return g1.ccw_out ? rc > 0 : rc < 0;
    }

    std::vector<std::vector<Germ>> vertex_germs;  // sorted ccw

    void build_germs() {
        vertex_germs.assign(verts.size(), {});
        for (int ci = 0; ci < static_cast<int>(circs.size()); ++ci) {
            const auto& vl = circle_verts[ci];
            int m = static_cast<int>(vl.size());
            for (int k = 0; k < m; ++k) {
                int v = vl[k];
                int arc_next = circle_arcs[ci][k];
                int arc_prev = circle_arcs[ci][(k - 1 + m) % m];
                vertex_germs[v].push_back({ci, true, he_ccw(arc_next)});
                vertex_germs[v].push_back({ci, false, he_cw(arc_prev)});
            }
        }
        for (int v = 0; v < static_cast<int>(verts.size()); ++v) {
            auto& gs = vertex_germs[v];
            std::sort(gs.begin(), gs.end(),
                      [&](const Germ& a, const Germ& b) { return germ_less(v, a, b); });
        }
    }

    int next_halfedge(int he) const {
        int v = he_target(he);
        int twin = he_twin(he);
        const auto& gs = vertex_germs[v];
        for (std::size_t i = 0; i < gs.size(); ++i) {
            if (gs[i].halfedge == twin) {
                return gs[(i + gs.size() - 1) % gs.size()].halfedge;
            }
        }
        throw std::logic_error("next_halfedge: twin germ not found");
    }

    void trace_cycles() {
        hes.assign(2 * arcs.size() + 2 * loops.size(), {});
        for (int a = 0; a < static_cast<int>(arcs.size()); ++a) {
            hes[2 * a].arc = a;
            hes[2 * a].ccw = true;
            hes[2 * a + 1].arc = a;
            hes[2 * a + 1].ccw = false;
        }
        int base = static_cast<int>(2 * arcs.size());
        for (int l = 0; l < static_cast<int>(loops.size()); ++l) {
            hes[base + 2 * l].is_loop = true;
            hes[base + 2 * l].arc = l;
            hes[base + 2 * l].ccw = true;  // inside
            hes[base + 2 * l + 1].is_loop = true;
            hes[base + 2 * l + 1].arc = l;
            hes[base + 2 * l + 1].ccw = false;
        }
        build_germs();
        n_cycles = 0;
        for (int h = 0; h < static_cast<int>(hes.size()); ++h) {
            if (hes[h].cycle >= 0) continue;
            if (hes[h].is_loop) {
                hes[h].cycle = n_cycles++;
                continue;
            }
            int cyc = n_cycles++;
            int cur = h;
            int guard = 0;
            do {
                hes[cur].cycle = cyc;
                cur = next_halfedge(cur);
                if (++guard > static_cast<int>(hes.size()) + 4)
                    throw std::logic_error("trace_cycles: runaway cycle");
            } while (cur != h);
        }
    }

    void build_face_samples() {
        for (auto& he : hes) {
            int side = he.ccw ? -1 : +1;  // left of ccw traversal is the inside
            if (he.is_loop) {
                const LoopRec& lp = loops[he.arc];
                he.sample_dir = lp.sample_dir;
                he.face_sample = face_sample(lp.circle, lp.sample_dir, side, 0);
            } else {
                const ArcRec& a = arcs[he.arc];
                he.sample_dir = a.sample_dir;
                he.face_sample = face_sample(a.circle, a.sample_dir, side, 0);
            }
        }
    }

    /* Alternate sample in the same face, used when a ray cast is degenerate:
       slide along the arc (strictly between the previous direction and the
       arc end) and vary the radial depth. */
    QPoint alt_face_sample(int he, int attempt) const {
        const HalfEdge& H = hes[he];
        int side = H.ccw ? -1 : +1;
        if (H.is_loop) {
            static const Rat ts[] = {Rat(0), Rat(1), Rat(-1), Rat(2), Rat(-2), Rat(1, 3), Rat(3)};
            Vec2 w = probe_dir(ts[attempt % 7]);
            return face_sample(loops[H.arc].circle, w, side, attempt);
        }
        const ArcRec& a = arcs[H.arc];
        Vec2 w = a.sample_dir;
        DirObj dv = dir_of(verts[a.vto].pos, circs[a.circle].c);
        for (int i = 0; i < attempt; ++i) {
            DirObj dw;
            dw.rational = true;
            dw.v = w;
            w = direction_between(dw, dv, circs[a.circle].r2, false);
        }
        return face_sample(a.circle, w, side, attempt);
    }

    /* ---- ray casting along a rational direction ---- */

    struct Hit {
        int circle;
        QuadRoot t;     // ray parameter of the hit (the chosen root)
        int arc = -1;   // arc index, or -1 when the circle is a loop
        int side_near;  // sign of f_circle on the ray segment before the hit
    };

    /* All crossings of the ray origin + t*d (t > 0), sorted by t; nullopt
       when the ray is degenerate: it grazes a circle ahead, meets a vertex,
       or two crossings coincide. */
    std::optional<std::vector<Hit>> cast_ray(const Vec2& origin, const Vec2& d) const {
        Rat n2 = dot(d, d);
        std::vector<Hit> hits;
        for (int k = 0; k < static_cast<int>(circs.size()); ++k) {
            const Circ& C = circs[k];
            Vec2 w = sub(origin, C.c);
            QuadRoot q;
            q.p = Rat(2) * dot(w, d) / n2;
            q.q = (dot(w, w) - C.r2) / n2;
            Rat disc = q.disc();
            int s = disc.sign();
            if (s < 0) continue;
            if (s == 0) {
                if (q.vertex().sign() > 0) return std::nullopt;  // grazing ahead: retry
                continue;
            }
            int side_near = (dot(w, w) - C.r2).sign();
            if (side_near == 0) throw std::logic_error("cast_ray: origin on circle");
            for (int sgn : {-1, +1}) {
                // root = -p/2 + sgn sqrt(disc); keep if > 0
                if (sign_pqs(q.vertex(), Rat(sgn), disc) > 0) {
                    Hit h;
                    h.circle = k;
                    h.t = q;
                    h.t.side = sgn;
                    h.side_near = side_near;
                    hits.push_back(std::move(h));
                }
            }
        }
        // sort by parameter; roots in explicit radical form a + sgn*sqrt(disc)
        bool bad = false;
        std::sort(hits.begin(), hits.end(), [&](const Hit& h1, const Hit& h2) {
            int c = sign_two_radicals(h1.t.vertex() - h2.t.vertex(), Rat(h1.t.side), h1.t.disc(),
                                      Rat(-h2.t.side), h2.t.disc());
            if (c == 0) bad = true;
            return c < 0;
        });
        if (bad) return std::nullopt;
        // the sign of f on the segment between consecutive hits alternates per
        // circle; recompute from scratch instead: side before hit i is the
        // origin sign flipped once per earlier crossing of the same circle
        for (std::size_t i = 0; i < hits.size(); ++i) {
            int flips = 0;
            for (std::size_t j = 0; j < i; ++j)
                if (hits[j].circle == hits[i].circle) ++flips;
            if (flips % 2) hits[i].side_near = -hits[i].side_near;
        }
        // reject vertex hits and locate arcs
        for (Hit& h : hits) {
            if (circle_loop[h.circle] >= 0) continue;
            OCP hp;
            hp.rational = false;
            hp.p0 = origin;
            hp.dir = d;
            hp.t = h.t;
            Rat disc = h.t.disc();
            if (disc.is_perfect_square()) {
                Rat troot = h.t.vertex() + Rat(h.t.side) * disc.exact_sqrt();
                hp.rational = true;
                hp.x = origin.x + troot * d.x;
                hp.y = origin.y + troot * d.y;
            }
            for (int v : circle_verts[h.circle]) {
                const VertexRec& V = verts[v];
                if (V.pos.rational) {
                    if (hp.rational) {
                        if (V.pos.x == hp.x && V.pos.y == hp.y) return std::nullopt;
                    } else {
                        // rational vertex equals an irrational hit: impossible
                        continue;
                    }
                } else {
                    // a rational hit can never equal an irrational vertex
                    if (hp.rational) continue;
                    // the hit equals this vertex iff it lies on the vertex's
                    // line (then it is one of that pair, both of which are
                    // vertices of this circle)
                    Rat c0 = (origin.x - V.pos.p0.x) * V.pos.dir.y -
                             (origin.y - V.pos.p0.y) * V.pos.dir.x;
                    Rat c1 = d.x * V.pos.dir.y - d.y * V.pos.dir.x;
                    if (sign_linear_at(c0, c1, h.t) == 0) return std::nullopt;
                }
            }
            const auto& al = circle_arcs[h.circle];
            DirObj dh = dir_of(hp, circs[h.circle].c);
            int found = -1;
            for (int ai : al) {
                const ArcRec& A = arcs[ai];
                DirObj du = dir_of(verts[A.vfrom].pos, circs[h.circle].c);
                DirObj dv = dir_of(verts[A.vto].pos, circs[h.circle].c);
                if (strictly_between_ccw(du, dv, dh, al.size() == 1)) {
                    found = ai;
                    break;
                }
            }
            if (found < 0) throw std::logic_error("cast_ray: hit not on any arc");
            h.arc = found;
        }
        return hits;
    }

    /* cycle of the half-edge of a hit facing toward (near) or away from the
       ray origin */
    int hit_cycle(const Hit& h, bool near) const {
        int side = near ? h.side_near : -h.side_near;
        // side -1 (inside) belongs to the ccw half-edge
        if (h.arc >= 0) return hes[side < 0 ? he_ccw(h.arc) : he_cw(h.arc)].cycle;
        int l = circle_loop[h.circle];
        int base = static_cast<int>(2 * arcs.size());
        return hes[base + 2 * l + (side < 0 ? 0 : 1)].cycle;
    }
};

}  // namespace

/* ------------------------------------------------------------------ */
/* CellDecomp assembly                                                 */
/* ------------------------------------------------------------------ */

std::size_t CellDecomp::face_count() const {
    std::size_t n = 0;
    for (const auto& c : cells)
        if (c.kind == CellKind::Face) ++n;
    return n;
}

std::vector<char> CellDecomp::labels(const RegionExpr& r) const {
    std::vector<char> out(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) out[i] = member(r, cells[i].sample) ? 1 : 0;
    return out;
}

CellDecomp build_cells(const std::vector<Predicate>& preds_in) {
    Builder B;
    for (const Predicate& p : preds_in) {
        if (std::find(B.preds.begin(), B.preds.end(), p) != B.preds.end()) continue;
        if (p.kind == Predicate::Kind::Circle && p.r2.sign() <= 0)
            throw std::invalid_argument("build_cells: circle with nonpositive r2");
        B.preds.push_back(p);
    }
    if (B.preds.size() > 32)
        throw std::invalid_argument("build_cells: more than 32 predicates");

    for (int i = 0; i < static_cast<int>(B.preds.size()); ++i) {
        const Predicate& p = B.preds[i];
        if (p.kind == Predicate::Kind::Circle) {
            B.circle_pred_idx.push_back(i);
            B.circs.push_back({{p.c.re, p.c.im}, p.r2, i});
        } else {
            B.point_pred_idx.push_back(i);
            B.pts.push_back({p.c.re, p.c.im});
        }
    }

    // vertices from circle pairs
    for (int i = 0; i < static_cast<int>(B.circs.size()); ++i)
        for (int j = i + 1; j < static_cast<int>(B.circs.size()); ++j) B.add_pair_vertices(i, j);

    // point predicates lying on circles become vertices
    std::vector<int> isolated_pts;  // indices into B.pts
    for (int pi = 0; pi < static_cast<int>(B.pts.size()); ++pi) {
        bool on_any = false;
        for (int k = 0; k < static_cast<int>(B.circs.size()); ++k)
            if (B.circ_sign_rat(B.pts[pi], B.circs[k]) == 0) on_any = true;
        if (!on_any) {
            isolated_pts.push_back(pi);
            continue;
        }
        OCP pos;
        pos.x = B.pts[pi].x;
        pos.y = B.pts[pi].y;
        int v = B.get_or_add_vertex(pos);
        B.verts[v].points.push_back(pi);
    }

    B.complete_incidence();
    B.sort_circle_vertices();
    B.build_arcs_and_loops();
    B.trace_cycles();
    B.build_face_samples();

    /* merge boundary cycles into faces: one ray per cycle; every ray also
       stitches the faces it passes through (each segment between consecutive
       crossings lies in a single face adjacent to both bounding arcs) */
    const int INF = B.n_cycles;
    DSU dsu(B.n_cycles + 1);
    static const Vec2 ray_dirs[] = {{Rat(0), Rat(1)}, {Rat(1), Rat(2)},  {Rat(1), Rat(1)},
                                    {Rat(2), Rat(1)}, {Rat(-1), Rat(3)}, {Rat(1), Rat(0)},
                                    {Rat(3), Rat(1)}, {Rat(-2), Rat(5)}};
    std::vector<int> cycle_he(B.n_cycles, -1);
    for (int h = 0; h < static_cast<int>(B.hes.size()); ++h)
        if (cycle_he[B.hes[h].cycle] < 0) cycle_he[B.hes[h].cycle] = h;
    for (int cyc = 0; cyc < B.n_cycles; ++cyc) {
        int h = cycle_he[cyc];
        std::optional<std::vector<Builder::Hit>> hits;
        QPoint z = B.hes[h].face_sample;
        for (int attempt = 0; attempt < 32 && !hits; ++attempt) {
            if (attempt > 0 && attempt % 8 == 0) z = B.alt_face_sample(h, attempt / 8);
            hits = B.cast_ray({z.ux, z.uy}, ray_dirs[attempt % 8]);
        }
        if (!hits) throw ArrangementError("build_cells: ray casting exhausted retries");
        if (hits->empty()) {
            dsu.unite(cyc, INF);
            continue;
        }
        dsu.unite(cyc, B.hit_cycle((*hits)[0], true));
        for (std::size_t i = 0; i + 1 < hits->size(); ++i)
            dsu.unite(B.hit_cycle((*hits)[i], false), B.hit_cycle((*hits)[i + 1], true));
        dsu.unite(B.hit_cycle(hits->back(), false), INF);
    }

    /* assemble cells */
    CellDecomp cd;
    cd.preds = B.preds;
    cd.circle_preds = B.circle_pred_idx;
    cd.point_preds = B.point_pred_idx;

    auto eval_signs = [&](const QPoint& s, CellDecomp::Cell& cell) {
        cell.circle_sign.resize(B.circs.size());
        for (std::size_t k = 0; k < B.circs.size(); ++k) {
            GQ c{B.circs[k].c.x, B.circs[k].c.y};
            cell.circle_sign[k] = static_cast<std::int8_t>(s.circle_sign(c, B.circs[k].r2));
        }
        cell.point_eq.resize(B.pts.size());
        for (std::size_t k = 0; k < B.pts.size(); ++k)
            cell.point_eq[k] = s.equals_gq({B.pts[k].x, B.pts[k].y}) ? 1 : 0;
    };

    // faces: one per merged class that actually occurs
    std::map<int, int> class_cell;  // dsu class -> cell index
    auto face_cell = [&](int cls, const QPoint& sample) -> int {
        auto it = class_cell.find(cls);
        if (it != class_cell.end()) return it->second;
        CellDecomp::Cell cell;
        cell.kind = CellDecomp::CellKind::Face;
        cell.sample = sample;
        cell.unbounded = cls == dsu.find(INF);
        eval_signs(sample, cell);
        cd.cells.push_back(std::move(cell));
        int id = static_cast<int>(cd.cells.size() - 1);
        class_cell.emplace(cls, id);
        return id;
    };

    for (int h = 0; h < static_cast<int>(B.hes.size()); ++h)
        face_cell(dsu.find(B.hes[h].cycle), B.hes[h].face_sample);
    // the unbounded face might have no boundary at all (no circles)
    if (class_cell.find(dsu.find(INF)) == class_cell.end()) {
        // probe a rational point away from all point predicates
        Rat x(0);
        for (bool again = true; again;) {
            again = false;
            for (const Vec2& p : B.pts)
                if (p.x == x && p.y.is_zero()) again = true;
            if (again) x += 1;
        }
        face_cell(dsu.find(INF), QPoint(x, Rat(0)));
    }
    cd.unbounded_face = class_cell.at(dsu.find(INF));

    // consistency: all samples merged into one face agree on every predicate
    {
        std::map<int, std::vector<std::int8_t>> sig;
        for (int h = 0; h < static_cast<int>(B.hes.size()); ++h) {
            CellDecomp::Cell tmp;
            eval_signs(B.hes[h].face_sample, tmp);
            std::vector<std::int8_t> s = tmp.circle_sign;
            s.insert(s.end(), tmp.point_eq.begin(), tmp.point_eq.end());
            auto [it, fresh] = sig.emplace(dsu.find(B.hes[h].cycle), s);
            if (!fresh && it->second != s)
                throw ArrangementError("build_cells: inconsistent face merge");
        }
    }

    std::vector<int> arc_cell(B.arcs.size()), loop_cell(B.loops.size()), vert_cell(B.verts.size());
    for (std::size_t a = 0; a < B.arcs.size(); ++a) {
        CellDecomp::Cell cell;
        cell.kind = CellDecomp::CellKind::Arc;
        cell.sample = B.arcs[a].sample;
        cell.circle = B.arcs[a].circle;
        eval_signs(cell.sample, cell);
        cd.cells.push_back(std::move(cell));
        arc_cell[a] = static_cast<int>(cd.cells.size() - 1);
    }
    for (std::size_t l = 0; l < B.loops.size(); ++l) {
        CellDecomp::Cell cell;
        cell.kind = CellDecomp::CellKind::Loop;
        cell.sample = B.loops[l].sample;
        cell.circle = B.loops[l].circle;
        eval_signs(cell.sample, cell);
        cd.cells.push_back(std::move(cell));
        loop_cell[l] = static_cast<int>(cd.cells.size() - 1);
    }
    for (std::size_t v = 0; v < B.verts.size(); ++v) {
        CellDecomp::Cell cell;
        cell.kind = CellDecomp::CellKind::Vertex;
        cell.sample = B.verts[v].qpt;
        eval_signs(cell.sample, cell);
        cd.cells.push_back(std::move(cell));
        vert_cell[v] = static_cast<int>(cd.cells.size() - 1);
    }

    /* isolated points */
    std::vector<int> iso_cell;
    for (int pi : isolated_pts) {
        CellDecomp::Cell cell;
        cell.kind = CellDecomp::CellKind::IsolatedPoint;
        cell.sample = QPoint(B.pts[pi].x, B.pts[pi].y);
        eval_signs(cell.sample, cell);
        cd.cells.push_back(std::move(cell));
        iso_cell.push_back(static_cast<int>(cd.cells.size() - 1));
    }

    cd.adj.assign(cd.cells.size(), {});
    auto link = [&](int a, int b) {
        cd.adj[a].push_back(b);
        cd.adj[b].push_back(a);
    };

    for (std::size_t a = 0; a < B.arcs.size(); ++a) {
        int cin = class_cell.at(dsu.find(B.hes[B.he_ccw(static_cast<int>(a))].cycle));
        int cout = class_cell.at(dsu.find(B.hes[B.he_cw(static_cast<int>(a))].cycle));
        link(arc_cell[a], cin);
        if (cout != cin) link(arc_cell[a], cout);
        link(arc_cell[a], vert_cell[B.arcs[a].vfrom]);
        if (B.arcs[a].vto != B.arcs[a].vfrom) link(arc_cell[a], vert_cell[B.arcs[a].vto]);
    }
    int base = static_cast<int>(2 * B.arcs.size());
    for (std::size_t l = 0; l < B.loops.size(); ++l) {
        int cin = class_cell.at(dsu.find(B.hes[base + 2 * l].cycle));
        int cout = class_cell.at(dsu.find(B.hes[base + 2 * l + 1].cycle));
        link(loop_cell[l], cin);
        if (cout != cin) link(loop_cell[l], cout);
    }
    // faces touch the vertices on their boundary cycles
    for (int h = 0; h < static_cast<int>(B.hes.size()); ++h) {
        if (B.hes[h].is_loop) continue;
        int f = class_cell.at(dsu.find(B.hes[h].cycle));
        int v = vert_cell[B.he_target(h)];
        if (std::find(cd.adj[f].begin(), cd.adj[f].end(), v) == cd.adj[f].end()) link(f, v);
    }
    // isolated points sit inside a face; the origin is pinned, so degenerate
    // rays are escaped by tilting the direction
    for (std::size_t ii = 0; ii < isolated_pts.size(); ++ii) {
        const Vec2 p = B.pts[isolated_pts[ii]];
        std::optional<std::vector<Builder::Hit>> hits;
        for (int attempt = 0; attempt < 64 && !hits; ++attempt) {
            Vec2 dir = attempt < 8 ? ray_dirs[attempt]
                                   : Vec2{Rat(1), Rat(2 * attempt + 1, attempt)};
            hits = B.cast_ray(p, dir);
        }
        if (!hits) throw ArrangementError("build_cells: degenerate ray at isolated point");
        int face = hits->empty() ? cd.unbounded_face
                                 : class_cell.at(dsu.find(B.hit_cycle((*hits)[0], true)));
        link(iso_cell[ii], face);
    }

    return cd;
}

CellDecomp build_cells(const std::vector<RegionExpr>& regions) {
    std::vector<Predicate> preds;
    for (const RegionExpr& r : regions)
        for (const Predicate& p : r.preds)
            if (std::find(preds.begin(), preds.end(), p) == preds.end()) preds.push_back(p);
    return build_cells(preds);
}

/* ------------------------------------------------------------------ */
/* Regions from labeled cells                                          */
/* ------------------------------------------------------------------ */

namespace {

std::int32_t add_node_raw(RegionExpr& r, RegionExpr::Node n) {
    r.nodes.push_back(n);
    return static_cast<std::int32_t>(r.nodes.size() - 1);
}

std::int32_t cell_formula(RegionExpr& r, const CellDecomp& cd, const CellDecomp::Cell& cell) {
    using Op = RegionExpr::Node::Op;
    std::int32_t acc = -1;
    auto conj = [&](std::int32_t n) {
        acc = acc < 0 ? n : add_node_raw(r, {Op::And, acc, n, -1, false});
    };
    for (std::size_t k = 0; k < cd.circle_preds.size(); ++k) {
        std::int32_t pred = cd.circle_preds[k];
        std::int8_t s = cell.circle_sign[k];
        if (s < 0) {
            conj(add_node_raw(r, {Op::Lt, -1, -1, pred, false}));
        } else if (s == 0) {
            conj(add_node_raw(r, {Op::Eq, -1, -1, pred, false}));
        } else {
            std::int32_t lt = add_node_raw(r, {Op::Lt, -1, -1, pred, false});
            std::int32_t eq = add_node_raw(r, {Op::Eq, -1, -1, pred, false});
            std::int32_t in = add_node_raw(r, {Op::Or, lt, eq, -1, false});
            conj(add_node_raw(r, {Op::Not, in, -1, -1, false}));
        }
    }
    for (std::size_t k = 0; k < cd.point_preds.size(); ++k) {
        std::int32_t pred = cd.point_preds[k];
        std::int32_t at = add_node_raw(r, {Op::AtPt, -1, -1, pred, false});
        conj(cell.point_eq[k] ? at : add_node_raw(r, {Op::Not, at, -1, -1, false}));
    }
    if (acc < 0) acc = add_node_raw(r, {Op::Const, -1, -1, -1, true});
    return acc;
}

}  // namespace

RegionExpr region_from_labels(const CellDecomp& cd, const std::vector<char>& in_cell) {
    if (in_cell.size() != cd.cells.size())
        throw std::invalid_argument("region_from_labels: label size mismatch");
    RegionExpr r;
    r.preds = cd.preds;
    std::int32_t acc = -1;
    for (std::size_t i = 0; i < cd.cells.size(); ++i) {
        if (!in_cell[i]) continue;
        std::int32_t f = cell_formula(r, cd, cd.cells[i]);
        acc = acc < 0 ? f : add_node_raw(r, {RegionExpr::Node::Op::Or, acc, f, -1, false});
    }
    if (acc < 0) acc = add_node_raw(r, {RegionExpr::Node::Op::Const, -1, -1, -1, false});
    r.root = acc;
    // verification: the formula must reproduce the labeling on every cell
    for (std::size_t i = 0; i < cd.cells.size(); ++i) {
        if (member(r, cd.cells[i].sample) != static_cast<bool>(in_cell[i]))
            throw ArrangementError(
                "region_from_labels: labeled set not expressible over these predicates");
    }
    return r;
}

RegionExpr region_from_fn(const std::vector<Predicate>& preds,
                          const std::function<bool(const QPoint&)>& member_fn) {
    CellDecomp cd = build_cells(preds);
    std::vector<char> in(cd.cells.size());
    for (std::size_t i = 0; i < cd.cells.size(); ++i) in[i] = member_fn(cd.cells[i].sample) ? 1 : 0;
    return region_from_labels(cd, in);
}

bool region_equals(const RegionExpr& a, const RegionExpr& b) {
    CellDecomp cd = build_cells(std::vector<RegionExpr>{a, b});
    return cd.labels(a) == cd.labels(b);
}

bool region_is_empty(const RegionExpr& r) {
    CellDecomp cd = build_cells(std::vector<RegionExpr>{r});
    for (char c : cd.labels(r))
        if (c) return false;
    return true;
}

bool region_subset(const RegionExpr& a, const RegionExpr& b) {
    CellDecomp cd = build_cells(std::vector<RegionExpr>{a, b});
    std::vector<char> la = cd.labels(a), lb = cd.labels(b);
    for (std::size_t i = 0; i < la.size(); ++i)
        if (la[i] && !lb[i]) return false;
    return true;
}

namespace {

std::vector<std::vector<int>> groups_of(const CellDecomp& cd, const std::vector<char>& in) {
    std::vector<int> group(cd.cells.size(), -1);
    std::vector<std::vector<int>> out;
    for (std::size_t i = 0; i < cd.cells.size(); ++i) {
        if (!in[i] || group[i] >= 0) continue;
        std::vector<int> stack{static_cast<int>(i)}, comp;
        group[i] = static_cast<int>(out.size());
        while (!stack.empty()) {
            int c = stack.back();
            stack.pop_back();
            comp.push_back(c);
            for (int n : cd.adj[c]) {
                if (in[n] && group[n] < 0) {
                    group[n] = group[i];
                    stack.push_back(n);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

}  // namespace

std::vector<RegionExpr> region_components(const RegionExpr& r) {
    CellDecomp cd = build_cells(std::vector<RegionExpr>{r});
    std::vector<char> in = cd.labels(r);
    std::vector<RegionExpr> out;
    for (const auto& comp : groups_of(cd, in)) {
        std::vector<char> mask(cd.cells.size(), 0);
        for (int c : comp) mask[c] = 1;
        out.push_back(region_from_labels(cd, mask));
    }
    return out;
}

RegionExpr region_holes(const RegionExpr& r) {
    CellDecomp cd = build_cells(std::vector<RegionExpr>{r});
    std::vector<char> in = cd.labels(r);
    std::vector<char> comp_in(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) comp_in[i] = !in[i];
    std::vector<char> holes_mask(in.size(), 0);
    for (const auto& comp : groups_of(cd, comp_in)) {
        bool unbounded = false;
        for (int c : comp)
            if (cd.cells[c].kind == CellDecomp::CellKind::Face && cd.cells[c].unbounded)
                unbounded = true;
        if (unbounded) continue;
        for (int c : comp) holes_mask[c] = 1;
    }
    return region_from_labels(cd, holes_mask);
}

RegionExpr region_eta(const RegionExpr& r) {
    CellDecomp cd = build_cells(std::vector<RegionExpr>{r});
    std::vector<char> in = cd.labels(r);
    if (in[cd.unbounded_face])
        throw std::invalid_argument("region_eta: region is unbounded");
    return region_union(r, region_holes(r));
}

bool interior_is_empty(const RegionExpr& r) {
    CellDecomp cd = build_cells(std::vector<RegionExpr>{r});
    std::vector<char> in = cd.labels(r);
    for (std::size_t i = 0; i < cd.cells.size(); ++i)
        if (in[i] && cd.cells[i].kind == CellDecomp::CellKind::Face) return false;
    return true;
}

}  // namespace opspec
