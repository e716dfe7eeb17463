#pragma once

/// Exact convex geometry on rational points: containment, hulls, diameters
/// and disjoint-interior tests. No floating point anywhere in this header.

#include <algorithm>
#include <span>
#include <vector>

#include "reptile/affine.hpp"
#include "reptile/errors.hpp"
#include "reptile/vec2.hpp"

namespace reptile {

/// A convex body given by its vertices. A proper polygon has >= 3 vertices in
/// counterclockwise order; two vertices form a segment (used for degenerate
/// boundary pieces such as the straight edges of a square).
using ConvexBody = std::vector<Vec2Q>;

namespace geo {

inline Rational orient(const Vec2Q& a, const Vec2Q& b, const Vec2Q& c) {
    return (b - a).cross(c - a);
}

inline bool all_collinear(std::span<const Vec2Q> pts) {
    for (std::size_t i = 2; i < pts.size(); ++i)
        if (!orient(pts[0], pts[1], pts[i]).is_zero()) return false;
    return pts.size() >= 2;
}

/// Validates a convex body: CCW convex polygon, or a segment when
/// allow_segment is set. Throws NotConvex otherwise.
inline void validate_convex(std::span<const Vec2Q> verts, bool allow_segment = false) {
    if (verts.size() < 2) throw NotConvex("fewer than two vertices");
    for (std::size_t i = 0; i < verts.size(); ++i)
        if (verts[i] == verts[(i + 1) % verts.size()])
            throw NotConvex("repeated consecutive vertex");
    if (verts.size() == 2 || all_collinear(verts)) {
        if (!allow_segment) throw NotConvex("degenerate polygon");
        return;
    }
    // Every vertex must lie in the closed left half-plane of every edge;
    // this also rejects self-intersecting vertex orders.
    Rational area2;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        const Vec2Q& a = verts[i];
        const Vec2Q& b = verts[(i + 1) % verts.size()];
        for (const Vec2Q& p : verts)
            if (orient(a, b, p).sign() < 0)
                throw NotConvex("vertices not convex in counterclockwise order");
        area2 += a.cross(b);
    }
    if (area2.sign() <= 0) throw NotConvex("vertices not in counterclockwise order");
}

inline bool point_on_segment(const Vec2Q& a, const Vec2Q& b, const Vec2Q& p) {
    if (!orient(a, b, p).is_zero()) return false;
    Vec2Q d = b - a;
    Rational s = (p - a).dot(d);
    return s >= Rational(0) && s <= d.norm_squared();
}

/// Containment in a convex body; boundary contact counts as inside. Works
/// for either vertex orientation (images of CCW polygons under reflections
/// come out CW).
inline bool contains_point(std::span<const Vec2Q> body, const Vec2Q& p) {
    if (body.size() == 2 || all_collinear(body)) {
        // Segment semantics: test against the extreme points.
        auto [lo, hi] = std::minmax_element(body.begin(), body.end());
        return point_on_segment(*lo, *hi, p);
    }
    Rational area2;
    for (std::size_t i = 0; i < body.size(); ++i)
        area2 += body[i].cross(body[(i + 1) % body.size()]);
    int orientation = area2.sign();
    for (std::size_t i = 0; i < body.size(); ++i) {
        const Vec2Q& a = body[i];
        const Vec2Q& b = body[(i + 1) % body.size()];
        if (orient(a, b, p).sign() * orientation < 0) return false;
    }
    return true;
}

inline std::vector<Vec2Q> map_body(const AffineMap& f, std::span<const Vec2Q> body) {
    std::vector<Vec2Q> out;
    out.reserve(body.size());
    for (const Vec2Q& v : body) out.push_back(f(v));
    return out;
}

/// All vertices of `inner` contained in convex `outer`; for convex bodies
/// this is exactly inclusion of the bodies.
inline bool body_in_body(std::span<const Vec2Q> inner, std::span<const Vec2Q> outer) {
    for (const Vec2Q& v : inner)
        if (!contains_point(outer, v)) return false;
    return true;
}

/// Convex hull (Andrew monotone chain), CCW, collinear points dropped.
inline std::vector<Vec2Q> convex_hull(std::vector<Vec2Q> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;
    std::vector<Vec2Q> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && orient(hull[k - 2], hull[k - 1], pts[i]).sign() <= 0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && orient(hull[k - 2], hull[k - 1], pts[i]).sign() <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

inline Rational diameter_squared(std::span<const Vec2Q> pts) {
    Rational best;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = std::max(best, distance_squared(pts[i], pts[j]),
                            [](const Rational& a, const Rational& b) { return a < b; });
    return best;
}

namespace detail {

inline void project(std::span<const Vec2Q> body, const Vec2Q& axis, Rational& lo, Rational& hi) {
    lo = hi = body.front().dot(axis);
    for (std::size_t i = 1; i < body.size(); ++i) {
        Rational v = body[i].dot(axis);
        if (v < lo) lo = v;
        if (v > hi) hi = v;
    }
}

inline void collect_axes(std::span<const Vec2Q> body, std::vector<Vec2Q>& axes) {
    for (std::size_t i = 0; i < body.size(); ++i) {
        Vec2Q e = body[(i + 1) % body.size()] - body[i];
        if (e.is_zero()) continue;
        axes.push_back({-e.y, e.x}); // edge normal
        axes.push_back(e);           // edge direction, for collinear-segment cases
    }
}

} // namespace detail

/// True when the relative interiors of two convex bodies are disjoint;
/// touching along boundary points or edges still counts as disjoint.
/// Separating-axis test over edge normals and directions of both bodies,
/// with non-strict contact allowed.
inline bool interiors_disjoint(std::span<const Vec2Q> a, std::span<const Vec2Q> b) {
    std::vector<Vec2Q> axes;
    detail::collect_axes(a, axes);
    detail::collect_axes(b, axes);
    for (const Vec2Q& axis : axes) {
        Rational alo, ahi, blo, bhi;
        detail::project(a, axis, alo, ahi);
        detail::project(b, axis, blo, bhi);
        // Both bodies flat on the same line: this axis carries no
        // information about their relative interiors within that line.
        if (alo == ahi && blo == bhi && alo == blo) continue;
        if (ahi <= blo || bhi <= alo) return true;
    }
    return false;
}

} // namespace geo

} // namespace reptile
