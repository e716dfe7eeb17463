#pragma once

/// Built-in replication-tile structures.
///
/// pinwheel1: the fractal pinwheel; expansion (x,y) -> (2x+y, x-2y) with
/// five lattice symmetries. pinwheel2: the same tile with pieces 2 and 3
/// reflected at y = 1/2, a different subdivision of the identical set.
/// square4: the unit square cut into quarters, the crystallographic control
/// case. Each entry ships a certified convex hull of its tile, which gives
/// the exact candidate-search bound and the render outline.

#include <string>
#include <utility>
#include <vector>

#include "reptile/errors.hpp"
#include "reptile/ifs.hpp"
#include "reptile/polygon.hpp"

namespace reptile {
namespace gallery {

namespace detail {

inline AffineMap map6(long long a, long long b, long long c, long long d, long long e,
                      long long f) {
    return AffineMap::from_coefficients(Rational(a), Rational(b), Rational(c), Rational(d),
                                        Rational(e), Rational(f));
}

inline Vec2Q pt(long long xn, long long xd, long long yn, long long yd) {
    return {Rational(xn, xd), Rational(yn, yd)};
}

/// Hull of the pinwheel tile: the enlarged tile's hexagonal hull pulled
/// back through the expansion, counterclockwise.
inline ConvexBody pinwheel_hull() {
    return {pt(0, 1, 0, 1),  pt(2, 5, -1, 5), pt(3, 5, -1, 5),
            pt(1, 1, 0, 1),  pt(1, 1, 1, 1),  pt(3, 5, 4, 5)};
}

} // namespace detail

inline ReptileSpec pinwheel1() {
    ReptileSpec spec;
    spec.name = "pinwheel1";
    spec.expansion = detail::map6(2, 1, 0, 1, -2, 0);    // (2x+y, x-2y)
    spec.isometries = {
        AffineMap::identity(),
        detail::map6(0, 1, 1, 1, 0, 0),   // h2: (y+1, x)
        detail::map6(0, -1, 2, -1, 0, 1), // h3: (2-y, 1-x)
        detail::map6(1, 0, 1, 0, -1, 0),  // h4: (x+1, -y)
        detail::map6(0, 1, 2, -1, 0, 0),  // h5: (y+2, -x)
    };
    spec.hull = detail::pinwheel_hull();
    return spec;
}

inline ReptileSpec pinwheel2() {
    ReptileSpec spec = pinwheel1();
    spec.name = "pinwheel2";
    spec.isometries[1] = detail::map6(0, 1, 1, -1, 0, 1); // (y+1, 1-x)
    spec.isometries[2] = detail::map6(0, -1, 2, 1, 0, 0); // (2-y, x)
    return spec;
}

inline ReptileSpec square4() {
    ReptileSpec spec;
    spec.name = "square4";
    spec.expansion = detail::map6(2, 0, 0, 0, 2, 0);
    spec.isometries = {
        AffineMap::identity(),
        detail::map6(1, 0, 1, 0, 1, 0), // +(1,0)
        detail::map6(1, 0, 0, 0, 1, 1), // +(0,1)
        detail::map6(1, 0, 1, 0, 1, 1), // +(1,1)
    };
    spec.hull = ConvexBody{detail::pt(0, 1, 0, 1), detail::pt(1, 1, 0, 1),
                           detail::pt(1, 1, 1, 1), detail::pt(0, 1, 1, 1)};
    return spec;
}

inline std::vector<std::string> names() { return {"pinwheel1", "pinwheel2", "square4"}; }

inline ReptileSpec by_name(const std::string& name) {
    if (name == "pinwheel1") return pinwheel1();
    if (name == "pinwheel2") return pinwheel2();
    if (name == "square4") return square4();
    throw UnknownGalleryName(name);
}

/// The eleven named edge-neighbor maps of the pinwheel structure, built from
/// their defining compositions: p = h2^-1 h3 (half turn), r = h3^-1 h4
/// (quarter turn at V), the glide s = h2 with the derived glides t and
/// irrational rotations a, b one subdivision level down.
inline std::vector<std::pair<AffineMap, std::string>> pinwheel_edge_names() {
    ReptileSpec spec = pinwheel1();
    SubdivisionIFS ifs = derive_subdivision(spec);
    const AffineMap& h2 = spec.isometries[1];
    const AffineMap& h3 = spec.isometries[2];
    const AffineMap& h4 = spec.isometries[3];
    const AffineMap& f1 = ifs.maps[0];
    const AffineMap& f2 = ifs.maps[1];
    const AffineMap& f3 = ifs.maps[2];
    const AffineMap& f5 = ifs.maps[4];

    AffineMap p = compose(invert(h2), h3);
    AffineMap r = compose(invert(h3), h4);
    AffineMap s = h2;
    AffineMap t = compose(invert(f5), compose(s, f1));
    AffineMap a = compose(invert(f3), compose(s, f1));
    AffineMap b = compose(invert(f5), compose(s, f2));

    std::vector<std::pair<AffineMap, std::string>> out;
    out.emplace_back(p, "p");
    out.emplace_back(r, "r");
    out.emplace_back(invert(r), "r-");
    out.emplace_back(s, "s");
    out.emplace_back(invert(s), "s-");
    out.emplace_back(t, "t");
    out.emplace_back(invert(t), "t-");
    out.emplace_back(a, "a");
    out.emplace_back(invert(a), "a-");
    out.emplace_back(b, "b");
    out.emplace_back(invert(b), "b-");
    return out;
}

/// Convex hulls of the boundary pieces P, R, R- of the rational-rotation
/// component: the quadrilaterals O L W L', W V K K', O V H H' (stored
/// counterclockwise), which certify the open set condition of the
/// graph-directed boundary system.
inline std::vector<std::pair<std::string, ConvexBody>> pinwheel_boundary_quads() {
    using detail::pt;
    return {
        {"p", {pt(0, 1, 0, 1), pt(2, 5, 1, 5), pt(1, 1, 1, 1), pt(3, 5, 4, 5)}},
        {"r", {pt(1, 1, 1, 1), pt(4, 5, 3, 5), pt(4, 5, 2, 5), pt(1, 1, 0, 1)}},
        {"r-", {pt(0, 1, 0, 1), pt(2, 5, -1, 5), pt(3, 5, -1, 5), pt(1, 1, 0, 1)}},
    };
}

} // namespace gallery
} // namespace reptile
