#include <catch2/catch_amalgamated.hpp>

#include "reptile/polygon.hpp"

using namespace reptile;

namespace {
Vec2Q pt(long long xn, long long xd, long long yn, long long yd) {
    return {Rational(xn, xd), Rational(yn, yd)};
}
Vec2Q pti(long long x, long long y) { return {Rational(x), Rational(y)}; }
} // namespace

TEST_CASE("convex validation") {
    ConvexBody square{pti(0, 0), pti(1, 0), pti(1, 1), pti(0, 1)};
    CHECK_NOTHROW(geo::validate_convex(square));

    ConvexBody clockwise{pti(0, 0), pti(0, 1), pti(1, 1), pti(1, 0)};
    CHECK_THROWS_AS(geo::validate_convex(clockwise), NotConvex);

    ConvexBody dart{pti(0, 0), pti(2, 0), pt(1, 1, 1, 2), pti(2, 2)};
    CHECK_THROWS_AS(geo::validate_convex(dart), NotConvex);

    ConvexBody segment{pti(0, 0), pti(1, 1)};
    CHECK_THROWS_AS(geo::validate_convex(segment), NotConvex);
    CHECK_NOTHROW(geo::validate_convex(segment, /*allow_segment=*/true));
}

TEST_CASE("containment includes the boundary") {
    ConvexBody tri{pti(0, 0), pti(4, 0), pti(0, 4)};
    CHECK(geo::contains_point(tri, pti(1, 1)));
    CHECK(geo::contains_point(tri, pti(2, 2)));  // on the hypotenuse
    CHECK(geo::contains_point(tri, pti(0, 0)));  // vertex
    CHECK_FALSE(geo::contains_point(tri, pti(3, 2)));
    CHECK_FALSE(geo::contains_point(tri, pti(-1, 0)));
}

TEST_CASE("segment containment") {
    ConvexBody seg{pti(0, 0), pti(2, 2)};
    CHECK(geo::contains_point(seg, pti(1, 1)));
    CHECK(geo::contains_point(seg, pti(2, 2)));
    CHECK_FALSE(geo::contains_point(seg, pti(3, 3)));
    CHECK_FALSE(geo::contains_point(seg, pti(1, 0)));
}

TEST_CASE("convex hull of a rational point set") {
    std::vector<Vec2Q> pts{pti(0, 0), pti(2, 0),     pti(2, 2),    pti(0, 2),
                           pti(1, 1), pt(1, 2, 1, 2), pti(1, 0)};
    auto hull = geo::convex_hull(pts);
    REQUIRE(hull.size() == 4);
    CHECK(geo::diameter_squared(hull) == Rational(8));
}

TEST_CASE("interiors_disjoint: polygons") {
    ConvexBody a{pti(0, 0), pti(2, 0), pti(2, 2), pti(0, 2)};
    ConvexBody b{pti(2, 0), pti(4, 0), pti(4, 2), pti(2, 2)};   // shares an edge
    ConvexBody c{pti(1, 1), pti(3, 1), pti(3, 3), pti(1, 3)};   // overlaps a
    ConvexBody d{pti(2, 2), pti(3, 2), pti(3, 3)};              // touches a at a vertex
    CHECK(geo::interiors_disjoint(a, b));
    CHECK_FALSE(geo::interiors_disjoint(a, c));
    CHECK(geo::interiors_disjoint(a, d));
    CHECK_FALSE(geo::interiors_disjoint(a, a));
}

TEST_CASE("interiors_disjoint: segments") {
    // segment semantics: collinear overlap is not disjoint
    ConvexBody s1{pti(0, 0), pti(2, 0)};
    ConvexBody s2{pti(1, 0), pti(3, 0)};
    ConvexBody s3{pti(2, 0), pti(4, 0)};
    CHECK_FALSE(geo::interiors_disjoint(s1, s2));
    CHECK(geo::interiors_disjoint(s1, s3)); // touch at one point
    ConvexBody cross1{pti(0, 0), pti(2, 2)};
    ConvexBody cross2{pti(0, 2), pti(2, 0)};
    CHECK_FALSE(geo::interiors_disjoint(cross1, cross2));
}

TEST_CASE("segment inside a polygon is not disjoint from it") {
    ConvexBody a{pti(0, 0), pti(4, 0), pti(4, 4), pti(0, 4)};
    ConvexBody inside{pti(1, 1), pti(2, 2)};
    ConvexBody on_edge{pti(1, 0), pti(2, 0)};
    CHECK_FALSE(geo::interiors_disjoint(a, inside));
    CHECK(geo::interiors_disjoint(a, on_edge));
}
