#include <catch2/catch_amalgamated.hpp>

#include "reptile/gallery.hpp"
#include "reptile/ifs.hpp"
#include "reptile/isometry.hpp"

#include <cmath>
#include <random>

using namespace reptile;

namespace {

AffineMap map6q(Rational a, Rational b, Rational c, Rational d, Rational e, Rational f) {
    return AffineMap::from_coefficients(a, b, c, d, e, f);
}

bool on_axis(const Vec2Q& point, const Vec2Q& axis_point, const Vec2Q& axis_dir) {
    return (point - axis_point).cross(axis_dir).is_zero();
}

} // namespace

TEST_CASE("quarter turn r at V") {
    // r(x,y) = (1+y, 1-x), clockwise quarter turn with center (1,0)
    AffineMap r = map6q(0, 1, 1, -1, 0, 1);
    auto cls = classify_isometry(r);
    auto* rot = std::get_if<RationalRotation>(&cls);
    REQUIRE(rot);
    CHECK(rot->order == 4);
    CHECK(rot->angle_degrees == Catch::Approx(-90.0));
    CHECK(rot->center == Vec2Q(Rational(1), Rational(0)));
}

TEST_CASE("half turn p at the center of the long side") {
    AffineMap p = map6q(-1, 0, 1, 0, -1, 1);
    auto cls = classify_isometry(p);
    auto* rot = std::get_if<RationalRotation>(&cls);
    REQUIRE(rot);
    CHECK(rot->order == 2);
    CHECK(rot->center == Vec2Q(Rational(1, 2), Rational(1, 2)));
}

TEST_CASE("irrational rotation a = f3^-1 s f1 about the origin") {
    auto spec = gallery::pinwheel1();
    auto ifs = derive_subdivision(spec);
    AffineMap s = spec.isometries[1];
    AffineMap a = compose(invert(ifs.maps[2]), compose(s, ifs.maps[0]));
    // Explicit form: (x,y) -> ((3x+4y)/5, (-4x+3y)/5)
    CHECK(a == map6q(Rational(3, 5), Rational(4, 5), Rational(0), Rational(-4, 5),
                     Rational(3, 5), Rational(0)));
    auto cls = classify_isometry(a);
    auto* rot = std::get_if<IrrationalRotation>(&cls);
    REQUIRE(rot);
    CHECK(std::abs(rot->angle_degrees) ==
          Catch::Approx(2.0 * std::atan(0.5) * 180.0 / std::numbers::pi).epsilon(1e-12));
    CHECK(rot->center == Vec2Q(Rational(0), Rational(0)));
}

TEST_CASE("glide reflection h2") {
    AffineMap h2 = map6q(0, 1, 1, 1, 0, 0); // (y+1, x)
    auto cls = classify_isometry(h2);
    auto* glide = std::get_if<GlideReflection>(&cls);
    REQUIRE(glide);
    CHECK(glide->shift_length_squared == Rational(1, 2));
    // Axis: direction (1,1) through (1/2, 0)
    Vec2Q expected_dir{Rational(1), Rational(1)};
    CHECK(glide->axis_direction == expected_dir);
    CHECK(on_axis(Vec2Q(Rational(1, 2), Rational(0)), glide->axis_point, glide->axis_direction));
}

TEST_CASE("the point-neighbor rotation (.8x-.6y+1, .6x+.8y-1)") {
    AffineMap h = map6q(Rational(4, 5), Rational(-3, 5), Rational(1), Rational(3, 5),
                        Rational(4, 5), Rational(-1));
    auto cls = classify_isometry(h);
    auto* rot = std::get_if<IrrationalRotation>(&cls);
    REQUIRE(rot);
    CHECK(std::abs(rot->angle_degrees) == Catch::Approx(36.86989764584402).epsilon(1e-12));
    // maps L = (3/5, 4/5) to V = (1, 0), exactly
    CHECK(h(Vec2Q(Rational(3, 5), Rational(4, 5))) == Vec2Q(Rational(1), Rational(0)));
    CHECK(rot->center == Vec2Q(Rational(2), Rational(1)));
}

TEST_CASE("identity, translation, reflection cases") {
    CHECK(std::holds_alternative<Identity>(classify_isometry(AffineMap::identity())));

    AffineMap tr = map6q(1, 0, 3, 0, 1, -2);
    auto cls = classify_isometry(tr);
    auto* t = std::get_if<Translation>(&cls);
    REQUIRE(t);
    CHECK(t->offset == Vec2Q(Rational(3), Rational(-2)));

    AffineMap mirror = map6q(1, 0, 0, 0, -1, 0); // reflect at y = 0
    auto cls2 = classify_isometry(mirror);
    auto* refl = std::get_if<Reflection>(&cls2);
    REQUIRE(refl);
    CHECK(refl->axis_direction == Vec2Q(Rational(1), Rational(0)));
    CHECK(on_axis(Vec2Q(Rational(0), Rational(0)), refl->axis_point, refl->axis_direction));

    AffineMap expanding = map6q(2, 0, 0, 0, 2, 0);
    CHECK_THROWS_AS(classify_isometry(expanding), NotIsometry);
}

TEST_CASE("Niven check: Pythagorean rotations are irrational, signed permutations are not") {
    // cos = 3/5 and 5/13 are rational but not in {0, +-1/2, +-1}.
    std::vector<std::pair<long long, std::array<long long, 2>>> triples = {
        {5, {3, 4}}, {5, {4, 3}}, {13, {5, 12}}, {13, {12, 5}}};
    for (auto& [hyp, legs] : triples) {
        AffineMap rot = map6q(Rational(legs[0], hyp), Rational(-legs[1], hyp), Rational(0),
                              Rational(legs[1], hyp), Rational(legs[0], hyp), Rational(0));
        CHECK(std::holds_alternative<IrrationalRotation>(classify_isometry(rot)));
    }

    int rotations = 0, reflections = 0;
    for (int sx : {-1, 1}) {
        for (int sy : {-1, 1}) {
            for (bool swap : {false, true}) {
                AffineMap m = swap ? map6q(0, sx, 0, sy, 0, 0) : map6q(sx, 0, 0, 0, sy, 0);
                auto cls = classify_isometry(m);
                if (auto* rot = std::get_if<RationalRotation>(&cls)) {
                    CHECK((rot->order == 2 || rot->order == 4));
                    ++rotations;
                } else if (std::holds_alternative<Identity>(cls)) {
                    ++rotations; // order 1
                } else {
                    CHECK(std::holds_alternative<Reflection>(cls));
                    ++reflections;
                }
            }
        }
    }
    CHECK(rotations == 4);
    CHECK(reflections == 4);
}

TEST_CASE("conjugating a rational rotation by a translation preserves order and angle") {
    std::mt19937_64 rng(5);
    std::vector<AffineMap> rotations = {
        map6q(0, 1, 1, -1, 0, 1),   // order 4
        map6q(-1, 0, 1, 0, -1, 1),  // order 2
    };
    for (const AffineMap& rot : rotations) {
        auto base = classify_isometry(rot);
        auto* base_rot = std::get_if<RationalRotation>(&base);
        REQUIRE(base_rot);
        for (int k = 0; k < 20; ++k) {
            Vec2Q v{Rational(static_cast<long long>(rng() % 19) - 9,
                             static_cast<long long>(rng() % 5) + 1),
                    Rational(static_cast<long long>(rng() % 19) - 9,
                             static_cast<long long>(rng() % 5) + 1)};
            AffineMap shift = AffineMap{Mat2Q::identity(), v};
            AffineMap conj = compose(shift, compose(rot, invert(shift)));
            auto cls = classify_isometry(conj);
            auto* crot = std::get_if<RationalRotation>(&cls);
            REQUIRE(crot);
            CHECK(crot->order == base_rot->order);
            CHECK(crot->angle_degrees == base_rot->angle_degrees);
            CHECK(crot->center == shift(base_rot->center));
        }
    }
}
