#pragma once

/// Exact classification of planar isometries.
///
/// Rational rotations are recognized by Niven's theorem: a rational cosine
/// belongs to a rotation of finite order iff cos t is one of 0, +-1/2, +-1.
/// Everything is decided on rational data; the reported angles in degrees
/// are for human consumption only.

#include <cmath>
#include <numbers>
#include <string>
#include <variant>

#include "reptile/affine.hpp"
#include "reptile/errors.hpp"

namespace reptile {

struct Identity {};

struct Translation {
    Vec2Q offset;
};

struct RationalRotation {
    int order = 1;            // order as a group element: 2, 3, 4 or 6
    double angle_degrees = 0; // signed, in (-180, 180]
    Vec2Q center;
};

struct IrrationalRotation {
    double angle_degrees = 0;
    Vec2Q center;
};

struct Reflection {
    Vec2Q axis_point;
    Vec2Q axis_direction; // primitive integer direction, first nonzero entry > 0
};

struct GlideReflection {
    Vec2Q axis_point;
    Vec2Q axis_direction;
    Rational shift_length_squared; // squared length of the glide vector
};

using IsometryClass =
    std::variant<Identity, Translation, RationalRotation, IrrationalRotation,
                 Reflection, GlideReflection>;

namespace detail {

/// Scales a rational direction to a primitive integer vector with canonical
/// sign (first nonzero coordinate positive).
inline Vec2Q primitive_direction(const Vec2Q& d) {
    BigInt a = d.x.numerator() * d.y.denominator();
    BigInt b = d.y.numerator() * d.x.denominator();
    BigInt g = boost::multiprecision::gcd(boost::multiprecision::abs(a),
                                          boost::multiprecision::abs(b));
    if (g == 0) throw Error("zero direction");
    a /= g;
    b /= g;
    if (a < 0 || (a == 0 && b < 0)) {
        a = -a;
        b = -b;
    }
    return {Rational(a), Rational(b)};
}

inline double angle_degrees_of(const Rational& cos_t, const Rational& sin_t) {
    return std::atan2(sin_t.to_double(), cos_t.to_double()) * 180.0 / std::numbers::pi;
}

} // namespace detail

/// Exhaustive, mutually exclusive classification of an exact planar isometry.
/// Throws NotIsometry unless similarity_ratio_squared(f) = 1.
inline IsometryClass classify_isometry(const AffineMap& f) {
    if (!is_isometry(f)) throw NotIsometry();
    const Mat2Q& r = f.linear;
    const Vec2Q& t = f.translation;

    if (r.det() == Rational(1)) {
        if (r == Mat2Q::identity()) {
            if (t.is_zero()) return Identity{};
            return Translation{t};
        }
        // Rotation matrix ((c, -s), (s, c)); center solves (I - R) x = t.
        Rational cos_t = r.m00;
        Rational sin_t = r.m10;
        Mat2Q i_minus_r{Rational(1) - r.m00, -r.m01, -r.m10, Rational(1) - r.m11};
        Rational det = i_minus_r.det(); // = 2 - 2 cos, nonzero since R != I
        Vec2Q center{(t.x * i_minus_r.m11 - t.y * i_minus_r.m01) / det,
                     (t.y * i_minus_r.m00 - t.x * i_minus_r.m10) / det};
        double angle = detail::angle_degrees_of(cos_t, sin_t);
        // Niven: finite order iff cos is -1, -1/2, 0, 1/2 (cos = 1 is R = I).
        int order = 0;
        if (cos_t == Rational(-1)) order = 2;
        else if (cos_t == Rational(0)) order = 4;
        else if (cos_t == Rational(1, 2)) order = 6;
        else if (cos_t == Rational(-1, 2)) order = 3;
        if (order != 0) return RationalRotation{order, angle, center};
        return IrrationalRotation{angle, center};
    }

    // det = -1: reflection part is symmetric, R = ((a, b), (b, -a)).
    // f o f translates by (R + I) t = twice the glide vector, and the point
    // (t - v)/2 is fixed by the glide-free reflection.
    Vec2Q glide{(r.m00 + Rational(1)) * t.x / Rational(2) + r.m01 * t.y / Rational(2),
                r.m10 * t.x / Rational(2) + (r.m11 + Rational(1)) * t.y / Rational(2)};
    Vec2Q axis_point = (t - glide) / Rational(2);
    // Axis direction spans the +1 eigenspace: a nonzero column of R + I.
    Vec2Q col0{r.m00 + Rational(1), r.m10};
    Vec2Q col1{r.m01, r.m11 + Rational(1)};
    Vec2Q dir = detail::primitive_direction(col0.is_zero() ? col1 : col0);
    if (glide.is_zero()) return Reflection{axis_point, dir};
    return GlideReflection{axis_point, dir, glide.norm_squared()};
}

/// Short human-readable tag, used in reports and DOT labels.
inline std::string isometry_kind_name(const IsometryClass& c) {
    struct V {
        std::string operator()(const Identity&) const { return "identity"; }
        std::string operator()(const Translation&) const { return "translation"; }
        std::string operator()(const RationalRotation&) const { return "rational_rotation"; }
        std::string operator()(const IrrationalRotation&) const { return "irrational_rotation"; }
        std::string operator()(const Reflection&) const { return "reflection"; }
        std::string operator()(const GlideReflection&) const { return "glide_reflection"; }
    };
    return std::visit(V{}, c);
}

} // namespace reptile
