#pragma once

#include <ostream>
#include <string>

#include "reptile/rational.hpp"

namespace reptile {

/// Point or vector in the plane with exact rational coordinates.
struct Vec2Q {
    Rational x;
    Rational y;

    Vec2Q() = default;
    Vec2Q(Rational x_, Rational y_) : x(std::move(x_)), y(std::move(y_)) {}

    Vec2Q operator+(const Vec2Q& o) const { return {x + o.x, y + o.y}; }
    Vec2Q operator-(const Vec2Q& o) const { return {x - o.x, y - o.y}; }
    Vec2Q operator-() const { return {-x, -y}; }
    Vec2Q operator*(const Rational& s) const { return {x * s, y * s}; }
    Vec2Q operator/(const Rational& s) const { return {x / s, y / s}; }

    bool operator==(const Vec2Q& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Vec2Q& o) const { return !(*this == o); }

    /// Lexicographic order (x, then y); used for canonical point ordering.
    bool operator<(const Vec2Q& o) const {
        if (x != o.x) return x < o.x;
        return y < o.y;
    }

    bool is_zero() const { return x.is_zero() && y.is_zero(); }

    Rational dot(const Vec2Q& o) const { return x * o.x + y * o.y; }
    Rational cross(const Vec2Q& o) const { return x * o.y - y * o.x; }
    Rational norm_squared() const { return x * x + y * y; }

    std::string str() const { return "(" + x.str() + ", " + y.str() + ")"; }
};

inline std::ostream& operator<<(std::ostream& os, const Vec2Q& v) { return os << v.str(); }

inline Rational distance_squared(const Vec2Q& a, const Vec2Q& b) {
    return (a - b).norm_squared();
}

} // namespace reptile
