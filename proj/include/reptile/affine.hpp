#pragma once

/// Exact planar affine maps x -> A*x + t over rationals.
///
/// AffineMap is the universal currency of the library: expansions, tile
/// isometries, subdivision contractions and neighbor maps are all values of
/// this type. Composition, inversion and application are exact; equality is
/// structural equality of the six canonical entries, which makes maps
/// hashable and deterministically sortable via encode().

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "reptile/errors.hpp"
#include "reptile/vec2.hpp"

namespace reptile {

/// 2x2 rational matrix, row-major.
struct Mat2Q {
    Rational m00, m01;
    Rational m10, m11;

    static Mat2Q identity() { return {1, 0, 0, 1}; }

    Vec2Q operator*(const Vec2Q& v) const {
        return {m00 * v.x + m01 * v.y, m10 * v.x + m11 * v.y};
    }

    Mat2Q operator*(const Mat2Q& o) const {
        return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
                m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
    }

    bool operator==(const Mat2Q& o) const {
        return m00 == o.m00 && m01 == o.m01 && m10 == o.m10 && m11 == o.m11;
    }

    Rational det() const { return m00 * m11 - m01 * m10; }
    Rational trace() const { return m00 + m11; }
};

struct AffineMap {
    Mat2Q linear = Mat2Q::identity();
    Vec2Q translation;

    AffineMap() = default;
    AffineMap(Mat2Q lin, Vec2Q t) : linear(std::move(lin)), translation(std::move(t)) {}

    static AffineMap identity() { return {}; }

    /// Map from row entries (a b; d e) and translation (c, f), i.e.
    /// (x,y) -> (a x + b y + c, d x + e y + f).
    static AffineMap from_coefficients(Rational a, Rational b, Rational c,
                                       Rational d, Rational e, Rational f) {
        return {{std::move(a), std::move(b), std::move(d), std::move(e)},
                {std::move(c), std::move(f)}};
    }

    Vec2Q apply(const Vec2Q& p) const { return linear * p + translation; }
    Vec2Q operator()(const Vec2Q& p) const { return apply(p); }

    bool operator==(const AffineMap& o) const {
        return linear == o.linear && translation == o.translation;
    }
    bool operator!=(const AffineMap& o) const { return !(*this == o); }

    bool is_identity() const { return *this == AffineMap(); }

    /// Canonical encoding of the six entries; equal maps encode equally, so
    /// the string doubles as hash key and deterministic sort key.
    std::string encode() const {
        return linear.m00.str() + "|" + linear.m01.str() + "|" + linear.m10.str() + "|" +
               linear.m11.str() + "|" + translation.x.str() + "|" + translation.y.str();
    }
};

/// x -> f(g(x)), exactly.
inline AffineMap compose(const AffineMap& f, const AffineMap& g) {
    return {f.linear * g.linear, f.linear * g.translation + f.translation};
}

/// Exact inverse. Throws SingularMap when det = 0.
inline AffineMap invert(const AffineMap& f) {
    Rational det = f.linear.det();
    if (det.is_zero()) throw SingularMap();
    Mat2Q inv{f.linear.m11 / det, -f.linear.m01 / det,
              -f.linear.m10 / det, f.linear.m00 / det};
    return {inv, -(inv * f.translation)};
}

/// r^2 such that A^T A = r^2 I, or nullopt when the linear part is not a
/// (nonzero) similarity.
inline std::optional<Rational> similarity_ratio_squared(const AffineMap& f) {
    const Mat2Q& a = f.linear;
    Rational c0 = a.m00 * a.m00 + a.m10 * a.m10; // col0 . col0
    Rational c1 = a.m01 * a.m01 + a.m11 * a.m11; // col1 . col1
    Rational mix = a.m00 * a.m01 + a.m10 * a.m11;
    if (c0 != c1 || !mix.is_zero() || c0.is_zero()) return std::nullopt;
    return c0;
}

inline bool is_isometry(const AffineMap& f) {
    auto r2 = similarity_ratio_squared(f);
    return r2 && *r2 == Rational(1);
}

} // namespace reptile

template <>
struct std::hash<reptile::AffineMap> {
    std::size_t operator()(const reptile::AffineMap& m) const noexcept {
        return std::hash<std::string>{}(m.encode());
    }
};
