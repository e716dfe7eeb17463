#pragma once

/// Replication-tile specifications and the derived contraction system.
///
/// A ReptileSpec is an expansion g plus isometries h_1..h_m with
/// g(A) = h_1(A) u ... u h_m(A); applying g^-1 turns it into the iterated
/// function system f_i = g^-1 h_i whose attractor is the tile itself.
/// This header also computes certified geometric bounds: exact fixed
/// points, convex-hull invariance certificates and diameter bounds from
/// cylinder covers.

#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "reptile/affine.hpp"
#include "reptile/errors.hpp"
#include "reptile/polygon.hpp"

namespace reptile {

struct ReptileSpec {
    std::string name;
    AffineMap expansion;                 // g
    std::vector<AffineMap> isometries;   // h_1..h_m
    std::optional<ConvexBody> hull;      // optional certified hull of the tile, CCW
};

struct ValidationReport {
    bool valid = false;
    std::size_t piece_count = 0;                       // m
    std::optional<Rational> expansion_ratio_squared;   // nullopt if not a similarity
    bool ratio_matches_piece_count = false;
    std::vector<bool> isometry_ok;                     // per h_i
    std::vector<int> determinant_sign;                 // per h_i, +1 or -1 (0 if singular)
    std::vector<std::string> violations;
};

/// Checks the volume relation ratio^2 = m and that every h_i is an isometry.
/// Collects violations; never throws.
inline ValidationReport validate(const ReptileSpec& spec) {
    ValidationReport rep;
    rep.piece_count = spec.isometries.size();
    if (rep.piece_count == 0) rep.violations.push_back("no isometries given");

    rep.expansion_ratio_squared = similarity_ratio_squared(spec.expansion);
    if (!rep.expansion_ratio_squared) {
        rep.violations.push_back("expansion is not a similarity");
    } else {
        rep.ratio_matches_piece_count =
            *rep.expansion_ratio_squared == Rational(static_cast<long long>(rep.piece_count));
        if (!rep.ratio_matches_piece_count)
            rep.violations.push_back("expansion ratio^2 = " + rep.expansion_ratio_squared->str() +
                                     " does not equal piece count " +
                                     std::to_string(rep.piece_count));
    }

    for (std::size_t i = 0; i < spec.isometries.size(); ++i) {
        const AffineMap& h = spec.isometries[i];
        bool ok = is_isometry(h);
        rep.isometry_ok.push_back(ok);
        rep.determinant_sign.push_back(h.linear.det().sign());
        if (!ok)
            rep.violations.push_back("h_" + std::to_string(i + 1) + " is not an isometry");
    }

    if (spec.hull) {
        try {
            geo::validate_convex(*spec.hull);
        } catch (const NotConvex& e) {
            rep.violations.push_back(std::string("hull: ") + e.what());
        }
    }

    rep.valid = rep.violations.empty();
    return rep;
}

struct SubdivisionIFS {
    std::vector<AffineMap> maps;         // f_i = g^-1 h_i
    Rational contraction_ratio_squared;  // 1/m
    AffineMap expansion;                 // g, kept for enlarged-system checks
};

inline SubdivisionIFS derive_subdivision(const ReptileSpec& spec) {
    AffineMap g_inv = invert(spec.expansion); // throws SingularMap
    SubdivisionIFS ifs;
    ifs.expansion = spec.expansion;
    ifs.maps.reserve(spec.isometries.size());
    for (const AffineMap& h : spec.isometries) ifs.maps.push_back(compose(g_inv, h));
    auto r2 = similarity_ratio_squared(ifs.maps.empty() ? g_inv : ifs.maps.front());
    ifs.contraction_ratio_squared = r2 ? *r2 : Rational(0);
    return ifs;
}

/// An address word over 1..m; piece_map(w) = f_{w1} o ... o f_{wn}.
using Address = std::vector<int>;

inline AffineMap piece_map(const SubdivisionIFS& ifs, const Address& word) {
    AffineMap acc = AffineMap::identity();
    for (int s : word) acc = compose(acc, ifs.maps.at(static_cast<std::size_t>(s) - 1));
    return acc;
}

/// Unique fixed point of a map whose linear part does not have eigenvalue 1.
inline Vec2Q fixed_point(const AffineMap& f) {
    Mat2Q a{Rational(1) - f.linear.m00, -f.linear.m01,
            -f.linear.m10, Rational(1) - f.linear.m11};
    Rational det = a.det();
    if (det.is_zero()) throw NoUniqueFixedPoint();
    const Vec2Q& t = f.translation;
    return {(t.x * a.m11 - t.y * a.m01) / det, (t.y * a.m00 - t.x * a.m10) / det};
}

/// Word budget shared by sampling, rendering and the census. The CLI routes
/// REPTILE_BUDGET here.
constexpr std::size_t kDefaultWordBudget = 1'000'000;

namespace detail {

template <typename Visit>
void for_each_word_map(const SubdivisionIFS& ifs, int depth, const Visit& visit) {
    Address word;
    auto rec = [&](auto&& self, const AffineMap& acc, int remaining) -> void {
        if (remaining == 0) {
            visit(word, acc);
            return;
        }
        for (int s = 1; s <= static_cast<int>(ifs.maps.size()); ++s) {
            word.push_back(s);
            self(self, compose(acc, ifs.maps[static_cast<std::size_t>(s) - 1]), remaining - 1);
            word.pop_back();
        }
    };
    rec(rec, AffineMap::identity(), depth);
}

inline void check_word_budget(std::size_t m, int depth, std::size_t budget,
                              std::size_t points_per_word = 1) {
    double words = std::pow(static_cast<double>(m), depth) * static_cast<double>(points_per_word);
    if (words > static_cast<double>(budget))
        throw BudgetExceeded("depth " + std::to_string(depth) + " needs more than " +
                             std::to_string(budget) + " words");
}

} // namespace detail

/// { f_w(p0) : |w| = depth } for p0 the fixed point of f_1, in lexicographic
/// word order. Every returned point lies in the attractor.
inline std::vector<Vec2Q> sample_points(const SubdivisionIFS& ifs, int depth,
                                        std::size_t budget = kDefaultWordBudget) {
    detail::check_word_budget(ifs.maps.size(), depth, budget);
    Vec2Q base = fixed_point(ifs.maps.at(0));
    std::vector<Vec2Q> out;
    detail::for_each_word_map(ifs, depth,
                              [&](const Address&, const AffineMap& f) { out.push_back(f(base)); });
    return out;
}

struct DiameterBound {
    double upper = 0;             // certified: true diameter <= upper
    int depth = 0;
    std::vector<Vec2Q> base_points; // fixed points seeding the sample
};

/// Certified upper bound on the attractor diameter from a depth-n cylinder
/// cover: diam(A) <= D_n / (1 - 2 r^n), where D_n is the exact diameter of
/// the depth-n images of the maps' fixed points.
inline DiameterBound diameter_bound(const SubdivisionIFS& ifs, int depth,
                                    std::size_t budget = kDefaultWordBudget) {
    double r = std::sqrt(ifs.contraction_ratio_squared.to_double());
    double shrink = 2.0 * std::pow(r, depth);
    if (!(shrink < 1.0)) throw DepthTooShallow();
    detail::check_word_budget(ifs.maps.size(), depth, budget, ifs.maps.size());

    DiameterBound bound;
    bound.depth = depth;
    for (const AffineMap& f : ifs.maps) bound.base_points.push_back(fixed_point(f));

    std::vector<Vec2Q> pts;
    detail::for_each_word_map(ifs, depth, [&](const Address&, const AffineMap& f) {
        for (const Vec2Q& p : bound.base_points) pts.push_back(f(p));
    });
    std::vector<Vec2Q> hull = geo::convex_hull(std::move(pts));
    Rational d2 = geo::diameter_squared(hull);
    bound.upper = std::sqrt(d2.to_double()) / (1.0 - shrink);
    return bound;
}

enum class HullMode { unit, enlarged };

/// True iff every map of the system sends the polygon into itself (exact
/// vertex-in-polygon tests). In unit mode the maps are the f_i and truth
/// certifies attractor(A) within the polygon; in enlarged mode the maps are
/// h_k o g^-1 and the polygon is a candidate hull of g(A).
inline bool check_hull_invariance(const SubdivisionIFS& ifs, const ConvexBody& polygon,
                                  HullMode mode) {
    geo::validate_convex(polygon);
    std::vector<AffineMap> maps;
    if (mode == HullMode::unit) {
        maps = ifs.maps;
    } else {
        for (const AffineMap& f : ifs.maps)
            maps.push_back(compose(ifs.expansion, compose(f, invert(ifs.expansion))));
    }
    for (const AffineMap& f : maps) {
        for (const Vec2Q& v : polygon)
            if (!geo::contains_point(polygon, f(v))) return false;
    }
    return true;
}

/// Exact squared diameter of a certified hull polygon.
inline Rational hull_diameter_squared(const ConvexBody& polygon) {
    return geo::diameter_squared(polygon);
}

} // namespace reptile
