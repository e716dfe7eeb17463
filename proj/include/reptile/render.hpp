#pragma once

/// Figures and statistics: subdivision renderings (SVG and binary PPM),
/// the tile-orientation census behind the circular-symmetry evidence, and
/// a pixel-coverage area estimate. All geometry arrives exact; rounding
/// happens only at serialization time, with fixed formatting, so output
/// bytes are reproducible.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "reptile/errors.hpp"
#include "reptile/ifs.hpp"
#include "reptile/polygon.hpp"

namespace reptile {

struct ColorScheme {
    /// Weight of the k-th word symbol in the mixed piece color; defaults to
    /// 2/3 first symbol, 1/3 second. Weights are positive with sum <= 1.
    std::vector<double> depth_weighting{2.0 / 3.0, 1.0 / 3.0};

    void validate() const {
        double sum = 0;
        for (double w : depth_weighting) {
            if (!(w > 0)) throw Error("color scheme weights must be positive");
            sum += w;
        }
        if (sum > 1.0 + 1e-12) throw Error("color scheme weights must sum to at most 1");
    }
};

struct Rgb {
    double r = 0.5, g = 0.5, b = 0.5;
};

namespace render_detail {

inline Rgb hsv(double h, double s, double v) {
    double c = v * s;
    double hp = h / 60.0;
    double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
    double r = 0, g = 0, b = 0;
    if (hp < 1) { r = c; g = x; }
    else if (hp < 2) { r = x; g = c; }
    else if (hp < 3) { g = c; b = x; }
    else if (hp < 4) { g = x; b = c; }
    else if (hp < 5) { r = x; b = c; }
    else { r = c; b = x; }
    double m = v - c;
    return {r + m, g + m, b + m};
}

inline std::vector<Rgb> palette(std::size_t m) {
    std::vector<Rgb> out;
    for (std::size_t k = 0; k < m; ++k)
        out.push_back(hsv(360.0 * static_cast<double>(k) / static_cast<double>(m), 0.65, 0.92));
    return out;
}

inline Rgb word_color(const Address& word, const ColorScheme& scheme,
                      const std::vector<Rgb>& pal) {
    if (word.empty()) return Rgb{};
    double wr = 0, wg = 0, wb = 0, total = 0;
    for (std::size_t k = 0; k < word.size() && k < scheme.depth_weighting.size(); ++k) {
        double w = scheme.depth_weighting[k];
        const Rgb& c = pal[static_cast<std::size_t>(word[k] - 1)];
        wr += w * c.r;
        wg += w * c.g;
        wb += w * c.b;
        total += w;
    }
    if (total <= 0) return Rgb{};
    return {wr / total, wg / total, wb / total};
}

inline std::string hex_color(const Rgb& c) {
    auto channel = [](double v) {
        int k = static_cast<int>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
        char buf[3];
        std::snprintf(buf, sizeof buf, "%02x", k);
        return std::string(buf);
    };
    return "#" + channel(c.r) + channel(c.g) + channel(c.b);
}

inline std::string num12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::string(buf);
}

struct BBox {
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
};

inline BBox bbox_of(const ConvexBody& poly) {
    BBox b;
    b.xmin = b.xmax = poly.front().x.to_double();
    b.ymin = b.ymax = poly.front().y.to_double();
    for (const Vec2Q& v : poly) {
        b.xmin = std::min(b.xmin, v.x.to_double());
        b.xmax = std::max(b.xmax, v.x.to_double());
        b.ymin = std::min(b.ymin, v.y.to_double());
        b.ymax = std::max(b.ymax, v.y.to_double());
    }
    return b;
}

/// Pixel-center scanline fill of a convex polygon into a row-major bitmap.
inline void fill_convex(const std::vector<std::array<double, 2>>& poly, const BBox& box, int w,
                        int h, std::vector<char>& bitmap) {
    double dx = box.width() / w, dy = box.height() / h;
    double py_min = poly[0][1], py_max = poly[0][1];
    for (const auto& p : poly) {
        py_min = std::min(py_min, p[1]);
        py_max = std::max(py_max, p[1]);
    }
    int row0 = std::max(0, static_cast<int>(std::floor((py_min - box.ymin) / dy - 0.5)));
    int row1 = std::min(h - 1, static_cast<int>(std::ceil((py_max - box.ymin) / dy + 0.5)));
    for (int row = row0; row <= row1; ++row) {
        double yc = box.ymin + (row + 0.5) * dy;
        double xlo = 0, xhi = 0;
        bool any = false;
        std::size_t n = poly.size();
        for (std::size_t e = 0; e < n; ++e) {
            const auto& a = poly[e];
            const auto& b = poly[(e + 1) % n];
            if ((a[1] <= yc) == (b[1] <= yc)) continue; // edge does not cross the row
            double s = (yc - a[1]) / (b[1] - a[1]);
            double x = a[0] + s * (b[0] - a[0]);
            if (!any) {
                xlo = xhi = x;
                any = true;
            } else {
                xlo = std::min(xlo, x);
                xhi = std::max(xhi, x);
            }
        }
        if (!any) continue;
        int col0 = std::max(0, static_cast<int>(std::ceil((xlo - box.xmin) / dx - 0.5)));
        int col1 = std::min(w - 1, static_cast<int>(std::floor((xhi - box.xmin) / dx - 0.5)));
        for (int col = col0; col <= col1; ++col) bitmap[static_cast<std::size_t>(row) * w + col] = 1;
    }
}

inline std::vector<std::array<double, 2>> to_doubles(const std::vector<Vec2Q>& poly) {
    std::vector<std::array<double, 2>> out;
    out.reserve(poly.size());
    for (const Vec2Q& v : poly) out.push_back({v.x.to_double(), v.y.to_double()});
    return out;
}

} // namespace render_detail

/// SVG figure of the depth-n subdivision: every piece is the image of the
/// hull polygon under its word map, colored by the scheme. Deterministic
/// bytes for fixed inputs.
inline std::string render_subdivision_svg(const SubdivisionIFS& ifs, const ConvexBody& hull,
                                          int depth, const ColorScheme& scheme = {},
                                          std::size_t budget = kDefaultWordBudget) {
    geo::validate_convex(hull);
    scheme.validate();
    detail::check_word_budget(ifs.maps.size(), depth, budget);
    using namespace render_detail;
    BBox box = bbox_of(hull);
    double margin = 0.02 * std::max(box.width(), box.height());
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num12(box.xmin - margin)
       << " " << num12(-box.ymax - margin) << " " << num12(box.width() + 2 * margin) << " "
       << num12(box.height() + 2 * margin) << "\">\n";
    std::vector<Rgb> pal = palette(ifs.maps.size());
    detail::for_each_word_map(ifs, depth, [&](const Address& word, const AffineMap& f) {
        os << "<polygon fill=\"" << hex_color(word_color(word, scheme, pal))
           << "\" stroke=\"none\" points=\"";
        bool first = true;
        for (const Vec2Q& v : hull) {
            Vec2Q p = f(v);
            if (!first) os << " ";
            first = false;
            os << num12(p.x.to_double()) << "," << num12(-p.y.to_double());
        }
        os << "\"/>\n";
    });
    os << "</svg>\n";
    return os.str();
}

/// Binary PPM (P6) of the depth-n subdivision: one sample pixel per word at
/// the image of the base point; white background.
inline std::string render_subdivision_ppm(const SubdivisionIFS& ifs, const ConvexBody& hull,
                                          int depth, const ColorScheme& scheme = {},
                                          int width = 512, int height = 512,
                                          std::size_t budget = kDefaultWordBudget) {
    geo::validate_convex(hull);
    scheme.validate();
    detail::check_word_budget(ifs.maps.size(), depth, budget);
    using namespace render_detail;
    BBox box = bbox_of(hull);
    std::vector<unsigned char> pixels(static_cast<std::size_t>(width) * height * 3, 255);
    Vec2Q base = fixed_point(ifs.maps.at(0));
    std::vector<Rgb> pal = palette(ifs.maps.size());
    detail::for_each_word_map(ifs, depth, [&](const Address& word, const AffineMap& f) {
        Vec2Q p = f(base);
        double fx = (p.x.to_double() - box.xmin) / box.width();
        double fy = (box.ymax - p.y.to_double()) / box.height();
        int col = std::clamp(static_cast<int>(fx * width), 0, width - 1);
        int row = std::clamp(static_cast<int>(fy * height), 0, height - 1);
        Rgb c = word_color(word, scheme, pal);
        std::size_t at = (static_cast<std::size_t>(row) * width + col) * 3;
        pixels[at] = static_cast<unsigned char>(std::lround(std::clamp(c.r, 0.0, 1.0) * 255));
        pixels[at + 1] = static_cast<unsigned char>(std::lround(std::clamp(c.g, 0.0, 1.0) * 255));
        pixels[at + 2] = static_cast<unsigned char>(std::lround(std::clamp(c.b, 0.0, 1.0) * 255));
    });
    std::string out = "P6\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    out.append(reinterpret_cast<const char*>(pixels.data()), pixels.size());
    return out;
}

struct OrientationCensus {
    double bin_degrees = 1.0;
    std::vector<long long> det_plus;   // per bin, orientation-preserving pieces
    std::vector<long long> det_minus;  // per bin, reflected pieces (axis angle)
    std::size_t distinct_linear_parts = 0; // exact matrix-level count, no binning
    long long total = 0;
};

/// Histogram of depth-n piece orientations, split by determinant sign.
/// Orientation-preserving words are binned by rotation angle; reflected
/// words by the angle of the reflection axis. Also counts the exact number
/// of distinct linear parts, which is binning-free.
inline OrientationCensus orientation_census(const SubdivisionIFS& ifs, int depth,
                                            double bin_degrees = 1.0,
                                            std::size_t budget = kDefaultWordBudget) {
    detail::check_word_budget(ifs.maps.size(), depth, budget);
    if (!(bin_degrees > 0) || bin_degrees > 360.0) throw Error("bad bin width");
    OrientationCensus census;
    census.bin_degrees = bin_degrees;
    std::size_t bins = static_cast<std::size_t>(std::ceil(360.0 / bin_degrees));
    census.det_plus.assign(bins, 0);
    census.det_minus.assign(bins, 0);
    std::set<std::string> seen;
    detail::for_each_word_map(ifs, depth, [&](const Address&, const AffineMap& f) {
        const Mat2Q& lin = f.linear;
        seen.insert(lin.m00.str() + "|" + lin.m01.str() + "|" + lin.m10.str() + "|" +
                    lin.m11.str());
        bool plus = lin.det().sign() > 0;
        double angle = std::atan2(lin.m10.to_double(), lin.m00.to_double()) * 180.0 /
                       std::numbers::pi;
        if (!plus) angle /= 2.0; // reflection axis angle
        angle = std::fmod(angle + 360.0, 360.0);
        std::size_t bin = std::min(bins - 1, static_cast<std::size_t>(angle / bin_degrees));
        (plus ? census.det_plus : census.det_minus)[bin] += 1;
        census.total += 1;
    });
    census.distinct_linear_parts = seen.size();
    return census;
}

inline std::string census_csv(const OrientationCensus& census) {
    std::ostringstream os;
    os << "bin_start_deg,det_plus_count,det_minus_count\n";
    for (std::size_t b = 0; b < census.det_plus.size(); ++b) {
        os << render_detail::num12(static_cast<double>(b) * census.bin_degrees) << ","
           << census.det_plus[b] << "," << census.det_minus[b] << "\n";
    }
    return os.str();
}

/// Pixel-coverage estimate of the attractor area: rasterizes the union of
/// the depth-n images of the hull polygon at the given resolution and
/// counts covered pixel centers. Deterministic.
inline double area_estimate(const SubdivisionIFS& ifs, const ConvexBody& hull, int resolution,
                            int depth, std::size_t budget = kDefaultWordBudget) {
    geo::validate_convex(hull);
    detail::check_word_budget(ifs.maps.size(), depth, budget);
    using namespace render_detail;
    BBox box = bbox_of(hull);
    std::vector<char> bitmap(static_cast<std::size_t>(resolution) * resolution, 0);
    detail::for_each_word_map(ifs, depth, [&](const Address&, const AffineMap& f) {
        fill_convex(to_doubles(geo::map_body(f, hull)), box, resolution, resolution, bitmap);
    });
    long long covered = 0;
    for (char c : bitmap) covered += c;
    double pixel_area = (box.width() / resolution) * (box.height() / resolution);
    return static_cast<double>(covered) * pixel_area;
}

/// SVG path of a boundary polyline.
inline std::string polyline_svg(const std::vector<Vec2Q>& points) {
    using namespace render_detail;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (!points.empty()) {
        xmin = xmax = points[0].x.to_double();
        ymin = ymax = points[0].y.to_double();
        for (const Vec2Q& p : points) {
            xmin = std::min(xmin, p.x.to_double());
            xmax = std::max(xmax, p.x.to_double());
            ymin = std::min(ymin, p.y.to_double());
            ymax = std::max(ymax, p.y.to_double());
        }
    }
    double margin = 0.05 * std::max(xmax - xmin, ymax - ymin) + 1e-9;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num12(xmin - margin) << " "
       << num12(-ymax - margin) << " " << num12(xmax - xmin + 2 * margin) << " "
       << num12(ymax - ymin + 2 * margin) << "\">\n";
    os << "<path fill=\"none\" stroke=\"black\" stroke-width=\""
       << num12(0.002 * std::max(xmax - xmin, ymax - ymin) + 1e-9) << "\" d=\"";
    for (std::size_t i = 0; i < points.size(); ++i) {
        os << (i == 0 ? "M" : " L") << num12(points[i].x.to_double()) << " "
           << num12(-points[i].y.to_double());
    }
    os << "\"/>\n</svg>\n";
    return os.str();
}

/// CSV point list of a boundary polyline, exact rational coordinates.
inline std::string polyline_csv(const std::vector<Vec2Q>& points) {
    std::ostringstream os;
    os << "x,y\n";
    for (const Vec2Q& p : points) os << p.x.str() << "," << p.y.str() << "\n";
    return os.str();
}

} // namespace reptile
