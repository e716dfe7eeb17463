#pragma once

/// JSON (de)serialization of replication-tile specs.
///
/// Schema: { "name": str,
///           "expansion": {"matrix": [[q,q],[q,q]], "translation": [q,q]},
///           "isometries": [ same shape... ],
///           "hull": [[q,q], ...] }        (optional)
/// where q is a rational encoded as "p/q" ("p" when the denominator is 1);
/// plain JSON integers are accepted on input.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "reptile/errors.hpp"
#include "reptile/ifs.hpp"

namespace reptile {

using Json = nlohmann::ordered_json;

namespace serialize_detail {

inline Rational rational_from_json(const Json& j) {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    throw SpecParseError("expected rational string, got " + j.dump());
}

inline Vec2Q vec_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw SpecParseError("expected [x, y], got " + j.dump());
    return {rational_from_json(j[0]), rational_from_json(j[1])};
}

inline Json vec_to_json(const Vec2Q& v) { return Json::array({v.x.str(), v.y.str()}); }

inline AffineMap map_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("matrix") || !j.contains("translation"))
        throw SpecParseError("expected {matrix, translation}, got " + j.dump());
    const Json& m = j["matrix"];
    if (!m.is_array() || m.size() != 2 || !m[0].is_array() || m[0].size() != 2 ||
        !m[1].is_array() || m[1].size() != 2)
        throw SpecParseError("matrix must be 2x2");
    AffineMap out;
    out.linear = {rational_from_json(m[0][0]), rational_from_json(m[0][1]),
                  rational_from_json(m[1][0]), rational_from_json(m[1][1])};
    out.translation = vec_from_json(j["translation"]);
    return out;
}

inline Json map_to_json(const AffineMap& f) {
    Json j;
    j["matrix"] = Json::array({Json::array({f.linear.m00.str(), f.linear.m01.str()}),
                               Json::array({f.linear.m10.str(), f.linear.m11.str()})});
    j["translation"] = vec_to_json(f.translation);
    return j;
}

} // namespace serialize_detail

inline Json spec_to_json(const ReptileSpec& spec) {
    Json j;
    j["name"] = spec.name;
    j["expansion"] = serialize_detail::map_to_json(spec.expansion);
    j["isometries"] = Json::array();
    for (const AffineMap& h : spec.isometries)
        j["isometries"].push_back(serialize_detail::map_to_json(h));
    if (spec.hull) {
        j["hull"] = Json::array();
        for (const Vec2Q& v : *spec.hull) j["hull"].push_back(serialize_detail::vec_to_json(v));
    }
    return j;
}

inline ReptileSpec spec_from_json(const Json& j) {
    if (!j.is_object()) throw SpecParseError("top level must be an object");
    ReptileSpec spec;
    spec.name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "";
    if (!j.contains("expansion") || !j.contains("isometries"))
        throw SpecParseError("missing expansion or isometries");
    spec.expansion = serialize_detail::map_from_json(j["expansion"]);
    if (!j["isometries"].is_array() || j["isometries"].empty())
        throw SpecParseError("isometries must be a nonempty array");
    for (const Json& h : j["isometries"])
        spec.isometries.push_back(serialize_detail::map_from_json(h));
    if (j.contains("hull")) {
        if (!j["hull"].is_array() || j["hull"].size() < 3)
            throw SpecParseError("hull must be an array of at least 3 points");
        ConvexBody hull;
        for (const Json& v : j["hull"]) hull.push_back(serialize_detail::vec_from_json(v));
        spec.hull = std::move(hull);
    }
    return spec;
}

inline ReptileSpec spec_from_text(const std::string& text) {
    Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw SpecParseError("invalid JSON");
    return spec_from_json(j);
}

inline ReptileSpec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open spec file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return spec_from_text(buffer.str());
}

} // namespace reptile
