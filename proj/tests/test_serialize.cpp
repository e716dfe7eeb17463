#include <catch2/catch_amalgamated.hpp>

#include "reptile/gallery.hpp"
#include "reptile/serialize.hpp"

using namespace reptile;

TEST_CASE("spec JSON round trip") {
    for (const std::string& name : gallery::names()) {
        ReptileSpec spec = gallery::by_name(name);
        Json j = spec_to_json(spec);
        ReptileSpec back = spec_from_text(j.dump(2));
        CHECK(back.name == spec.name);
        CHECK(back.expansion == spec.expansion);
        REQUIRE(back.isometries.size() == spec.isometries.size());
        for (std::size_t i = 0; i < spec.isometries.size(); ++i)
            CHECK(back.isometries[i] == spec.isometries[i]);
        REQUIRE(back.hull.has_value() == spec.hull.has_value());
        if (spec.hull) CHECK(*back.hull == *spec.hull);
        // serialization is deterministic
        CHECK(spec_to_json(back).dump(2) == j.dump(2));
    }
}

TEST_CASE("gallery export carries the defining coefficients") {
    Json j = spec_to_json(gallery::pinwheel1());
    CHECK(j["expansion"]["matrix"][0][0] == "2");
    CHECK(j["expansion"]["matrix"][0][1] == "1");
    CHECK(j["expansion"]["matrix"][1][0] == "1");
    CHECK(j["expansion"]["matrix"][1][1] == "-2");

    Json j2 = spec_to_json(gallery::pinwheel2());
    // h2bar: (y+1, 1-x), h3bar: (2-y, x)
    CHECK(j2["isometries"][1]["matrix"][0][0] == "0");
    CHECK(j2["isometries"][1]["matrix"][0][1] == "1");
    CHECK(j2["isometries"][1]["translation"][0] == "1");
    CHECK(j2["isometries"][1]["matrix"][1][0] == "-1");
    CHECK(j2["isometries"][1]["translation"][1] == "1");
    CHECK(j2["isometries"][2]["matrix"][0][1] == "-1");
    CHECK(j2["isometries"][2]["translation"][0] == "2");
    CHECK(j2["isometries"][2]["matrix"][1][0] == "1");
    CHECK(j2["isometries"][2]["translation"][1] == "0");
}

TEST_CASE("parse failures carry diagnostics") {
    CHECK_THROWS_AS(spec_from_text("not json"), SpecParseError);
    CHECK_THROWS_AS(spec_from_text("{}"), SpecParseError);
    CHECK_THROWS_AS(spec_from_text(R"({"name":"x","expansion":{"matrix":[[1,0],[0,1]],)"
                                   R"("translation":[0,0]},"isometries":[]})"),
                    SpecParseError);
    CHECK_THROWS_AS(spec_from_text(R"({"name":"x","expansion":{"matrix":[["a",0],[0,1]],)"
                                   R"("translation":[0,0]},"isometries":[{"matrix":[[1,0],[0,1]],)"
                                   R"("translation":[0,0]}]})"),
                    SpecParseError);
    CHECK_THROWS_AS(load_spec_file("/nonexistent/path/spec.json"), IoError);
}

TEST_CASE("gallery lookup") {
    CHECK(gallery::names() == std::vector<std::string>{"pinwheel1", "pinwheel2", "square4"});
    CHECK(gallery::by_name("square4").isometries.size() == 4);
    CHECK_THROWS_AS(gallery::by_name("pentagon"), UnknownGalleryName);
}
