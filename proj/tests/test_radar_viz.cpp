#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "tbc/radar_viz.hpp"
#include "test_support.hpp"

using namespace tbc;
using tbc::test::bench_by_id;
using tbc::test::load_fixture_catalog;
using tbc::test::make_minimal_bench;

namespace {

std::size_t count_occurrences(const std::string& haystack, const std::string& needle) {
    std::size_t count = 0;
    for (std::size_t pos = haystack.find(needle); pos != std::string::npos;
         pos = haystack.find(needle, pos + needle.size())) {
        ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("the hil radar chart has one spoke per leaf and one dot per element") {
    const auto catalog = load_fixture_catalog("cut_in.catalog.json");
    const auto& hil = bench_by_id(catalog, "hil");
    const auto svg = render_radar(hil);

    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(count_occurrences(svg, "class=\"spoke\"") == 11);
    CHECK(count_occurrences(svg, "class=\"dot\"") == hil.elements.size());
    CHECK(count_occurrences(svg, "class=\"ring\"") == 3);
    // spokes are labelled with the leaf dimension keys
    CHECK(svg.find("environment_perception_sensors/radar") != std::string::npos);
    CHECK(svg.find("vehicle_dynamics") != std::string::npos);
}

TEST_CASE("a highlighted configuration adds one closed dashed polygon") {
    const auto catalog = load_fixture_catalog("cut_in.catalog.json");
    const auto& hil = bench_by_id(catalog, "hil");
    const auto& tbc = hil.named_configurations.at(0);

    const auto plain = render_radar(hil);
    CHECK(plain.find("class=\"highlight\"") == std::string::npos);

    const auto highlighted = render_radar(hil, &tbc);
    CHECK(count_occurrences(highlighted, "class=\"highlight\"") == 1);

    // the polygon visits one point per leaf dimension
    const auto pos = highlighted.find("class=\"highlight\"");
    const auto points_start = highlighted.find("points=\"", pos);
    REQUIRE(points_start != std::string::npos);
    const auto points_end = highlighted.find('"', points_start + 8);
    const auto points = highlighted.substr(points_start + 8, points_end - points_start - 8);
    CHECK(count_occurrences(points, ",") == 11);
}

TEST_CASE("co-located elements get distinct deterministic positions") {
    const auto catalog = load_fixture_catalog("cut_in.catalog.json");
    const auto& hil = bench_by_id(catalog, "hil");
    const auto svg = render_radar(hil);
    // single_track_sm and double_track_sm share a dimension and stage but not a position
    const auto a = svg.find("single_track_sm");
    const auto b = svg.find("double_track_sm");
    REQUIRE(a != std::string::npos);
    REQUIRE(b != std::string::npos);
    // compare the circle opening tags (cx/cy attributes) holding each label
    const auto circle_before = [&](std::size_t label_pos) {
        const auto start = svg.rfind("<circle", label_pos);
        return svg.substr(start, svg.find('>', start) - start);
    };
    CHECK(circle_before(a) != circle_before(b));
}

TEST_CASE("rendering is byte-stable") {
    const auto catalog = load_fixture_catalog("cut_in.catalog.json");
    const auto& hil = bench_by_id(catalog, "hil");
    CHECK(render_radar(hil) == render_radar(hil));
    const auto& tbc = hil.named_configurations.at(1);
    CHECK(render_radar(hil, &tbc) == render_radar(hil, &tbc));
}

TEST_CASE("invalid inputs are rejected") {
    const auto bench = make_minimal_bench();
    TestBenchConfiguration foreign;
    foreign.id = "x";
    foreign.bench_id = "someone_else";
    CHECK_THROWS_AS(render_radar(bench, &foreign), Error);

    TestBench empty;
    empty.id = "empty";
    CHECK_THROWS_AS(render_radar(empty), Error);
}
