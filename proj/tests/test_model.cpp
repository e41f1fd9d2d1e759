#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tbc/assignment.hpp"
#include "tbc/model.hpp"
#include "test_support.hpp"

using namespace tbc;
using tbc::test::bench_by_id;
using tbc::test::full_selection;
using tbc::test::load_fixture_catalog;
using tbc::test::make_element;
using tbc::test::make_minimal_bench;

TEST_CASE("canonical dimension set has exactly the ten members") {
    CHECK(canonical_dimensions().size() == 10);
    CHECK(to_string(DimensionId::scenery) == "scenery");
    CHECK(to_string(DimensionId::residual_vehicle) == "residual_vehicle");
    CHECK_THROWS_WITH_AS(dimension_id_from_string("weather"),
                         doctest::Contains("not a canonical dimension"), Error);
}

TEST_CASE("dimension keys round-trip, refinement depth capped at one level") {
    const auto d = dimension_from_key("environment_perception_sensors/radar");
    CHECK(d.id == DimensionId::environment_perception_sensors);
    CHECK(d.refinement == "radar");
    CHECK(d.key() == "environment_perception_sensors/radar");
    CHECK_THROWS_AS(dimension_from_key("environment_perception_sensors/radar/77ghz"), Error);
    CHECK_THROWS_AS(dimension_from_key("environment_perception_sensors/"), Error);
}

TEST_CASE("the shipped hil bench fixture validates cleanly") {
    const auto catalog = load_fixture_catalog("cut_in.catalog.json");
    const auto& hil = bench_by_id(catalog, "hil");
    CHECK(validate_test_bench(hil).ok());

    // two vehicle dynamics models, sensors refined into radar and camera
    const auto leaves = leaf_dimensions(hil);
    CHECK(leaves.size() == 11);
    CHECK(elements_at(hil, dimension_from_key("vehicle_dynamics")).size() == 2);
    CHECK(hil.find_element("target_ecu")->stage == Stage::real);
}

TEST_CASE("duplicate element ids are reported") {
    auto bench = make_minimal_bench();
    bench.elements.push_back(make_element("scenery_el", "scenery", Stage::simulated));
    CHECK(validate_test_bench(bench).has("DUPLICATE_ELEMENT_ID"));
}

TEST_CASE("coupling rule referencing a nonexistent element is reported") {
    auto bench = make_minimal_bench();
    CouplingRule rule;
    rule.kind = CouplingRule::Kind::coupling_effect;
    rule.element_a = "scenery_el";
    rule.element_b = "ghost";
    rule.effect = CouplingRule::Effect::invalidates;
    bench.coupling_rules.push_back(rule);
    CHECK(validate_test_bench(bench).has("DANGLING_RULE_REF"));
}

TEST_CASE("uncovered dimension must be declared") {
    auto bench = make_minimal_bench();
    std::erase_if(bench.elements,
                  [](const Element& e) { return e.dimension.id == DimensionId::v2x_communication; });
    CHECK(validate_test_bench(bench).has("DIMENSION_NOT_COVERED"));
    bench.uncovered_dimensions.push_back("v2x_communication");
    CHECK(validate_test_bench(bench).ok());
}

TEST_CASE("mixed refined and unrefined elements in one dimension are flagged") {
    auto bench = make_minimal_bench();
    bench.elements.push_back(make_element(
        "radar_el", "environment_perception_sensors/radar", Stage::simulated));
    CHECK(validate_test_bench(bench).has("MIXED_REFINEMENT"));
}

TEST_CASE("bad validity interval and duplicate quantity are flagged") {
    auto bench = make_minimal_bench();
    bench.elements[0].validity.push_back({"speed", "km/h", 10.0, -10.0});
    bench.elements[0].validity.push_back({"speed", "km/h", 0.0, 1.0});
    const auto report = validate_test_bench(bench);
    CHECK(report.has("BAD_INTERVAL"));
    CHECK(report.has("DUPLICATE_VALIDITY_QUANTITY"));
}

TEST_CASE("named HiL-TBC-1 validates against the hil bench") {
    const auto catalog = load_fixture_catalog("cut_in.catalog.json");
    const auto& hil = bench_by_id(catalog, "hil");
    REQUIRE(hil.named_configurations.size() == 2);
    CHECK(validate_configuration(hil.named_configurations[0], hil).ok());
}

TEST_CASE("validate_configuration rejects a foreign bench id") {
    const auto bench = make_minimal_bench("a");
    auto tbc = full_selection(bench);
    tbc.bench_id = "b";
    CHECK_THROWS_AS(validate_configuration(tbc, bench), Error);
}

TEST_CASE("missing and extra dimensions in a selection are findings") {
    const auto bench = make_minimal_bench();
    auto tbc = full_selection(bench);
    tbc.selection.erase("vehicle_dynamics");
    CHECK(validate_configuration(tbc, bench).has("MISSING_DIMENSION"));

    auto tbc2 = full_selection(bench);
    tbc2.selection["environment_perception_sensors/lidar"] = "scenery_el";
    CHECK(validate_configuration(tbc2, bench).has("EXTRA_DIMENSION"));
}

TEST_CASE("forbidden stage pair in a selection is a coupling violation") {
    auto bench = make_minimal_bench();
    for (auto& e : bench.elements) {
        if (e.dimension.id == DimensionId::movable_objects) e.stage = Stage::real;
    }
    CouplingRule rule;
    rule.kind = CouplingRule::Kind::forbidden_stage_pair;
    rule.dimension_a = "movable_objects";
    rule.stage_a = Stage::real;
    rule.dimension_b = "scenery";
    rule.stage_b = Stage::simulated;
    bench.coupling_rules.push_back(rule);

    const auto tbc = full_selection(bench);
    CHECK(validate_configuration(tbc, bench).has("COUPLING_VIOLATION"));
}

TEST_CASE("unresolved required port is a finding") {
    auto bench = make_minimal_bench();
    for (auto& e : bench.elements) {
        if (e.dimension.id == DimensionId::test_object) {
            e.ports.push_back({"vehicle_state", "can", Port::Direction::requires_});
        }
    }
    const auto tbc = full_selection(bench);
    CHECK(validate_configuration(tbc, bench).has("UNRESOLVED_PORT"));

    for (auto& e : bench.elements) {
        if (e.dimension.id == DimensionId::vehicle_dynamics) {
            e.ports.push_back({"vehicle_state", "can", Port::Direction::provides});
        }
    }
    CHECK(validate_configuration(tbc, bench).ok());
}

// Cross-module consistency: the enumerated set equals the set accepted by
// validate_configuration when all elements are sufficiently valid.
TEST_CASE("enumerate output is exactly the structurally accepted selection set") {
    auto bench = make_minimal_bench();
    bench.elements.push_back(make_element("vd_b", "vehicle_dynamics", Stage::emulated));
    bench.elements.push_back(make_element("mo_b", "movable_objects", Stage::real));
    CouplingRule rule;
    rule.kind = CouplingRule::Kind::forbidden_stage_pair;
    rule.dimension_a = "movable_objects";
    rule.stage_a = Stage::real;
    rule.dimension_b = "vehicle_dynamics";
    rule.stage_b = Stage::emulated;
    bench.coupling_rules.push_back(rule);

    const auto labels = classify_element_validity(bench, {});
    const auto enumerated = enumerate_valid_configurations(bench, labels);

    // brute-force all selections, keep those validate_configuration accepts
    std::size_t accepted = 0;
    const auto leaves = leaf_dimensions(bench);
    std::vector<std::vector<const Element*>> cells;
    for (const auto& leaf : leaves) cells.push_back(elements_at(bench, leaf));
    std::vector<std::size_t> idx(cells.size(), 0);
    while (true) {
        TestBenchConfiguration tbc;
        tbc.id = "probe";
        tbc.bench_id = bench.id;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            tbc.selection[leaves[i].key()] = cells[i][idx[i]]->id;
        }
        if (validate_configuration(tbc, bench).ok()) {
            ++accepted;
            CHECK(std::any_of(enumerated.begin(), enumerated.end(),
                              [&](const TestBenchConfiguration& c) {
                                  return c.selection == tbc.selection;
                              }));
        }
        std::size_t pos = 0;
        while (pos < cells.size() && ++idx[pos] == cells[pos].size()) idx[pos++] = 0;
        if (pos == cells.size()) break;
    }
    CHECK(enumerated.size() == accepted);
    CHECK(accepted == 3);  // 2x2 product minus the forbidden pair
}
