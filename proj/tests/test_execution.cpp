#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "tbc/assignment.hpp"
#include "tbc/catalog_io.hpp"
#include "tbc/execution.hpp"
#include "test_support.hpp"

using namespace tbc;
using tbc::test::fixture_path;
using tbc::test::make_element;

namespace {

CutInParams fixture_params(CutInParams::EgoMode mode, double peak = 0.0) {
    CutInParams p;
    p.ego_speed_kmh = 120.0;
    p.cut_in_speed_kmh = 130.0;
    p.start_distance_m = -3.0;
    p.trigger_distance_m = 20.0;
    p.ego_mode = mode;
    p.peak_lateral_acceleration = peak;
    return p;
}

double series_abs_max(const ExecutionTrace& t, const std::string& q) {
    double m = 0.0;
    for (double v : t.series.at(q)) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

TEST_CASE("replay executor emits the stored trace verbatim") {
    const auto trace = parse_trace(read_file(fixture_path("peak35.trace.json")));
    auto executor = replay_executor(trace);
    TestCase tc;
    tc.id = "cut_in";
    TestBenchConfiguration tbc;
    tbc.id = "HiL-TBC-1";
    const auto out = executor->execute(tc, tbc);
    CHECK(out.series == trace.series);
    CHECK(out.test_case_id == "cut_in");
    CHECK(out.tbc_id == "HiL-TBC-1");
    CHECK(series_abs_max(out, "lateral_acceleration") == doctest::Approx(3.5));
}

TEST_CASE("replay executor rejects malformed traces") {
    ExecutionTrace empty;
    CHECK_THROWS_WITH_AS(replay_executor(empty), doctest::Contains("MALFORMED_TRACE"), Error);

    ExecutionTrace short_series;
    short_series.step = 0.1;
    short_series.series["x"] = {1.0};
    short_series.units["x"] = "m";
    CHECK_THROWS_AS(replay_executor(short_series), Error);
}

TEST_CASE("trace document round-trips") {
    const auto text = read_file(fixture_path("peak35.trace.json"));
    const auto trace = parse_trace(text);
    CHECK(parse_trace(emit_trace(trace)) == trace);
}

TEST_CASE("cut-in lane change hits the configured lateral peak exactly") {
    const auto trace = simulate_cut_in(fixture_params(CutInParams::EgoMode::lane_change, 3.5),
                                       0.01, 20.0);
    CHECK(series_abs_max(trace, "lateral_acceleration") == doctest::Approx(3.5).epsilon(1e-9));
    // the imposed peak is step-refinement stable
    const auto finer = simulate_cut_in(fixture_params(CutInParams::EgoMode::lane_change, 3.5),
                                       0.005, 20.0);
    CHECK(std::abs(series_abs_max(finer, "lateral_acceleration") -
                   series_abs_max(trace, "lateral_acceleration")) < 1e-6);
}

TEST_CASE("cut-in brake mode keeps the accelerations in the expected envelope") {
    const auto trace = simulate_cut_in(fixture_params(CutInParams::EgoMode::brake), 0.01, 20.0);
    for (double v : trace.series.at("longitudinal_acceleration")) {
        CHECK(v >= -2.0);
        CHECK(v <= 0.5);
    }
    for (double v : trace.series.at("lateral_acceleration")) {
        CHECK(std::abs(v) <= 0.5);
    }
}

TEST_CASE("cut-in minimum distance stays positive in both modes") {
    // Closed-form oracle: with constant speeds the longitudinal gap
    // d_s + (v_C - v_E) t crosses zero before the 20 m trigger, while the
    // cut-in vehicle is still one lane (3.5 m) away; ego reactions only widen
    // the gap afterwards. The continuous minimum distance is therefore 3.5 m.
    const double lane_width = 3.5;
    for (auto mode : {CutInParams::EgoMode::brake, CutInParams::EgoMode::lane_change}) {
        const auto trace =
            simulate_cut_in(fixture_params(mode, mode == CutInParams::EgoMode::lane_change ? 3.5 : 0.0),
                            0.01, 20.0);
        const auto& dist = trace.series.at("distance_to_nearest_object");
        const double min_dist = *std::min_element(dist.begin(), dist.end());
        CHECK(min_dist > 0.0);
        CHECK(min_dist >= lane_width);
        // sampled minimum can exceed the continuous one by at most the gap
        // covered within one step at the closing speed (10 km/h)
        const double closing = 10.0 / 3.6;
        CHECK(min_dist <= std::hypot(closing * trace.step, lane_width) + 1e-12);
    }
}

TEST_CASE("cut-in parameter validation") {
    auto p = fixture_params(CutInParams::EgoMode::brake);
    CHECK_THROWS_AS(simulate_cut_in(p, 0.0, 20.0), Error);
    CHECK_THROWS_AS(simulate_cut_in(p, 0.2, 20.0), Error);
    p.cut_in_speed_kmh = 110.0;  // must pass the ego vehicle
    CHECK_THROWS_WITH_AS(simulate_cut_in(p, 0.01, 20.0), doctest::Contains("INVALID_PARAMS"), Error);
    p = fixture_params(CutInParams::EgoMode::brake);
    CHECK_THROWS_AS(simulate_cut_in(p, 0.01, 5.0), Error);  // does not cover the maneuver
}

TEST_CASE("cut-in simulation is deterministic") {
    const auto p = fixture_params(CutInParams::EgoMode::lane_change, 3.5);
    CHECK(simulate_cut_in(p, 0.01, 20.0) == simulate_cut_in(p, 0.01, 20.0));
}

TEST_CASE("evaluate_criteria passes and fails on the min-distance predicate") {
    ExecutionTrace trace;
    trace.step = 0.1;
    trace.series["distance_to_nearest_object"] = {5.0, 4.2, 6.1};
    trace.units["distance_to_nearest_object"] = "m";

    EvaluationCriterion c;
    c.id = "no_collision";
    c.quantity = "distance_to_nearest_object";
    c.aggregate = EvaluationCriterion::Aggregate::min;
    c.comparison = EvaluationCriterion::Comparison::greater;
    c.threshold = 0.0;

    auto results = evaluate_criteria(trace, {c});
    CHECK(results.at("no_collision").passed);
    CHECK(results.at("no_collision").witness == doctest::Approx(4.2));

    trace.series["distance_to_nearest_object"].push_back(0.0);  // boundary is exclusive
    results = evaluate_criteria(trace, {c});
    CHECK_FALSE(results.at("no_collision").passed);
    CHECK(results.at("no_collision").witness == 0.0);

    c.quantity = "yaw_rate";
    CHECK_THROWS_WITH_AS(evaluate_criteria(trace, {c}), doctest::Contains("UNKNOWN_QUANTITY"),
                         Error);
}

TEST_CASE("min/max criteria are invariant under sample reordering") {
    ExecutionTrace trace;
    trace.step = 0.1;
    trace.series["q"] = {3.0, 1.0, 4.0, 1.5, 9.0, 2.6};
    trace.units["q"] = "m";
    EvaluationCriterion c;
    c.id = "c";
    c.quantity = "q";
    c.aggregate = EvaluationCriterion::Aggregate::max;
    c.comparison = EvaluationCriterion::Comparison::less;
    c.threshold = 10.0;
    const auto before = evaluate_criteria(trace, {c});
    std::reverse(trace.series["q"].begin(), trace.series["q"].end());
    CHECK(evaluate_criteria(trace, {c}) == before);
}

namespace {

// One-element bench and its trivial configuration for verification tests.
struct VerifyFixture {
    TestBench bench;
    TestBenchConfiguration tbc;
};

VerifyFixture verify_fixture(Element element) {
    VerifyFixture f;
    f.bench.id = "b";
    for (DimensionId dim : canonical_dimensions()) {
        if (dim == element.dimension.id) continue;
        f.bench.elements.push_back(make_element(to_string(dim) + "_el", to_string(dim), Stage::real));
    }
    f.bench.elements.push_back(element);
    f.tbc = tbc::test::full_selection(f.bench);
    f.tbc.id = "cfg";
    return f;
}

ExecutionTrace peak_trace(double lo, double hi) {
    ExecutionTrace t;
    t.step = 0.01;
    t.series["lateral_acceleration"] = {0.0, lo, hi, 0.0};
    t.units["lateral_acceleration"] = "m/s^2";
    t.test_case_id = "cut_in";
    t.tbc_id = "cfg";
    return t;
}

}  // namespace

TEST_CASE("verify_validity flags a left validity domain") {
    auto single_track = make_element("single_track_sm", "vehicle_dynamics", Stage::simulated);
    single_track.validity.push_back({"lateral_acceleration", "m/s^2", -3.0, 3.0});
    const auto f = verify_fixture(single_track);

    const auto violations = verify_validity(f.tbc, f.bench, peak_trace(-1.2, 3.5));
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].element_id == "single_track_sm");
    CHECK(violations[0].dimension == "vehicle_dynamics");
    CHECK(violations[0].quantity == "lateral_acceleration");
    CHECK(violations[0].observed_hi == doctest::Approx(3.5));
    CHECK(violations[0].declared_lo == -3.0);

    // the double-track model with [-8, 8] is not violated by the same trace
    auto double_track = make_element("double_track_sm", "vehicle_dynamics", Stage::simulated);
    double_track.validity.push_back({"lateral_acceleration", "m/s^2", -8.0, 8.0});
    const auto f2 = verify_fixture(double_track);
    CHECK(verify_validity(f2.tbc, f2.bench, peak_trace(-1.2, 3.5)).empty());
}

TEST_CASE("traces inside all declared intervals produce no violations") {
    auto e = make_element("m", "vehicle_dynamics", Stage::simulated);
    e.validity.push_back({"lateral_acceleration", "m/s^2", -3.0, 3.0});
    const auto f = verify_fixture(e);
    CHECK(verify_validity(f.tbc, f.bench, peak_trace(-0.4, 0.4)).empty());
}

TEST_CASE("real elements never violate") {
    auto e = make_element("real_vd", "vehicle_dynamics", Stage::real);
    e.validity.push_back({"lateral_acceleration", "m/s^2", -0.1, 0.1});
    const auto f = verify_fixture(e);
    CHECK(verify_validity(f.tbc, f.bench, peak_trace(-5.0, 5.0)).empty());
}

// Duality with step 2: a trace leaves no validity domain iff classification
// against the trace hulls as required validity labels the element valid.
TEST_CASE("verify_validity is dual to classify_element_validity on random pairs") {
    std::mt19937 rng(20240815);
    std::uniform_real_distribution<double> value_dist(-10.0, 10.0);
    std::bernoulli_distribution real_dist(0.2);

    for (int trial = 0; trial < 500; ++trial) {
        auto element = make_element("probe", "vehicle_dynamics",
                                    real_dist(rng) ? Stage::real : Stage::simulated);
        double a = value_dist(rng), b = value_dist(rng);
        element.validity.push_back({"lateral_acceleration", "m/s^2", std::min(a, b), std::max(a, b)});
        a = value_dist(rng), b = value_dist(rng);
        element.validity.push_back(
            {"longitudinal_acceleration", "m/s^2", std::min(a, b), std::max(a, b)});
        const auto f = verify_fixture(element);

        ExecutionTrace trace;
        trace.step = 0.01;
        trace.tbc_id = "cfg";
        trace.units["lateral_acceleration"] = "m/s^2";
        trace.units["longitudinal_acceleration"] = "m/s^2";
        for (const auto* q : {"lateral_acceleration", "longitudinal_acceleration"}) {
            for (int i = 0; i < 8; ++i) trace.series[q].push_back(value_dist(rng));
        }

        const bool no_violation = verify_validity(f.tbc, f.bench, trace).empty();

        RequiredValidity hull_required;
        for (const auto& [quantity, samples] : trace.series) {
            const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
            hull_required["vehicle_dynamics"].push_back({quantity, "m/s^2", *lo, *hi});
        }
        const auto labels = classify_element_validity(f.bench, hull_required);
        const auto probe = std::find_if(labels.begin(), labels.end(), [](const ValidityLabel& l) {
            return l.element_id == "probe";
        });
        REQUIRE(probe != labels.end());
        CHECK(no_violation == probe->sufficiently_valid);
    }
}
