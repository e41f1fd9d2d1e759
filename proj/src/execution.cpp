#include "tbc/execution.hpp"

#include <algorithm>
#include <cmath>

namespace tbc {

namespace {

constexpr double kLaneWidth = 3.5;      // [m]
constexpr double kManeuverDuration = 4.0;   // [s] ego and cut-in lane changes
constexpr double kBrakeJerk = 2.0;      // [m/s^3]
constexpr double kBrakePeakDecel = 1.5;  // [m/s^2], within the -2..0.5 envelope
constexpr double kBrakeHold = 2.0;      // [s]
constexpr double kPi = 3.14159265358979323846;

double smoothstep(double x) {
    x = std::clamp(x, 0.0, 1.0);
    return x * x * (3.0 - 2.0 * x);
}

}  // namespace

void check_trace(const ExecutionTrace& trace) {
    if (!(trace.step > 0.0)) {
        throw Error("MALFORMED_TRACE", "time step must be > 0");
    }
    if (trace.series.empty()) {
        throw Error("MALFORMED_TRACE", "trace has no series");
    }
    const std::size_t n = trace.series.begin()->second.size();
    if (n < 2) {
        throw Error("MALFORMED_TRACE", "series must have at least 2 samples");
    }
    for (const auto& [quantity, samples] : trace.series) {
        if (samples.size() != n) {
            throw Error("MALFORMED_TRACE", "series " + quantity + " length mismatch");
        }
        if (!trace.units.count(quantity)) {
            throw Error("MALFORMED_TRACE", "series " + quantity + " has no unit");
        }
    }
}

namespace {

class ReplayExecutor final : public Executor {
public:
    explicit ReplayExecutor(ExecutionTrace trace) : trace_(std::move(trace)) {
        check_trace(trace_);
    }

    ExecutionTrace execute(const TestCase& test_case,
                           const TestBenchConfiguration& tbc) override {
        ExecutionTrace out = trace_;
        out.test_case_id = test_case.id;
        out.tbc_id = tbc.id;
        return out;
    }

private:
    ExecutionTrace trace_;
};

}  // namespace

std::unique_ptr<Executor> replay_executor(ExecutionTrace trace) {
    return std::make_unique<ReplayExecutor>(std::move(trace));
}

ExecutionTrace simulate_cut_in(const CutInParams& p, double step, double duration) {
    if (!(step > 0.0) || step > 0.1) {
        throw Error("INVALID_PARAMS", "step must be in (0, 0.1]");
    }
    if (p.cut_in_speed_kmh <= p.ego_speed_kmh) {
        throw Error("INVALID_PARAMS", "cut-in vehicle must be faster than the ego vehicle");
    }
    if (p.trigger_distance_m <= 0.0) {
        throw Error("INVALID_PARAMS", "trigger distance must be > 0");
    }
    if (p.ego_mode == CutInParams::EgoMode::lane_change && p.peak_lateral_acceleration <= 0.0) {
        throw Error("INVALID_PARAMS", "lane change needs a positive lateral peak");
    }

    const double v_ego = p.ego_speed_kmh / 3.6;
    const double v_cut = p.cut_in_speed_kmh / 3.6;
    const double closing = v_cut - v_ego;

    // Trigger snapped onto the sample grid so the analytic lateral peak falls
    // exactly on a sample.
    const double t_trigger = (p.trigger_distance_m - p.start_distance_m) / closing;
    const auto trigger_index =
        static_cast<std::size_t>(std::ceil(t_trigger / step - 1e-9));
    const double trigger_time = static_cast<double>(trigger_index) * step;

    if (duration < trigger_time + kManeuverDuration) {
        throw Error("INVALID_PARAMS", "duration does not cover the lane change");
    }

    const auto n = static_cast<std::size_t>(std::floor(duration / step)) + 1;

    std::vector<double> a_long(n, 0.0);
    std::vector<double> a_lat(n, 0.0);
    std::vector<double> distance(n, 0.0);

    // Ego accelerations, closed form per sample.
    for (std::size_t i = 0; i < n; ++i) {
        if (i < trigger_index) continue;
        const double tau = static_cast<double>(i - trigger_index) * step;
        if (p.ego_mode == CutInParams::EgoMode::lane_change) {
            if (tau <= kManeuverDuration) {
                a_lat[i] = p.peak_lateral_acceleration *
                           std::sin(2.0 * kPi * tau / kManeuverDuration);
            }
        } else {
            const double ramp = kBrakePeakDecel / kBrakeJerk;
            if (tau < ramp) {
                a_long[i] = -kBrakeJerk * tau;
            } else if (tau < ramp + kBrakeHold) {
                a_long[i] = -kBrakePeakDecel;
            } else if (tau < 2.0 * ramp + kBrakeHold) {
                a_long[i] = -kBrakePeakDecel + kBrakeJerk * (tau - ramp - kBrakeHold);
            }
        }
    }

    // Longitudinal gap: both vehicles at constant speed until the trigger,
    // afterwards the ego may brake, which only widens the gap.
    double ego_speed = v_ego;
    double gap = p.start_distance_m;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * step;
        if (i > 0) {
            const double prev_speed = ego_speed;
            ego_speed += a_long[i] * step;
            gap += (v_cut - 0.5 * (prev_speed + ego_speed)) * step;
        } else {
            gap = p.start_distance_m;
        }

        // Lateral offsets: the cut-in vehicle merges from the adjacent lane
        // once the trigger gap is reached; in lane-change mode the ego moves
        // to the other adjacent lane.
        double y_cut = kLaneWidth;
        double y_ego = 0.0;
        if (t >= trigger_time) {
            const double s = smoothstep((t - trigger_time) / kManeuverDuration);
            y_cut = kLaneWidth * (1.0 - s);
            if (p.ego_mode == CutInParams::EgoMode::lane_change) {
                y_ego = -kLaneWidth * s;
            }
        }
        distance[i] = std::hypot(gap, y_cut - y_ego);
    }

    ExecutionTrace trace;
    trace.step = step;
    trace.series["longitudinal_acceleration"] = std::move(a_long);
    trace.series["lateral_acceleration"] = std::move(a_lat);
    trace.series["distance_to_nearest_object"] = std::move(distance);
    trace.units["longitudinal_acceleration"] = "m/s^2";
    trace.units["lateral_acceleration"] = "m/s^2";
    trace.units["distance_to_nearest_object"] = "m";
    check_trace(trace);
    return trace;
}

namespace {

double scenario_value(const TestCase& tc, const std::string& name, double fallback) {
    auto it = tc.scenario_parameters.find(name);
    return it == tc.scenario_parameters.end() ? fallback : it->second.value;
}

class CutInExecutor final : public Executor {
public:
    CutInExecutor(double step, double duration) : step_(step), duration_(duration) {}

    ExecutionTrace execute(const TestCase& test_case,
                           const TestBenchConfiguration& tbc) override {
        CutInParams p;
        p.ego_speed_kmh = scenario_value(test_case, "v_E", p.ego_speed_kmh);
        p.cut_in_speed_kmh = scenario_value(test_case, "v_C", p.cut_in_speed_kmh);
        p.start_distance_m = scenario_value(test_case, "d_s", p.start_distance_m);
        p.trigger_distance_m = scenario_value(test_case, "d_sm", p.trigger_distance_m);
        auto it = test_case.scenario_parameters.find("ego_peak_lateral_acceleration");
        if (it != test_case.scenario_parameters.end()) {
            p.ego_mode = CutInParams::EgoMode::lane_change;
            p.peak_lateral_acceleration = it->second.value;
        }
        ExecutionTrace trace = simulate_cut_in(p, step_, duration_);
        trace.test_case_id = test_case.id;
        trace.tbc_id = tbc.id;
        return trace;
    }

private:
    double step_;
    double duration_;
};

}  // namespace

std::unique_ptr<Executor> cut_in_executor(double step, double duration) {
    return std::make_unique<CutInExecutor>(step, duration);
}

std::map<std::string, CriterionResult> evaluate_criteria(
    const ExecutionTrace& trace, const std::vector<EvaluationCriterion>& criteria) {
    std::map<std::string, CriterionResult> results;
    for (const auto& c : criteria) {
        auto it = trace.series.find(c.quantity);
        if (it == trace.series.end()) {
            throw Error("UNKNOWN_QUANTITY",
                        "criterion " + c.id + " references " + c.quantity +
                            " which is not in the trace");
        }
        const auto& samples = it->second;
        const double witness =
            c.aggregate == EvaluationCriterion::Aggregate::min
                ? *std::min_element(samples.begin(), samples.end())
                : *std::max_element(samples.begin(), samples.end());
        results[c.id] = CriterionResult{c.holds(witness), witness};
    }
    return results;
}

std::vector<ValidityViolation> verify_validity(const TestBenchConfiguration& tbc,
                                               const TestBench& bench,
                                               const ExecutionTrace& trace) {
    std::vector<ValidityViolation> violations;
    for (const auto& [dim_key, element_id] : tbc.selection) {
        const Element* e = bench.find_element(element_id);
        if (!e || e->stage == Stage::real) continue;
        for (const auto& domain : e->validity) {
            auto it = trace.series.find(domain.quantity);
            if (it == trace.series.end() || it->second.empty()) continue;
            const auto [lo_it, hi_it] = std::minmax_element(it->second.begin(), it->second.end());
            if (!domain.contains(*lo_it, *hi_it)) {
                violations.push_back(ValidityViolation{
                    e->dimension.key(), e->id, domain.quantity,
                    *lo_it, *hi_it, domain.lo, domain.hi});
            }
        }
    }
    std::sort(violations.begin(), violations.end(),
              [](const ValidityViolation& a, const ValidityViolation& b) {
                  return std::tie(a.element_id, a.quantity) < std::tie(b.element_id, b.quantity);
              });
    return violations;
}

}  // namespace tbc
