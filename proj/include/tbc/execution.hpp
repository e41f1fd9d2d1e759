#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tbc/model.hpp"

namespace tbc {

// Recorded time series of one test case execution.
struct ExecutionTrace {
    double step{0.01};  // [s]
    std::map<std::string, std::vector<double>> series;  // quantity -> samples
    std::map<std::string, std::string> units;           // quantity -> unit
    std::string test_case_id;
    std::string tbc_id;

    std::size_t sample_count() const {
        return series.empty() ? 0 : series.begin()->second.size();
    }

    friend bool operator==(const ExecutionTrace&, const ExecutionTrace&) = default;
};

// Throws MALFORMED_TRACE unless step > 0 and all series share one length >= 2.
void check_trace(const ExecutionTrace& trace);

// Test case executor contract (process step 6).
class Executor {
public:
    virtual ~Executor() = default;
    virtual ExecutionTrace execute(const TestCase& test_case,
                                   const TestBenchConfiguration& tbc) = 0;
    virtual bool deterministic() const { return true; }
};

// Executor that replays a stored trace regardless of the configuration.
// The trace meta is re-stamped from the actual call arguments.
std::unique_ptr<Executor> replay_executor(ExecutionTrace trace);

struct CutInParams {
    double ego_speed_kmh{120.0};        // v_E
    double cut_in_speed_kmh{130.0};     // v_C
    double start_distance_m{-3.0};      // d_s
    double trigger_distance_m{20.0};    // d_sm

    enum class EgoMode { brake, lane_change };
    EgoMode ego_mode{EgoMode::brake};
    double peak_lateral_acceleration{0.0};  // [m/s^2], lane_change only
};

// Toy cut-in kinematics. Constant speeds until the gap reaches the trigger
// distance, then jerk-limited ego braking (brake mode) or a single-period
// sinusoidal lateral-acceleration lane change with the exact configured peak.
// Emits longitudinal_acceleration, lateral_acceleration and
// distance_to_nearest_object. Throws INVALID_PARAMS.
ExecutionTrace simulate_cut_in(const CutInParams& params, double step, double duration);

// Executor wrapping simulate_cut_in. Scenario parameters v_E, v_C, d_s, d_sm
// are read from the test case; the ego performs a lane change when the test
// case carries an ego_peak_lateral_acceleration parameter, otherwise it brakes.
std::unique_ptr<Executor> cut_in_executor(double step = 0.01, double duration = 20.0);

struct CriterionResult {
    bool passed{false};
    double witness{0.0};  // extremal value of the criterion quantity

    friend bool operator==(const CriterionResult&, const CriterionResult&) = default;
};

// Evaluates each criterion over the full trace. Throws UNKNOWN_QUANTITY when a
// criterion references a quantity absent from the trace.
std::map<std::string, CriterionResult> evaluate_criteria(
    const ExecutionTrace& trace, const std::vector<EvaluationCriterion>& criteria);

struct ValidityViolation {
    std::string dimension;   // leaf dimension key of the element
    std::string element_id;
    std::string quantity;
    double observed_lo{0.0};
    double observed_hi{0.0};
    double declared_lo{0.0};
    double declared_hi{0.0};
};

// Process step 7: for each selected element, checks whether the observed
// [min,max] hull of every declared validity quantity appearing in the trace
// stays inside the declared interval. Real elements never violate.
std::vector<ValidityViolation> verify_validity(const TestBenchConfiguration& tbc,
                                               const TestBench& bench,
                                               const ExecutionTrace& trace);

}  // namespace tbc
