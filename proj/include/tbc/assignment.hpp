#pragma once

#include <map>
#include <string>
#include <vector>

#include "tbc/costing.hpp"
#include "tbc/execution.hpp"
#include "tbc/model.hpp"

namespace tbc {

// Per-element validity verdict against the required validity domains.
struct ValidityLabel {
    struct Reason {
        std::string quantity;
        std::string required;  // "[lo, hi]"
        std::string provided;  // "[lo, hi]", "undeclared" or "expert_asserted"
    };

    std::string element_id;
    bool sufficiently_valid{false};
    std::vector<Reason> reasons;  // failure details, or expert-assertion provenance
};

struct AssignmentOptions {
    WeightSet weights;
    double margin{0.0};      // step-8 expansion factor
    int max_iterations{8};
};

struct TraceSummary {
    double step{0.0};
    std::size_t samples{0};
    std::map<std::string, std::pair<double, double>> hull;  // quantity -> [min, max]
};

// One pass through process steps 2..8.
struct IterationRecord {
    std::map<std::string, std::vector<ValidityLabel>> validity_labels;  // bench id -> labels
    std::vector<TestBenchConfiguration> valid_configurations;           // step 3 output
    std::vector<CostedConfiguration> costed_configurations;             // step 4 output
    std::string selected_tbc_id;                                        // step 5 output
    TraceSummary trace_summary;                                         // step 6 output
    std::vector<ValidityViolation> violations;                          // step 7
    RequiredValidity adapted_required_validity;                         // step 8 output, empty when none
};

enum class AssignmentOutcome {
    success,
    plan_only,
    abort_no_suitable_bench,
    abort_no_valid_configuration,
    abort_iteration_cap,
    abort_no_progress,
};

std::string to_string(AssignmentOutcome o);
AssignmentOutcome assignment_outcome_from_string(const std::string& s);

struct AssignmentReport {
    AssignmentOutcome outcome{AssignmentOutcome::abort_no_suitable_bench};
    std::string test_case_id;
    std::vector<std::string> suitable_bench_ids;  // step 1 output, determined once
    std::vector<IterationRecord> iterations;
    std::string final_tbc_id;
    std::map<std::string, CriterionResult> criteria_results;
    bool criteria_passed{false};
};

// Step 1: keep a bench iff every canonical dimension offers an element at an
// allowed stage and every required port of the test object is provided.
std::vector<TestBench> suitable_benches(const std::vector<TestBench>& benches,
                                        const TestObjectRequirements& reqs);

// Step 2: compare element validity domains against the required validity
// domains of the element's dimension. Real elements are the validity
// reference; expert-asserted validity is honored but recorded as provenance.
std::vector<ValidityLabel> classify_element_validity(const TestBench& bench,
                                                     const RequiredValidity& required);

// Step 3: every composition of sufficiently valid elements (one per leaf
// dimension) that resolves all ports and survives the coupling rules.
// Selections matching a named configuration adopt its id and cost override;
// otherwise ids are deterministic (bench id + sorted element ids). The
// required validity is needed to re-check shrunk domains from coupling effects.
std::vector<TestBenchConfiguration> enumerate_valid_configurations(
    const TestBench& bench,
    const std::vector<ValidityLabel>& labels,
    const RequiredValidity& required = {});

// Step 8: widen each violated required interval to the symmetric hull
// [-m, m] with m = (1 + margin) * max(|old.lo|, |old.hi|, |obs.lo|, |obs.hi|).
RequiredValidity adapt_required_domains(const RequiredValidity& required,
                                        const std::vector<ValidityViolation>& violations,
                                        double margin);

// Full loop of process steps 1..8 until a violation-free execution or an
// abort (no suitable bench, no valid configuration, iteration cap, no progress).
AssignmentReport run_assignment(const std::vector<TestBench>& benches,
                                const TestObjectRequirements& reqs,
                                const TestCase& test_case,
                                Executor& executor,
                                const AssignmentOptions& options);

// Steps 1..5 only: plan which configuration would execute the test case.
AssignmentReport plan_assignment(const std::vector<TestBench>& benches,
                                 const TestObjectRequirements& reqs,
                                 const TestCase& test_case,
                                 const AssignmentOptions& options);

}  // namespace tbc
