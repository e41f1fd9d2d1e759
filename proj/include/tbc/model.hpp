#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tbc/errors.hpp"

namespace tbc {

// The ten canonical functionality dimensions a test bench must provide.
enum class DimensionId {
    scenery,
    movable_objects,
    environmental_conditions,
    v2x_communication,
    test_object,
    environment_perception_sensors,
    localization_sensors,
    vehicle_dynamics,
    driver_user_behavior,
    residual_vehicle,
};

const std::vector<DimensionId>& canonical_dimensions();
std::string to_string(DimensionId id);
DimensionId dimension_id_from_string(const std::string& s);

// Realization stage of an element. Nominal scale: no ordering semantics,
// the integer is only used as a plot coordinate in radar charts.
enum class Stage { simulated, emulated, real };

std::string to_string(Stage s);
Stage stage_from_string(const std::string& s);

// A canonical dimension, optionally refined one level down
// (e.g. environment_perception_sensors/radar).
struct Dimension {
    DimensionId id{};
    std::string refinement;  // empty = unrefined

    // Stable textual key, "id" or "id/refinement".
    std::string key() const;
    bool refined() const { return !refinement.empty(); }

    friend bool operator==(const Dimension&, const Dimension&) = default;
    friend auto operator<=>(const Dimension& a, const Dimension& b) {
        return a.key() <=> b.key();
    }
};

// Parses "id" or "id/refinement"; throws UNKNOWN_DIMENSION on a bad id.
Dimension dimension_from_key(const std::string& key);

// Closed interval of a physical quantity within which an element is valid.
struct ValidityDomain {
    std::string quantity;
    std::string unit;
    double lo{0.0};
    double hi{0.0};

    bool contains(double value_lo, double value_hi) const {
        return lo <= value_lo && value_hi <= hi;
    }

    friend bool operator==(const ValidityDomain&, const ValidityDomain&) = default;
};

using RequiredValidity = std::map<std::string, std::vector<ValidityDomain>>;

struct Port {
    enum class Direction { provides, requires_ };

    std::string name;
    std::string protocol;
    Direction direction{Direction::provides};

    friend bool operator==(const Port&, const Port&) = default;
};

std::string to_string(Port::Direction d);
Port::Direction port_direction_from_string(const std::string& s);

// One concrete implementation of a dimension at a bench.
struct Element {
    std::string id;
    Dimension dimension;
    Stage stage{Stage::simulated};
    std::vector<ValidityDomain> validity;
    bool expert_asserted_valid{false};
    std::vector<Port> ports;
    std::map<std::string, double> criterion_costs;  // criterion id -> K_TB,e,c

    const ValidityDomain* domain_for(const std::string& quantity) const;
};

struct CouplingRule {
    enum class Kind { forbidden_stage_pair, coupling_effect };
    enum class Effect { invalidates, shrinks_domain };

    Kind kind{Kind::forbidden_stage_pair};

    // forbidden_stage_pair: dimensions given by canonical id or full key
    std::string dimension_a;
    Stage stage_a{Stage::simulated};
    std::string dimension_b;
    Stage stage_b{Stage::simulated};

    // coupling_effect
    std::string element_a;
    std::string element_b;
    Effect effect{Effect::invalidates};
    ValidityDomain shrink;  // for Effect::shrinks_domain
};

struct TestBenchConfiguration {
    std::string id;
    std::string bench_id;
    std::map<std::string, std::string> selection;  // leaf dimension key -> element id
    std::optional<double> cost_override;

    friend bool operator==(const TestBenchConfiguration&, const TestBenchConfiguration&) = default;
};

struct TestBench {
    std::string id;
    std::vector<Element> elements;
    std::vector<CouplingRule> coupling_rules;
    std::vector<std::string> uncovered_dimensions;  // canonical ids explicitly not provided
    // Externally named compositions (with optional expert cost overrides);
    // enumeration adopts these names when a selection matches.
    std::vector<TestBenchConfiguration> named_configurations;

    const Element* find_element(const std::string& element_id) const;
};

// Leaf dimensions of a bench in canonical order; refined leaves replace their
// parent and sit adjacent to each other, sorted by refinement.
std::vector<Dimension> leaf_dimensions(const TestBench& bench);

// Elements of the bench that sit at the given leaf.
std::vector<const Element*> elements_at(const TestBench& bench, const Dimension& leaf);

struct TestObjectRequirements {
    // canonical dimension id -> allowed stages; missing entry = all three
    std::map<std::string, std::set<Stage>> allowed_stages;
    std::vector<Port> required_ports;

    std::set<Stage> allowed(DimensionId id) const;
};

struct EvaluationCriterion {
    enum class Aggregate { min, max };
    enum class Comparison { greater, greater_equal, less, less_equal };

    std::string id;
    std::string quantity;
    std::string unit;
    Aggregate aggregate{Aggregate::min};
    Comparison comparison{Comparison::greater};
    double threshold{0.0};

    bool holds(double witness) const;
};

std::string to_string(EvaluationCriterion::Aggregate a);
std::string to_string(EvaluationCriterion::Comparison c);
EvaluationCriterion::Aggregate aggregate_from_string(const std::string& s);
EvaluationCriterion::Comparison comparison_from_string(const std::string& s);

struct ScenarioParameter {
    double value{0.0};
    std::string unit;
    std::string layer;  // six-layer tag L1..L6
};

struct TestCase {
    std::string id;
    std::map<std::string, ScenarioParameter> scenario_parameters;
    std::vector<EvaluationCriterion> evaluation_criteria;
    RequiredValidity required_validity;  // dimension key -> required domains
};

struct Finding {
    std::string code;
    std::string subject;
    std::string message;
};

struct ValidationReport {
    std::vector<Finding> findings;

    bool ok() const { return findings.empty(); }
    bool has(const std::string& code) const;
};

// Structural validation of a bench against all model invariants.
// Returns findings, never throws.
ValidationReport validate_test_bench(const TestBench& bench);

// Structural validation of a configuration against its bench: one element per
// leaf dimension, elements belong to the bench, ports resolved, no coupling
// rule violated. Throws UNKNOWN_BENCH on bench id mismatch.
ValidationReport validate_configuration(const TestBenchConfiguration& tbc,
                                        const TestBench& bench);

// Shared helper: true when every `requires` port among the selected elements
// is matched by a `provides` port (same name and protocol) of some selected element.
bool ports_resolved(const std::vector<const Element*>& selected);

// Shared helper: true when the rule's dimension pattern (canonical id or full
// key) matches the element's dimension.
bool rule_dimension_matches(const std::string& pattern, const Dimension& dim);

}  // namespace tbc
