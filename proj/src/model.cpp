#include "tbc/model.hpp"

#include <algorithm>
#include <array>

namespace tbc {

namespace {

constexpr std::array<const char*, 10> kDimensionNames = {
    "scenery",
    "movable_objects",
    "environmental_conditions",
    "v2x_communication",
    "test_object",
    "environment_perception_sensors",
    "localization_sensors",
    "vehicle_dynamics",
    "driver_user_behavior",
    "residual_vehicle",
};

}  // namespace

const std::vector<DimensionId>& canonical_dimensions() {
    static const std::vector<DimensionId> dims = [] {
        std::vector<DimensionId> v;
        for (std::size_t i = 0; i < kDimensionNames.size(); ++i) {
            v.push_back(static_cast<DimensionId>(i));
        }
        return v;
    }();
    return dims;
}

std::string to_string(DimensionId id) {
    return kDimensionNames.at(static_cast<std::size_t>(id));
}

DimensionId dimension_id_from_string(const std::string& s) {
    for (std::size_t i = 0; i < kDimensionNames.size(); ++i) {
        if (s == kDimensionNames[i]) return static_cast<DimensionId>(i);
    }
    throw Error("UNKNOWN_DIMENSION", "not a canonical dimension: " + s);
}

std::string to_string(Stage s) {
    switch (s) {
        case Stage::simulated: return "simulated";
        case Stage::emulated: return "emulated";
        case Stage::real: return "real";
    }
    throw Error("UNKNOWN_STAGE", "bad stage value");
}

Stage stage_from_string(const std::string& s) {
    if (s == "simulated") return Stage::simulated;
    if (s == "emulated") return Stage::emulated;
    if (s == "real") return Stage::real;
    throw Error("UNKNOWN_STAGE", "not a stage: " + s);
}

std::string Dimension::key() const {
    return refinement.empty() ? to_string(id) : to_string(id) + "/" + refinement;
}

Dimension dimension_from_key(const std::string& key) {
    const auto slash = key.find('/');
    if (slash == std::string::npos) {
        return Dimension{dimension_id_from_string(key), ""};
    }
    Dimension d{dimension_id_from_string(key.substr(0, slash)), key.substr(slash + 1)};
    if (d.refinement.empty() || d.refinement.find('/') != std::string::npos) {
        throw Error("UNKNOWN_DIMENSION", "bad refinement in key: " + key);
    }
    return d;
}

std::string to_string(Port::Direction d) {
    return d == Port::Direction::provides ? "provides" : "requires";
}

Port::Direction port_direction_from_string(const std::string& s) {
    if (s == "provides") return Port::Direction::provides;
    if (s == "requires") return Port::Direction::requires_;
    throw Error("UNKNOWN_PORT_DIRECTION", "not a port direction: " + s);
}

const ValidityDomain* Element::domain_for(const std::string& quantity) const {
    for (const auto& d : validity) {
        if (d.quantity == quantity) return &d;
    }
    return nullptr;
}

const Element* TestBench::find_element(const std::string& element_id) const {
    for (const auto& e : elements) {
        if (e.id == element_id) return &e;
    }
    return nullptr;
}

std::vector<Dimension> leaf_dimensions(const TestBench& bench) {
    std::vector<Dimension> leaves;
    for (DimensionId id : canonical_dimensions()) {
        std::set<std::string> refinements;
        bool has_unrefined = false;
        for (const auto& e : bench.elements) {
            if (e.dimension.id != id) continue;
            if (e.dimension.refined()) {
                refinements.insert(e.dimension.refinement);
            } else {
                has_unrefined = true;
            }
        }
        if (!refinements.empty()) {
            for (const auto& r : refinements) leaves.push_back(Dimension{id, r});
        } else if (has_unrefined) {
            leaves.push_back(Dimension{id, ""});
        }
    }
    return leaves;
}

std::vector<const Element*> elements_at(const TestBench& bench, const Dimension& leaf) {
    std::vector<const Element*> out;
    for (const auto& e : bench.elements) {
        if (e.dimension == leaf) out.push_back(&e);
    }
    std::sort(out.begin(), out.end(),
              [](const Element* a, const Element* b) { return a->id < b->id; });
    return out;
}

std::set<Stage> TestObjectRequirements::allowed(DimensionId id) const {
    auto it = allowed_stages.find(to_string(id));
    if (it != allowed_stages.end()) return it->second;
    return {Stage::simulated, Stage::emulated, Stage::real};
}

bool EvaluationCriterion::holds(double witness) const {
    switch (comparison) {
        case Comparison::greater: return witness > threshold;
        case Comparison::greater_equal: return witness >= threshold;
        case Comparison::less: return witness < threshold;
        case Comparison::less_equal: return witness <= threshold;
    }
    return false;
}

std::string to_string(EvaluationCriterion::Aggregate a) {
    return a == EvaluationCriterion::Aggregate::min ? "min" : "max";
}

std::string to_string(EvaluationCriterion::Comparison c) {
    switch (c) {
        case EvaluationCriterion::Comparison::greater: return "greater";
        case EvaluationCriterion::Comparison::greater_equal: return "greater_equal";
        case EvaluationCriterion::Comparison::less: return "less";
        case EvaluationCriterion::Comparison::less_equal: return "less_equal";
    }
    return "greater";
}

EvaluationCriterion::Aggregate aggregate_from_string(const std::string& s) {
    if (s == "min") return EvaluationCriterion::Aggregate::min;
    if (s == "max") return EvaluationCriterion::Aggregate::max;
    throw Error("UNKNOWN_AGGREGATE", "not an aggregate: " + s);
}

EvaluationCriterion::Comparison comparison_from_string(const std::string& s) {
    if (s == "greater") return EvaluationCriterion::Comparison::greater;
    if (s == "greater_equal") return EvaluationCriterion::Comparison::greater_equal;
    if (s == "less") return EvaluationCriterion::Comparison::less;
    if (s == "less_equal") return EvaluationCriterion::Comparison::less_equal;
    throw Error("UNKNOWN_COMPARISON", "not a comparison: " + s);
}

bool ValidationReport::has(const std::string& code) const {
    return std::any_of(findings.begin(), findings.end(),
                       [&](const Finding& f) { return f.code == code; });
}

bool ports_resolved(const std::vector<const Element*>& selected) {
    for (const Element* e : selected) {
        for (const auto& p : e->ports) {
            if (p.direction != Port::Direction::requires_) continue;
            bool matched = false;
            for (const Element* other : selected) {
                for (const auto& q : other->ports) {
                    if (q.direction == Port::Direction::provides &&
                        q.name == p.name && q.protocol == p.protocol) {
                        matched = true;
                        break;
                    }
                }
                if (matched) break;
            }
            if (!matched) return false;
        }
    }
    return true;
}

bool rule_dimension_matches(const std::string& pattern, const Dimension& dim) {
    return pattern == dim.key() || pattern == to_string(dim.id);
}

namespace {

void validate_element(const Element& e, ValidationReport& report) {
    std::set<std::string> quantities;
    for (const auto& d : e.validity) {
        if (d.lo > d.hi) {
            report.findings.push_back(
                {"BAD_INTERVAL", e.id, "validity interval lo > hi for " + d.quantity});
        }
        if (d.unit.empty()) {
            report.findings.push_back(
                {"EMPTY_UNIT", e.id, "validity domain " + d.quantity + " has no unit"});
        }
        if (!quantities.insert(d.quantity).second) {
            report.findings.push_back(
                {"DUPLICATE_VALIDITY_QUANTITY", e.id,
                 "more than one validity domain for " + d.quantity});
        }
    }
    std::set<std::pair<std::string, Port::Direction>> port_keys;
    for (const auto& p : e.ports) {
        if (!port_keys.insert({p.name, p.direction}).second) {
            report.findings.push_back(
                {"DUPLICATE_PORT", e.id, "duplicate port " + p.name});
        }
    }
    for (const auto& [criterion, cost] : e.criterion_costs) {
        if (cost < 0.0) {
            report.findings.push_back(
                {"NEGATIVE_CRITERION_COST", e.id, "negative cost for " + criterion});
        }
    }
}

}  // namespace

ValidationReport validate_test_bench(const TestBench& bench) {
    ValidationReport report;

    std::set<std::string> ids;
    for (const auto& e : bench.elements) {
        if (!ids.insert(e.id).second) {
            report.findings.push_back({"DUPLICATE_ELEMENT_ID", e.id, "element id reused"});
        }
        validate_element(e, report);
    }

    // Mixed refined/unrefined elements within one canonical dimension would
    // make the leaf set ambiguous.
    for (DimensionId id : canonical_dimensions()) {
        bool refined = false;
        bool unrefined = false;
        bool any = false;
        for (const auto& e : bench.elements) {
            if (e.dimension.id != id) continue;
            any = true;
            (e.dimension.refined() ? refined : unrefined) = true;
        }
        if (refined && unrefined) {
            report.findings.push_back(
                {"MIXED_REFINEMENT", to_string(id),
                 "dimension has both refined and unrefined elements"});
        }
        if (!any) {
            const bool declared = std::find(bench.uncovered_dimensions.begin(),
                                            bench.uncovered_dimensions.end(),
                                            to_string(id)) != bench.uncovered_dimensions.end();
            if (!declared) {
                report.findings.push_back(
                    {"DIMENSION_NOT_COVERED", to_string(id),
                     "no element and not declared uncovered"});
            }
        }
    }

    for (const auto& rule : bench.coupling_rules) {
        if (rule.kind == CouplingRule::Kind::coupling_effect) {
            for (const auto& eid : {rule.element_a, rule.element_b}) {
                if (!bench.find_element(eid)) {
                    report.findings.push_back(
                        {"DANGLING_RULE_REF", eid, "coupling rule references unknown element"});
                }
            }
        } else {
            for (const auto& dim : {rule.dimension_a, rule.dimension_b}) {
                const bool known = std::any_of(
                    bench.elements.begin(), bench.elements.end(),
                    [&](const Element& e) { return rule_dimension_matches(dim, e.dimension); });
                if (!known) {
                    report.findings.push_back(
                        {"DANGLING_RULE_REF", dim, "rule references dimension with no elements"});
                }
            }
        }
    }

    for (const auto& tbc : bench.named_configurations) {
        try {
            auto sub = validate_configuration(tbc, bench);
            for (auto& f : sub.findings) {
                f.subject = tbc.id + ": " + f.subject;
                report.findings.push_back(std::move(f));
            }
        } catch (const Error& e) {
            report.findings.push_back({e.code(), tbc.id, e.what()});
        }
    }

    return report;
}

ValidationReport validate_configuration(const TestBenchConfiguration& tbc,
                                        const TestBench& bench) {
    if (tbc.bench_id != bench.id) {
        throw Error("UNKNOWN_BENCH",
                    "configuration " + tbc.id + " names bench " + tbc.bench_id +
                        ", validated against " + bench.id);
    }

    ValidationReport report;
    if (tbc.cost_override && *tbc.cost_override < 0.0) {
        report.findings.push_back({"BAD_OVERRIDE", tbc.id, "cost override is negative"});
    }

    const auto leaves = leaf_dimensions(bench);
    std::set<std::string> leaf_keys;
    for (const auto& leaf : leaves) leaf_keys.insert(leaf.key());

    std::vector<const Element*> selected;
    for (const auto& [dim_key, element_id] : tbc.selection) {
        if (!leaf_keys.count(dim_key)) {
            report.findings.push_back(
                {"EXTRA_DIMENSION", dim_key, "selection key is not a leaf dimension"});
            continue;
        }
        const Element* e = bench.find_element(element_id);
        if (!e) {
            report.findings.push_back(
                {"UNKNOWN_ELEMENT", element_id, "selected element not at bench " + bench.id});
            continue;
        }
        if (e->dimension.key() != dim_key) {
            report.findings.push_back(
                {"WRONG_DIMENSION", element_id,
                 "element sits at " + e->dimension.key() + ", selected for " + dim_key});
            continue;
        }
        selected.push_back(e);
    }

    for (const auto& leaf : leaves) {
        if (!tbc.selection.count(leaf.key())) {
            report.findings.push_back(
                {"MISSING_DIMENSION", leaf.key(), "no element selected for leaf dimension"});
        }
    }

    if (!ports_resolved(selected)) {
        report.findings.push_back({"UNRESOLVED_PORT", tbc.id, "a required port has no provider"});
    }

    for (const auto& rule : bench.coupling_rules) {
        if (rule.kind == CouplingRule::Kind::forbidden_stage_pair) {
            const bool hit_a = std::any_of(selected.begin(), selected.end(), [&](const Element* e) {
                return rule_dimension_matches(rule.dimension_a, e->dimension) && e->stage == rule.stage_a;
            });
            const bool hit_b = std::any_of(selected.begin(), selected.end(), [&](const Element* e) {
                return rule_dimension_matches(rule.dimension_b, e->dimension) && e->stage == rule.stage_b;
            });
            if (hit_a && hit_b) {
                report.findings.push_back(
                    {"COUPLING_VIOLATION", tbc.id,
                     "forbidden stage pair " + rule.dimension_a + "@" + to_string(rule.stage_a) +
                         " with " + rule.dimension_b + "@" + to_string(rule.stage_b)});
            }
        } else if (rule.effect == CouplingRule::Effect::invalidates) {
            const bool has_a = std::any_of(selected.begin(), selected.end(),
                                           [&](const Element* e) { return e->id == rule.element_a; });
            const bool has_b = std::any_of(selected.begin(), selected.end(),
                                           [&](const Element* e) { return e->id == rule.element_b; });
            if (has_a && has_b) {
                report.findings.push_back(
                    {"COUPLING_VIOLATION", tbc.id,
                     "coupling " + rule.element_a + " with " + rule.element_b + " invalidates"});
            }
        }
    }

    return report;
}

}  // namespace tbc
