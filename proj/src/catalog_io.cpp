#include "tbc/catalog_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace tbc {

namespace {

using nlohmann::json;

const std::set<std::string> kKnownUnits = {"m/s^2", "m", "s", "km/h"};

void check_unit(const std::string& unit, const std::string& context) {
    if (!kKnownUnits.count(unit)) {
        throw Error("PARSE_ERROR", "unsupported unit '" + unit + "' in " + context);
    }
}

// Fixed 1e-12 quantization so identical runs emit identical bytes.
double quantize(double x) {
    if (!std::isfinite(x) || std::abs(x) > 1e6) return x;
    return std::round(x * 1e12) / 1e12;
}

json num(double x) { return json(quantize(x)); }

json require(const json& j, const std::string& key, const std::string& context) {
    if (!j.is_object() || !j.contains(key)) {
        throw Error("PARSE_ERROR", "missing field '" + key + "' in " + context);
    }
    return j.at(key);
}

// --- validity domains -------------------------------------------------------

json domain_to_json(const ValidityDomain& d) {
    return json{{"quantity", d.quantity},
                {"unit", d.unit},
                {"interval", json::array({num(d.lo), num(d.hi)})}};
}

ValidityDomain domain_from_json(const json& j, const std::string& context) {
    ValidityDomain d;
    d.quantity = require(j, "quantity", context).get<std::string>();
    d.unit = j.value("unit", "");
    if (!d.unit.empty()) check_unit(d.unit, context);
    const auto interval = require(j, "interval", context);
    if (!interval.is_array() || interval.size() != 2) {
        throw Error("PARSE_ERROR", "interval must be [lo, hi] in " + context);
    }
    d.lo = interval[0].get<double>();
    d.hi = interval[1].get<double>();
    return d;
}

json required_validity_to_json(const RequiredValidity& rv) {
    json out = json::object();
    for (const auto& [dim, domains] : rv) {
        json arr = json::array();
        for (const auto& d : domains) arr.push_back(domain_to_json(d));
        out[dim] = arr;
    }
    return out;
}

RequiredValidity required_validity_from_json(const json& j, const std::string& context) {
    RequiredValidity rv;
    for (const auto& [dim, domains] : j.items()) {
        dimension_from_key(dim);  // throws on unknown keys
        for (const auto& d : domains) {
            rv[dim].push_back(domain_from_json(d, context + "/" + dim));
        }
    }
    return rv;
}

// --- benches ----------------------------------------------------------------

json port_to_json(const Port& p) {
    return json{{"name", p.name}, {"protocol", p.protocol}, {"direction", to_string(p.direction)}};
}

Port port_from_json(const json& j, const std::string& context) {
    Port p;
    p.name = require(j, "name", context).get<std::string>();
    p.protocol = j.value("protocol", "");
    p.direction = port_direction_from_string(j.value("direction", "provides"));
    return p;
}

json element_to_json(const Element& e) {
    json validity = json::array();
    for (const auto& d : e.validity) validity.push_back(domain_to_json(d));
    json ports = json::array();
    for (const auto& p : e.ports) ports.push_back(port_to_json(p));
    json costs = json::object();
    for (const auto& [criterion, cost] : e.criterion_costs) costs[criterion] = num(cost);
    return json{{"id", e.id},
                {"dimension", e.dimension.key()},
                {"stage", to_string(e.stage)},
                {"validity", validity},
                {"expert_asserted_valid", e.expert_asserted_valid},
                {"ports", ports},
                {"criterion_costs", costs}};
}

Element element_from_json(const json& j) {
    Element e;
    e.id = require(j, "id", "element").get<std::string>();
    e.dimension = dimension_from_key(require(j, "dimension", "element " + e.id).get<std::string>());
    e.stage = stage_from_string(require(j, "stage", "element " + e.id).get<std::string>());
    for (const auto& d : j.value("validity", json::array())) {
        e.validity.push_back(domain_from_json(d, "element " + e.id));
    }
    e.expert_asserted_valid = j.value("expert_asserted_valid", false);
    for (const auto& p : j.value("ports", json::array())) {
        e.ports.push_back(port_from_json(p, "element " + e.id));
    }
    const json costs = j.value("criterion_costs", json::object());
    for (const auto& [criterion, cost] : costs.items()) {
        e.criterion_costs[criterion] = cost.get<double>();
    }
    return e;
}

json rule_to_json(const CouplingRule& r) {
    if (r.kind == CouplingRule::Kind::forbidden_stage_pair) {
        return json{{"kind", "forbidden_stage_pair"},
                    {"dimension_a", r.dimension_a},
                    {"stage_a", to_string(r.stage_a)},
                    {"dimension_b", r.dimension_b},
                    {"stage_b", to_string(r.stage_b)}};
    }
    json out{{"kind", "coupling_effect"},
             {"element_a", r.element_a},
             {"element_b", r.element_b}};
    if (r.effect == CouplingRule::Effect::invalidates) {
        out["effect"] = "invalidates";
    } else {
        out["effect"] = "shrinks_domain";
        out["shrink"] = domain_to_json(r.shrink);
    }
    return out;
}

CouplingRule rule_from_json(const json& j) {
    CouplingRule r;
    const auto kind = require(j, "kind", "coupling rule").get<std::string>();
    if (kind == "forbidden_stage_pair") {
        r.kind = CouplingRule::Kind::forbidden_stage_pair;
        r.dimension_a = require(j, "dimension_a", "coupling rule").get<std::string>();
        r.stage_a = stage_from_string(require(j, "stage_a", "coupling rule").get<std::string>());
        r.dimension_b = require(j, "dimension_b", "coupling rule").get<std::string>();
        r.stage_b = stage_from_string(require(j, "stage_b", "coupling rule").get<std::string>());
    } else if (kind == "coupling_effect") {
        r.kind = CouplingRule::Kind::coupling_effect;
        r.element_a = require(j, "element_a", "coupling rule").get<std::string>();
        r.element_b = require(j, "element_b", "coupling rule").get<std::string>();
        const auto effect = require(j, "effect", "coupling rule").get<std::string>();
        if (effect == "invalidates") {
            r.effect = CouplingRule::Effect::invalidates;
        } else if (effect == "shrinks_domain") {
            r.effect = CouplingRule::Effect::shrinks_domain;
            r.shrink = domain_from_json(require(j, "shrink", "coupling rule"), "coupling rule");
        } else {
            throw Error("PARSE_ERROR", "unknown coupling effect: " + effect);
        }
    } else {
        throw Error("PARSE_ERROR", "unknown coupling rule kind: " + kind);
    }
    return r;
}

json configuration_to_json(const TestBenchConfiguration& tbc, bool with_bench_id) {
    json selection = json::object();
    for (const auto& [dim, element] : tbc.selection) selection[dim] = element;
    json out{{"id", tbc.id}, {"selection", selection}};
    if (with_bench_id) out["bench_id"] = tbc.bench_id;
    if (tbc.cost_override) out["cost_override"] = num(*tbc.cost_override);
    return out;
}

TestBenchConfiguration configuration_from_json(const json& j, const std::string& bench_id) {
    TestBenchConfiguration tbc;
    tbc.id = require(j, "id", "configuration").get<std::string>();
    tbc.bench_id = j.value("bench_id", bench_id);
    const json selection = require(j, "selection", "configuration " + tbc.id);
    for (const auto& [dim, element] : selection.items()) {
        tbc.selection[dim] = element.get<std::string>();
    }
    if (j.contains("cost_override")) tbc.cost_override = j.at("cost_override").get<double>();
    return tbc;
}

json bench_to_json(const TestBench& b) {
    json elements = json::array();
    for (const auto& e : b.elements) elements.push_back(element_to_json(e));
    json rules = json::array();
    for (const auto& r : b.coupling_rules) rules.push_back(rule_to_json(r));
    json configs = json::array();
    for (const auto& c : b.named_configurations) configs.push_back(configuration_to_json(c, false));
    return json{{"id", b.id},
                {"elements", elements},
                {"coupling_rules", rules},
                {"uncovered_dimensions", b.uncovered_dimensions},
                {"configurations", configs}};
}

TestBench bench_from_json(const json& j) {
    TestBench b;
    b.id = require(j, "id", "bench").get<std::string>();
    for (const auto& e : require(j, "elements", "bench " + b.id)) {
        b.elements.push_back(element_from_json(e));
    }
    for (const auto& r : j.value("coupling_rules", json::array())) {
        b.coupling_rules.push_back(rule_from_json(r));
    }
    for (const auto& d : j.value("uncovered_dimensions", json::array())) {
        b.uncovered_dimensions.push_back(d.get<std::string>());
    }
    for (const auto& c : j.value("configurations", json::array())) {
        b.named_configurations.push_back(configuration_from_json(c, b.id));
    }
    return b;
}

// --- test cases ---------------------------------------------------------------

json test_case_to_json(const TestCase& tc) {
    json params = json::object();
    for (const auto& [name, p] : tc.scenario_parameters) {
        params[name] = json{{"value", num(p.value)}, {"unit", p.unit}, {"layer", p.layer}};
    }
    json criteria = json::array();
    for (const auto& c : tc.evaluation_criteria) {
        criteria.push_back(json{{"id", c.id},
                                {"quantity", c.quantity},
                                {"unit", c.unit},
                                {"aggregate", to_string(c.aggregate)},
                                {"comparison", to_string(c.comparison)},
                                {"threshold", num(c.threshold)}});
    }
    return json{{"id", tc.id},
                {"scenario_parameters", params},
                {"evaluation_criteria", criteria},
                {"required_validity", required_validity_to_json(tc.required_validity)}};
}

TestCase test_case_from_json(const json& j) {
    TestCase tc;
    tc.id = require(j, "id", "test case").get<std::string>();
    const json params = j.value("scenario_parameters", json::object());
    for (const auto& [name, p] : params.items()) {
        ScenarioParameter sp;
        sp.value = require(p, "value", "parameter " + name).get<double>();
        sp.unit = p.value("unit", "");
        if (!sp.unit.empty()) check_unit(sp.unit, "parameter " + name);
        sp.layer = p.value("layer", "");
        if (!sp.layer.empty() &&
            (sp.layer.size() != 2 || sp.layer[0] != 'L' || sp.layer[1] < '1' || sp.layer[1] > '6')) {
            throw Error("PARSE_ERROR", "layer tag must be L1..L6 on parameter " + name);
        }
        tc.scenario_parameters[name] = sp;
    }
    for (const auto& c : require(j, "evaluation_criteria", "test case " + tc.id)) {
        EvaluationCriterion ec;
        ec.id = require(c, "id", "criterion").get<std::string>();
        ec.quantity = require(c, "quantity", "criterion " + ec.id).get<std::string>();
        ec.unit = c.value("unit", "");
        if (!ec.unit.empty()) check_unit(ec.unit, "criterion " + ec.id);
        ec.aggregate = aggregate_from_string(c.value("aggregate", "min"));
        ec.comparison = comparison_from_string(c.value("comparison", "greater"));
        ec.threshold = require(c, "threshold", "criterion " + ec.id).get<double>();
        tc.evaluation_criteria.push_back(std::move(ec));
    }
    if (tc.evaluation_criteria.empty()) {
        throw Error("PARSE_ERROR", "test case " + tc.id + " has no evaluation criterion");
    }
    tc.required_validity =
        required_validity_from_json(j.value("required_validity", json::object()),
                                    "test case " + tc.id);
    return tc;
}

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error("PARSE_ERROR", e.what());
    }
}

void check_schema(const json& j) {
    if (!j.is_object()) {
        throw Error("PARSE_ERROR", "document root must be an object");
    }
    const auto version = j.value("schema_version", "");
    if (version != kSchemaVersion) {
        throw Error("SCHEMA_VERSION_UNSUPPORTED", "expected " + std::string(kSchemaVersion) +
                                                      ", got '" + version + "'");
    }
}

}  // namespace

Catalog parse_catalog(const std::string& text) {
    const json j = parse_text(text);
    check_schema(j);

    Catalog catalog;
    const json weights = j.value("weights", json::object());
    for (const auto& [criterion, a] : weights.items()) {
        catalog.options.weights.weights[criterion] = a.get<double>();
    }
    catalog.options.weights.validate();

    const auto options = j.value("options", json::object());
    catalog.options.margin = options.value("margin", 0.0);
    catalog.options.max_iterations = options.value("max_iterations", 8);
    if (catalog.options.margin < 0.0 || catalog.options.max_iterations < 1) {
        throw Error("PARSE_ERROR", "margin must be >= 0 and max_iterations >= 1");
    }

    const json reqs = j.value("requirements", json::object());
    const json allowed_stages = reqs.value("allowed_stages", json::object());
    for (const auto& [dim, stages] : allowed_stages.items()) {
        dimension_id_from_string(dim);
        std::set<Stage> allowed;
        for (const auto& s : stages) allowed.insert(stage_from_string(s.get<std::string>()));
        if (allowed.empty()) {
            throw Error("PARSE_ERROR", "allowed stages for " + dim + " must be non-empty");
        }
        catalog.requirements.allowed_stages[dim] = allowed;
    }
    for (const auto& p : reqs.value("required_ports", json::array())) {
        catalog.requirements.required_ports.push_back(port_from_json(p, "requirements"));
    }

    for (const auto& b : j.value("benches", json::array())) {
        TestBench bench = bench_from_json(b);
        const auto report = validate_test_bench(bench);
        if (!report.ok()) {
            const auto& f = report.findings.front();
            throw Error(f.code, "bench " + bench.id + ": " + f.subject + ": " + f.message);
        }
        catalog.benches.push_back(std::move(bench));
    }

    for (const auto& tc : j.value("test_cases", json::array())) {
        catalog.test_cases.push_back(test_case_from_json(tc));
    }
    return catalog;
}

std::string emit_catalog(const Catalog& catalog) {
    json weights = json::object();
    for (const auto& [criterion, a] : catalog.options.weights.weights) weights[criterion] = num(a);

    json allowed = json::object();
    for (const auto& [dim, stages] : catalog.requirements.allowed_stages) {
        json arr = json::array();
        for (Stage s : stages) arr.push_back(to_string(s));
        allowed[dim] = arr;
    }
    json ports = json::array();
    for (const auto& p : catalog.requirements.required_ports) ports.push_back(port_to_json(p));

    json benches = json::array();
    for (const auto& b : catalog.benches) benches.push_back(bench_to_json(b));
    json test_cases = json::array();
    for (const auto& tc : catalog.test_cases) test_cases.push_back(test_case_to_json(tc));

    const json j{{"schema_version", kSchemaVersion},
                 {"weights", weights},
                 {"options", json{{"margin", num(catalog.options.margin)},
                                  {"max_iterations", catalog.options.max_iterations}}},
                 {"requirements", json{{"allowed_stages", allowed}, {"required_ports", ports}}},
                 {"benches", benches},
                 {"test_cases", test_cases}};
    return j.dump(2) + "\n";
}

ExecutionTrace parse_trace(const std::string& text) {
    const json j = parse_text(text);
    check_schema(j);
    ExecutionTrace trace;
    trace.test_case_id = j.value("test_case_id", "");
    trace.tbc_id = j.value("tbc_id", "");
    trace.step = require(j, "step", "trace").get<double>();
    const json series = require(j, "series", "trace");
    for (const auto& [quantity, s] : series.items()) {
        trace.units[quantity] = require(s, "unit", "series " + quantity).get<std::string>();
        check_unit(trace.units[quantity], "series " + quantity);
        for (const auto& v : require(s, "samples", "series " + quantity)) {
            trace.series[quantity].push_back(v.get<double>());
        }
    }
    try {
        check_trace(trace);
    } catch (const Error& e) {
        throw Error("MALFORMED_TRACE", e.what());
    }
    return trace;
}

std::string emit_trace(const ExecutionTrace& trace) {
    json series = json::object();
    for (const auto& [quantity, samples] : trace.series) {
        json arr = json::array();
        for (double v : samples) arr.push_back(num(v));
        series[quantity] = json{{"unit", trace.units.at(quantity)}, {"samples", arr}};
    }
    const json j{{"schema_version", kSchemaVersion},
                 {"test_case_id", trace.test_case_id},
                 {"tbc_id", trace.tbc_id},
                 {"step", num(trace.step)},
                 {"series", series}};
    return j.dump(2) + "\n";
}

namespace {

json labels_to_json(const std::vector<ValidityLabel>& labels) {
    json arr = json::array();
    for (const auto& l : labels) {
        json reasons = json::array();
        for (const auto& r : l.reasons) {
            reasons.push_back(json{{"quantity", r.quantity},
                                   {"required", r.required},
                                   {"provided", r.provided}});
        }
        arr.push_back(json{{"element_id", l.element_id},
                           {"sufficiently_valid", l.sufficiently_valid},
                           {"reasons", reasons}});
    }
    return arr;
}

std::vector<ValidityLabel> labels_from_json(const json& arr) {
    std::vector<ValidityLabel> labels;
    for (const auto& l : arr) {
        ValidityLabel label;
        label.element_id = l.at("element_id").get<std::string>();
        label.sufficiently_valid = l.at("sufficiently_valid").get<bool>();
        for (const auto& r : l.value("reasons", json::array())) {
            label.reasons.push_back({r.at("quantity").get<std::string>(),
                                     r.at("required").get<std::string>(),
                                     r.at("provided").get<std::string>()});
        }
        labels.push_back(std::move(label));
    }
    return labels;
}

json violation_to_json(const ValidityViolation& v) {
    return json{{"dimension", v.dimension},
                {"element_id", v.element_id},
                {"quantity", v.quantity},
                {"observed", json::array({num(v.observed_lo), num(v.observed_hi)})},
                {"declared", json::array({num(v.declared_lo), num(v.declared_hi)})}};
}

ValidityViolation violation_from_json(const json& j) {
    ValidityViolation v;
    v.dimension = j.at("dimension").get<std::string>();
    v.element_id = j.at("element_id").get<std::string>();
    v.quantity = j.at("quantity").get<std::string>();
    v.observed_lo = j.at("observed")[0].get<double>();
    v.observed_hi = j.at("observed")[1].get<double>();
    v.declared_lo = j.at("declared")[0].get<double>();
    v.declared_hi = j.at("declared")[1].get<double>();
    return v;
}

json iteration_to_json(const IterationRecord& rec) {
    json labels = json::object();
    for (const auto& [bench, l] : rec.validity_labels) labels[bench] = labels_to_json(l);

    json configs = json::array();
    for (const auto& c : rec.valid_configurations) configs.push_back(configuration_to_json(c, true));

    json costed = json::array();
    for (const auto& c : rec.costed_configurations) {
        json breakdown = json::object();
        for (const auto& [element, k] : c.breakdown) breakdown[element] = num(k);
        costed.push_back(json{{"tbc", configuration_to_json(c.tbc, true)},
                              {"cost", num(c.cost)},
                              {"breakdown", breakdown}});
    }

    json hull = json::object();
    for (const auto& [quantity, mm] : rec.trace_summary.hull) {
        hull[quantity] = json::array({num(mm.first), num(mm.second)});
    }

    json violations = json::array();
    for (const auto& v : rec.violations) violations.push_back(violation_to_json(v));

    return json{{"validity_labels", labels},
                {"valid_configurations", configs},
                {"costed_configurations", costed},
                {"selected_tbc_id", rec.selected_tbc_id},
                {"trace_summary", json{{"step", num(rec.trace_summary.step)},
                                       {"samples", rec.trace_summary.samples},
                                       {"hull", hull}}},
                {"violations", violations},
                {"adapted_required_validity",
                 required_validity_to_json(rec.adapted_required_validity)}};
}

IterationRecord iteration_from_json(const json& j) {
    IterationRecord rec;
    const json labels = j.value("validity_labels", json::object());
    for (const auto& [bench, l] : labels.items()) {
        rec.validity_labels[bench] = labels_from_json(l);
    }
    for (const auto& c : j.value("valid_configurations", json::array())) {
        rec.valid_configurations.push_back(configuration_from_json(c, ""));
    }
    for (const auto& c : j.value("costed_configurations", json::array())) {
        CostedConfiguration costed;
        costed.tbc = configuration_from_json(c.at("tbc"), "");
        costed.cost = c.at("cost").get<double>();
        const json breakdown = c.value("breakdown", json::object());
        for (const auto& [element, k] : breakdown.items()) {
            costed.breakdown[element] = k.get<double>();
        }
        rec.costed_configurations.push_back(std::move(costed));
    }
    rec.selected_tbc_id = j.value("selected_tbc_id", "");
    const auto summary = j.value("trace_summary", json::object());
    rec.trace_summary.step = summary.value("step", 0.0);
    rec.trace_summary.samples = summary.value("samples", std::size_t{0});
    const json hull = summary.value("hull", json::object());
    for (const auto& [quantity, mm] : hull.items()) {
        rec.trace_summary.hull[quantity] = {mm[0].get<double>(), mm[1].get<double>()};
    }
    for (const auto& v : j.value("violations", json::array())) {
        rec.violations.push_back(violation_from_json(v));
    }
    rec.adapted_required_validity = required_validity_from_json(
        j.value("adapted_required_validity", json::object()), "report");
    return rec;
}

std::string emit_report_human(const AssignmentReport& report) {
    std::ostringstream os;
    os << "Assignment report for test case '" << report.test_case_id << "'\n";
    os << "Outcome: " << to_string(report.outcome) << "\n\n";
    os << "Step 1 - suitable test benches:";
    if (report.suitable_bench_ids.empty()) os << " none";
    for (const auto& id : report.suitable_bench_ids) os << " " << id;
    os << "\n";
    int n = 0;
    for (const auto& it : report.iterations) {
        os << "\n--- Iteration " << ++n << " ---\n";
        os << "Step 2 - element validity:\n";
        for (const auto& [bench, labels] : it.validity_labels) {
            for (const auto& l : labels) {
                os << "  " << bench << "/" << l.element_id << ": "
                   << (l.sufficiently_valid ? "sufficiently valid" : "insufficiently valid");
                for (const auto& r : l.reasons) {
                    os << " [" << r.quantity << " required " << r.required << ", provided "
                       << r.provided << "]";
                }
                os << "\n";
            }
        }
        os << "Step 3 - valid configurations:";
        for (const auto& c : it.valid_configurations) os << " " << c.id;
        os << "\n";
        os << "Step 4 - cost values:\n";
        for (const auto& c : it.costed_configurations) {
            os << "  " << c.tbc.id << ": " << quantize(c.cost) << "\n";
        }
        if (!it.selected_tbc_id.empty()) {
            os << "Step 5 - selected configuration: " << it.selected_tbc_id << "\n";
        }
        if (it.trace_summary.samples > 0) {
            os << "Step 6 - execution trace: " << it.trace_summary.samples
               << " samples at step " << it.trace_summary.step << " s\n";
            for (const auto& [quantity, mm] : it.trace_summary.hull) {
                os << "  " << quantity << " in [" << quantize(mm.first) << ", "
                   << quantize(mm.second) << "]\n";
            }
            os << "Step 7 - validity violations: ";
            if (it.violations.empty()) {
                os << "none\n";
            } else {
                os << "\n";
                for (const auto& v : it.violations) {
                    os << "  " << v.element_id << " (" << v.dimension << ") " << v.quantity
                       << " observed [" << quantize(v.observed_lo) << ", "
                       << quantize(v.observed_hi) << "] outside declared ["
                       << quantize(v.declared_lo) << ", " << quantize(v.declared_hi) << "]\n";
                }
            }
        }
        if (!it.adapted_required_validity.empty()) {
            os << "Step 8 - adapted required validity:\n";
            for (const auto& [dim, domains] : it.adapted_required_validity) {
                for (const auto& d : domains) {
                    os << "  " << dim << "/" << d.quantity << " -> [" << quantize(d.lo) << ", "
                       << quantize(d.hi) << "]\n";
                }
            }
        }
    }
    if (report.outcome == AssignmentOutcome::success) {
        os << "\nFinal configuration: " << report.final_tbc_id << "\n";
        os << "Evaluation criteria: " << (report.criteria_passed ? "passed" : "failed") << "\n";
        for (const auto& [id, r] : report.criteria_results) {
            os << "  " << id << ": " << (r.passed ? "pass" : "fail") << " (witness "
               << quantize(r.witness) << ")\n";
        }
    } else if (report.outcome == AssignmentOutcome::plan_only) {
        os << "\nPlanned configuration: " << report.final_tbc_id << "\n";
    }
    return os.str();
}

}  // namespace

std::string emit_report(const AssignmentReport& report, ReportFormat format) {
    if (format == ReportFormat::human_text) return emit_report_human(report);

    json iterations = json::array();
    for (const auto& it : report.iterations) iterations.push_back(iteration_to_json(it));
    json criteria = json::object();
    for (const auto& [id, r] : report.criteria_results) {
        criteria[id] = json{{"passed", r.passed}, {"witness", num(r.witness)}};
    }
    const json j{{"schema_version", kSchemaVersion},
                 {"type", "assignment_report"},
                 {"test_case_id", report.test_case_id},
                 {"outcome", to_string(report.outcome)},
                 {"suitable_benches", report.suitable_bench_ids},
                 {"iterations", iterations},
                 {"final_tbc_id", report.final_tbc_id},
                 {"criteria_results", criteria},
                 {"criteria_passed", report.criteria_passed}};
    return j.dump(2) + "\n";
}

AssignmentReport parse_report(const std::string& text) {
    const json j = parse_text(text);
    check_schema(j);
    AssignmentReport report;
    report.test_case_id = j.value("test_case_id", "");
    report.outcome = assignment_outcome_from_string(require(j, "outcome", "report").get<std::string>());
    for (const auto& b : j.value("suitable_benches", json::array())) {
        report.suitable_bench_ids.push_back(b.get<std::string>());
    }
    for (const auto& it : j.value("iterations", json::array())) {
        report.iterations.push_back(iteration_from_json(it));
    }
    report.final_tbc_id = j.value("final_tbc_id", "");
    const json criteria = j.value("criteria_results", json::object());
    for (const auto& [id, r] : criteria.items()) {
        report.criteria_results[id] =
            CriterionResult{r.at("passed").get<bool>(), r.at("witness").get<double>()};
    }
    report.criteria_passed = j.value("criteria_passed", false);
    return report;
}

bool reports_equal(const AssignmentReport& a, const AssignmentReport& b) {
    return emit_report(a, ReportFormat::structured) == emit_report(b, ReportFormat::structured);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("IO_ERROR", "cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("IO_ERROR", "cannot write " + path);
    out << content;
}

}  // namespace tbc
