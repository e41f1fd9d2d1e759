#include "tbc/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tbc {

std::string to_string(AssignmentOutcome o) {
    switch (o) {
        case AssignmentOutcome::success: return "success";
        case AssignmentOutcome::plan_only: return "plan_only";
        case AssignmentOutcome::abort_no_suitable_bench: return "abort_no_suitable_bench";
        case AssignmentOutcome::abort_no_valid_configuration: return "abort_no_valid_configuration";
        case AssignmentOutcome::abort_iteration_cap: return "abort_iteration_cap";
        case AssignmentOutcome::abort_no_progress: return "abort_no_progress";
    }
    throw Error("UNKNOWN_OUTCOME", "bad outcome value");
}

AssignmentOutcome assignment_outcome_from_string(const std::string& s) {
    for (auto o : {AssignmentOutcome::success, AssignmentOutcome::plan_only,
                   AssignmentOutcome::abort_no_suitable_bench,
                   AssignmentOutcome::abort_no_valid_configuration,
                   AssignmentOutcome::abort_iteration_cap,
                   AssignmentOutcome::abort_no_progress}) {
        if (to_string(o) == s) return o;
    }
    throw Error("UNKNOWN_OUTCOME", "not an outcome: " + s);
}

std::vector<TestBench> suitable_benches(const std::vector<TestBench>& benches,
                                        const TestObjectRequirements& reqs) {
    std::vector<TestBench> out;
    for (const auto& bench : benches) {
        bool suitable = true;
        for (DimensionId dim : canonical_dimensions()) {
            const auto allowed = reqs.allowed(dim);
            const bool covered = std::any_of(
                bench.elements.begin(), bench.elements.end(), [&](const Element& e) {
                    return e.dimension.id == dim && allowed.count(e.stage) > 0;
                });
            if (!covered) {
                suitable = false;
                break;
            }
        }
        if (suitable) {
            for (const auto& port : reqs.required_ports) {
                const bool provided = std::any_of(
                    bench.elements.begin(), bench.elements.end(), [&](const Element& e) {
                        return std::any_of(e.ports.begin(), e.ports.end(), [&](const Port& p) {
                            return p.direction == Port::Direction::provides &&
                                   p.name == port.name && p.protocol == port.protocol;
                        });
                    });
                if (!provided) {
                    suitable = false;
                    break;
                }
            }
        }
        if (suitable) out.push_back(bench);
    }
    return out;
}

namespace {

std::string interval_text(double lo, double hi) {
    std::ostringstream os;
    os << "[" << lo << ", " << hi << "]";
    return os.str();
}

// Required domains applying to an element: entries keyed by the element's
// exact leaf key plus entries keyed by its canonical dimension.
std::vector<const ValidityDomain*> required_for(const RequiredValidity& required,
                                                const Dimension& dim) {
    std::vector<const ValidityDomain*> out;
    auto collect = [&](const std::string& key) {
        auto it = required.find(key);
        if (it == required.end()) return;
        for (const auto& d : it->second) out.push_back(&d);
    };
    collect(to_string(dim.id));
    if (dim.refined()) collect(dim.key());
    return out;
}

}  // namespace

std::vector<ValidityLabel> classify_element_validity(const TestBench& bench,
                                                     const RequiredValidity& required) {
    std::vector<ValidityLabel> labels;
    for (const auto& e : bench.elements) {
        ValidityLabel label;
        label.element_id = e.id;
        label.sufficiently_valid = true;
        if (e.stage != Stage::real) {
            for (const ValidityDomain* req : required_for(required, e.dimension)) {
                const ValidityDomain* declared = e.domain_for(req->quantity);
                const bool covered = declared && declared->contains(req->lo, req->hi);
                if (covered) continue;
                if (e.expert_asserted_valid) {
                    label.reasons.push_back({req->quantity,
                                             interval_text(req->lo, req->hi),
                                             "expert_asserted"});
                } else {
                    label.sufficiently_valid = false;
                    label.reasons.push_back(
                        {req->quantity, interval_text(req->lo, req->hi),
                         declared ? interval_text(declared->lo, declared->hi) : "undeclared"});
                }
            }
        }
        labels.push_back(std::move(label));
    }
    return labels;
}

namespace {

bool combination_survives_rules(const TestBench& bench,
                                const std::vector<const Element*>& selected,
                                const RequiredValidity& required) {
    for (const auto& rule : bench.coupling_rules) {
        if (rule.kind == CouplingRule::Kind::forbidden_stage_pair) {
            const bool hit_a = std::any_of(selected.begin(), selected.end(), [&](const Element* e) {
                return rule_dimension_matches(rule.dimension_a, e->dimension) && e->stage == rule.stage_a;
            });
            const bool hit_b = std::any_of(selected.begin(), selected.end(), [&](const Element* e) {
                return rule_dimension_matches(rule.dimension_b, e->dimension) && e->stage == rule.stage_b;
            });
            if (hit_a && hit_b) return false;
            continue;
        }
        const Element* a = nullptr;
        const Element* b = nullptr;
        for (const Element* e : selected) {
            if (e->id == rule.element_a) a = e;
            if (e->id == rule.element_b) b = e;
        }
        if (!a || !b) continue;
        if (rule.effect == CouplingRule::Effect::invalidates) return false;
        // shrinks_domain: both coupled elements must still satisfy the required
        // validity of their dimension within the shrunk interval.
        for (const Element* e : {a, b}) {
            for (const ValidityDomain* req : required_for(required, e->dimension)) {
                if (req->quantity != rule.shrink.quantity) continue;
                if (!rule.shrink.contains(req->lo, req->hi)) return false;
            }
        }
    }
    return true;
}

std::string deterministic_id(const TestBench& bench,
                             const std::vector<const Element*>& selected) {
    std::vector<std::string> ids;
    ids.reserve(selected.size());
    for (const Element* e : selected) ids.push_back(e->id);
    std::sort(ids.begin(), ids.end());
    std::string out = bench.id;
    for (const auto& id : ids) out += "+" + id;
    return out;
}

}  // namespace

std::vector<TestBenchConfiguration> enumerate_valid_configurations(
    const TestBench& bench,
    const std::vector<ValidityLabel>& labels,
    const RequiredValidity& required) {
    std::map<std::string, bool> valid;
    for (const auto& label : labels) valid[label.element_id] = label.sufficiently_valid;

    const auto leaves = leaf_dimensions(bench);
    std::vector<std::vector<const Element*>> candidates;
    for (const auto& leaf : leaves) {
        std::vector<const Element*> cell;
        for (const Element* e : elements_at(bench, leaf)) {
            auto it = valid.find(e->id);
            if (it != valid.end() && it->second) cell.push_back(e);
        }
        if (cell.empty()) return {};
        candidates.push_back(std::move(cell));
    }

    std::vector<TestBenchConfiguration> out;
    std::vector<const Element*> selected(leaves.size(), nullptr);

    auto emit = [&] {
        if (!ports_resolved(selected)) return;
        if (!combination_survives_rules(bench, selected, required)) return;
        TestBenchConfiguration tbc;
        tbc.bench_id = bench.id;
        for (std::size_t i = 0; i < leaves.size(); ++i) {
            tbc.selection[leaves[i].key()] = selected[i]->id;
        }
        tbc.id = deterministic_id(bench, selected);
        for (const auto& named : bench.named_configurations) {
            if (named.selection == tbc.selection) {
                tbc.id = named.id;
                tbc.cost_override = named.cost_override;
                break;
            }
        }
        out.push_back(std::move(tbc));
    };

    auto recurse = [&](auto&& self, std::size_t depth) -> void {
        if (depth == candidates.size()) {
            emit();
            return;
        }
        for (const Element* e : candidates[depth]) {
            selected[depth] = e;
            self(self, depth + 1);
        }
    };
    if (!candidates.empty()) recurse(recurse, 0);

    std::sort(out.begin(), out.end(),
              [](const TestBenchConfiguration& a, const TestBenchConfiguration& b) {
                  return a.id < b.id;
              });
    return out;
}

RequiredValidity adapt_required_domains(const RequiredValidity& required,
                                        const std::vector<ValidityViolation>& violations,
                                        double margin) {
    RequiredValidity adapted = required;
    for (const auto& v : violations) {
        // The violation carries the leaf key of the element; required domains
        // may be keyed by the canonical dimension instead.
        const Dimension dim = dimension_from_key(v.dimension);
        std::string key = dim.key();
        if (!adapted.count(key)) key = to_string(dim.id);

        double m = std::max(std::abs(v.observed_lo), std::abs(v.observed_hi));
        std::string unit;
        auto& domains = adapted[key];
        ValidityDomain* entry = nullptr;
        for (auto& d : domains) {
            if (d.quantity == v.quantity) {
                entry = &d;
                break;
            }
        }
        if (entry) {
            m = std::max({m, std::abs(entry->lo), std::abs(entry->hi)});
        }
        m *= (1.0 + margin);
        if (entry) {
            entry->lo = -m;
            entry->hi = m;
        } else {
            domains.push_back(ValidityDomain{v.quantity, unit, -m, m});
        }
    }
    return adapted;
}

namespace {

TraceSummary summarize(const ExecutionTrace& trace) {
    TraceSummary s;
    s.step = trace.step;
    s.samples = trace.sample_count();
    for (const auto& [quantity, samples] : trace.series) {
        const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
        s.hull[quantity] = {*lo, *hi};
    }
    return s;
}

bool required_equal(const RequiredValidity& a, const RequiredValidity& b) {
    return a == b;
}

AssignmentReport drive_assignment(const std::vector<TestBench>& benches,
                                  const TestObjectRequirements& reqs,
                                  const TestCase& test_case,
                                  Executor* executor,
                                  const AssignmentOptions& options) {
    options.weights.validate();

    AssignmentReport report;
    report.test_case_id = test_case.id;

    // Step 1 runs once; the loop re-enters at step 2.
    const auto suitable = suitable_benches(benches, reqs);
    for (const auto& bench : suitable) report.suitable_bench_ids.push_back(bench.id);
    if (suitable.empty()) {
        report.outcome = AssignmentOutcome::abort_no_suitable_bench;
        return report;
    }

    RequiredValidity required = test_case.required_validity;
    const int cap = executor ? options.max_iterations : 1;

    for (int iteration = 0; iteration < cap; ++iteration) {
        IterationRecord record;

        // Step 2
        std::map<std::string, std::vector<ValidityLabel>> labels;
        for (const auto& bench : suitable) {
            labels[bench.id] = classify_element_validity(bench, required);
        }
        record.validity_labels = labels;

        // Step 3
        std::vector<TestBenchConfiguration> configurations;
        for (const auto& bench : suitable) {
            auto configs = enumerate_valid_configurations(bench, labels[bench.id], required);
            configurations.insert(configurations.end(), configs.begin(), configs.end());
        }
        std::sort(configurations.begin(), configurations.end(),
                  [](const TestBenchConfiguration& a, const TestBenchConfiguration& b) {
                      return a.id < b.id;
                  });
        record.valid_configurations = configurations;
        if (configurations.empty()) {
            report.iterations.push_back(std::move(record));
            report.outcome = AssignmentOutcome::abort_no_valid_configuration;
            return report;
        }

        // Step 4
        std::vector<CostedConfiguration> costed;
        for (const auto& tbc : configurations) {
            const auto bench = std::find_if(suitable.begin(), suitable.end(),
                                            [&](const TestBench& b) { return b.id == tbc.bench_id; });
            costed.push_back(configuration_cost(tbc, *bench, options.weights));
        }
        record.costed_configurations = costed;

        // Step 5
        const TestBenchConfiguration selected = select_optimal(costed);
        record.selected_tbc_id = selected.id;

        if (!executor) {
            report.iterations.push_back(std::move(record));
            report.outcome = AssignmentOutcome::plan_only;
            report.final_tbc_id = selected.id;
            return report;
        }

        // Step 6
        const ExecutionTrace trace = executor->execute(test_case, selected);
        check_trace(trace);
        record.trace_summary = summarize(trace);

        // Step 7
        const auto bench = std::find_if(suitable.begin(), suitable.end(),
                                        [&](const TestBench& b) { return b.id == selected.bench_id; });
        record.violations = verify_validity(selected, *bench, trace);
        if (record.violations.empty()) {
            report.iterations.push_back(std::move(record));
            report.outcome = AssignmentOutcome::success;
            report.final_tbc_id = selected.id;
            report.criteria_results = evaluate_criteria(trace, test_case.evaluation_criteria);
            report.criteria_passed = std::all_of(
                report.criteria_results.begin(), report.criteria_results.end(),
                [](const auto& kv) { return kv.second.passed; });
            return report;
        }

        // Step 8
        const RequiredValidity adapted =
            adapt_required_domains(required, record.violations, options.margin);
        if (required_equal(adapted, required)) {
            report.iterations.push_back(std::move(record));
            report.outcome = AssignmentOutcome::abort_no_progress;
            return report;
        }
        record.adapted_required_validity = adapted;
        report.iterations.push_back(std::move(record));
        required = adapted;
    }

    report.outcome = AssignmentOutcome::abort_iteration_cap;
    return report;
}

}  // namespace

AssignmentReport run_assignment(const std::vector<TestBench>& benches,
                                const TestObjectRequirements& reqs,
                                const TestCase& test_case,
                                Executor& executor,
                                const AssignmentOptions& options) {
    return drive_assignment(benches, reqs, test_case, &executor, options);
}

AssignmentReport plan_assignment(const std::vector<TestBench>& benches,
                                 const TestObjectRequirements& reqs,
                                 const TestCase& test_case,
                                 const AssignmentOptions& options) {
    return drive_assignment(benches, reqs, test_case, nullptr, options);
}

}  // namespace tbc
