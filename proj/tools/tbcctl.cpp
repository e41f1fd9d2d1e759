#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tbc/assignment.hpp"
#include "tbc/catalog_io.hpp"
#include "tbc/radar_viz.hpp"

namespace {

struct CommonArgs {
    std::string catalog_path;
    std::string test_case_id;
    std::string weights_path;
    std::string out_path;
    std::string format = "structured";
    double margin = -1.0;
    int max_iterations = -1;
};

tbc::Catalog load_catalog(const CommonArgs& args) {
    auto catalog = tbc::parse_catalog(tbc::read_file(args.catalog_path));
    if (!args.weights_path.empty()) {
        tbc::WeightSet ws;
        auto doc = nlohmann::json::parse(tbc::read_file(args.weights_path));
        for (const auto& [criterion, a] : doc.items()) {
            ws.weights[criterion] = a.get<double>();
        }
        ws.validate();
        catalog.options.weights = ws;
    }
    if (args.margin >= 0.0) catalog.options.margin = args.margin;
    if (args.max_iterations >= 1) catalog.options.max_iterations = args.max_iterations;
    return catalog;
}

const tbc::TestCase& pick_test_case(const tbc::Catalog& catalog, const std::string& id) {
    if (catalog.test_cases.empty()) {
        throw tbc::Error("NO_TEST_CASE", "catalog contains no test cases");
    }
    if (id.empty()) return catalog.test_cases.front();
    for (const auto& tc : catalog.test_cases) {
        if (tc.id == id) return tc;
    }
    throw tbc::Error("NO_TEST_CASE", "unknown test case: " + id);
}

void deliver(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        tbc::write_file(out_path, text);
    }
}

int emit_and_rc(const tbc::AssignmentReport& report, const CommonArgs& args) {
    const auto format = args.format == "human_text" ? tbc::ReportFormat::human_text
                                                    : tbc::ReportFormat::structured;
    deliver(tbc::emit_report(report, format), args.out_path);
    const bool ok = report.outcome == tbc::AssignmentOutcome::success ||
                    report.outcome == tbc::AssignmentOutcome::plan_only;
    if (!ok) {
        std::cerr << "assignment aborted: " << tbc::to_string(report.outcome) << "\n";
    }
    return ok ? 0 : 1;
}

std::unique_ptr<tbc::Executor> make_executor(const std::string& spec, double step,
                                             double duration) {
    if (spec == "cutin") return tbc::cut_in_executor(step, duration);
    if (spec.rfind("replay:", 0) == 0) {
        return tbc::replay_executor(tbc::parse_trace(tbc::read_file(spec.substr(7))));
    }
    throw tbc::Error("USAGE", "unknown executor: " + spec + " (expected replay:PATH or cutin)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Test bench classification, test case assignment and execution engine"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string bench_id;
    std::string tbc_id;
    std::string executor_spec = "cutin";
    double step = 0.01;
    double duration = 20.0;
    int seed = 0;  // reserved; no stochastic paths in v1

    auto add_common = [&](CLI::App* cmd, bool with_report_flags) {
        cmd->add_option("--catalog", args.catalog_path, "catalog document")->required();
        if (with_report_flags) {
            cmd->add_option("--test-case", args.test_case_id, "test case id (default: first)");
            cmd->add_option("--weights", args.weights_path, "JSON file overriding the weights");
            cmd->add_option("--format", args.format, "structured or human_text")
                ->check(CLI::IsMember({"structured", "human_text"}));
            cmd->add_option("--out", args.out_path, "write output to this file");
        }
    };

    auto* validate = app.add_subcommand("validate", "structurally check a catalog");
    add_common(validate, false);

    auto* render = app.add_subcommand("render", "render a bench as an SVG radar chart");
    add_common(render, false);
    render->add_option("--bench", bench_id, "bench id")->required();
    render->add_option("--tbc", tbc_id, "highlight this named configuration");
    render->add_option("--out", args.out_path, "output SVG file");

    auto* assign = app.add_subcommand("assign", "plan steps 1-5 without executing");
    add_common(assign, true);

    auto* run = app.add_subcommand("run", "full assignment loop with execution");
    add_common(run, true);
    run->add_option("--executor", executor_spec, "replay:PATH or cutin");
    run->add_option("--margin", args.margin, "step-8 expansion factor");
    run->add_option("--max-iterations", args.max_iterations, "iteration cap");
    run->add_option("--step", step, "cutin executor time step [s]");
    run->add_option("--duration", duration, "cutin executor duration [s]");
    run->add_option("--seed", seed, "reserved");

    auto* costs = app.add_subcommand("costs", "print the configuration cost table");
    add_common(costs, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (validate->parsed()) {
            tbc::parse_catalog(tbc::read_file(args.catalog_path));
            std::cout << "OK\n";
            return 0;
        }
        const auto catalog = load_catalog(args);

        if (render->parsed()) {
            const tbc::TestBench* bench = nullptr;
            for (const auto& b : catalog.benches) {
                if (b.id == bench_id) bench = &b;
            }
            if (!bench) throw tbc::Error("UNKNOWN_BENCH", "no bench " + bench_id);
            const tbc::TestBenchConfiguration* highlight = nullptr;
            for (const auto& c : bench->named_configurations) {
                if (c.id == tbc_id) highlight = &c;
            }
            if (!tbc_id.empty() && !highlight) {
                throw tbc::Error("UNKNOWN_CONFIGURATION", "no configuration " + tbc_id);
            }
            deliver(tbc::render_radar(*bench, highlight), args.out_path);
            return 0;
        }

        const auto& test_case = pick_test_case(catalog, args.test_case_id);

        if (assign->parsed()) {
            const auto report = tbc::plan_assignment(catalog.benches, catalog.requirements,
                                                     test_case, catalog.options);
            return emit_and_rc(report, args);
        }
        if (run->parsed()) {
            auto executor = make_executor(executor_spec, step, duration);
            const auto report = tbc::run_assignment(catalog.benches, catalog.requirements,
                                                    test_case, *executor, catalog.options);
            return emit_and_rc(report, args);
        }
        if (costs->parsed()) {
            const auto report = tbc::plan_assignment(catalog.benches, catalog.requirements,
                                                     test_case, catalog.options);
            if (report.iterations.empty()) {
                std::cerr << "assignment aborted: " << tbc::to_string(report.outcome) << "\n";
                return 1;
            }
            std::ostringstream os;
            for (const auto& c : report.iterations.front().costed_configurations) {
                os << c.tbc.id << "\t" << c.cost << "\n";
            }
            deliver(os.str(), args.out_path);
            return 0;
        }
    } catch (const tbc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == "USAGE" ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
