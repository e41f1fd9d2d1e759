#pragma once

#include <string>
#include <vector>

#include "tbc/assignment.hpp"
#include "tbc/execution.hpp"
#include "tbc/model.hpp"

namespace tbc {

inline constexpr const char* kSchemaVersion = "tbc/1";

struct Catalog {
    std::vector<TestBench> benches;
    std::vector<TestCase> test_cases;
    TestObjectRequirements requirements;
    AssignmentOptions options;  // weights, margin, max_iterations
};

// Parses a catalog document (schema "tbc/1"). All model invariants are checked
// on load; throws PARSE_ERROR, SCHEMA_VERSION_UNSUPPORTED, INVALID_WEIGHTS or
// a finding code from structural validation.
Catalog parse_catalog(const std::string& text);

// Canonical serialization: sorted keys, quantized floats, LF, UTF-8.
// parse(emit(x)) == x for every valid catalog.
std::string emit_catalog(const Catalog& catalog);

ExecutionTrace parse_trace(const std::string& text);
std::string emit_trace(const ExecutionTrace& trace);

enum class ReportFormat { structured, human_text };

// Structured output is byte-stable across runs; human_text renders one
// section per process step.
std::string emit_report(const AssignmentReport& report, ReportFormat format);
AssignmentReport parse_report(const std::string& text);

bool reports_equal(const AssignmentReport& a, const AssignmentReport& b);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace tbc
