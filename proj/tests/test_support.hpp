#pragma once

#include <string>

#include "tbc/catalog_io.hpp"
#include "tbc/model.hpp"

namespace tbc::test {

inline std::string fixture_path(const std::string& name) {
    return std::string(TBC_FIXTURE_DIR) + "/" + name;
}

inline Catalog load_fixture_catalog(const std::string& name) {
    return parse_catalog(read_file(fixture_path(name)));
}

inline const TestBench& bench_by_id(const Catalog& catalog, const std::string& id) {
    for (const auto& b : catalog.benches) {
        if (b.id == id) return b;
    }
    throw Error("UNKNOWN_BENCH", "fixture has no bench " + id);
}

inline Element make_element(std::string id, const std::string& dimension, Stage stage) {
    Element e;
    e.id = std::move(id);
    e.dimension = dimension_from_key(dimension);
    e.stage = stage;
    return e;
}

// Minimal bench covering all canonical dimensions with one simulated element
// each; convenient base for structural tests.
inline TestBench make_minimal_bench(const std::string& id = "bench") {
    TestBench bench;
    bench.id = id;
    for (DimensionId dim : canonical_dimensions()) {
        bench.elements.push_back(
            make_element(to_string(dim) + "_el", to_string(dim), Stage::simulated));
    }
    return bench;
}

inline TestBenchConfiguration full_selection(const TestBench& bench) {
    TestBenchConfiguration tbc;
    tbc.id = bench.id + "-tbc";
    tbc.bench_id = bench.id;
    for (const auto& leaf : leaf_dimensions(bench)) {
        tbc.selection[leaf.key()] = elements_at(bench, leaf).front()->id;
    }
    return tbc;
}

}  // namespace tbc::test
