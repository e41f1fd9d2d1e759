#pragma once

#include <string>

#include "tbc/model.hpp"

namespace tbc {

// Renders a bench classification as an SVG radar chart: one spoke per leaf
// dimension, three concentric stage rings (1 = simulated, 2 = emulated,
// 3 = real), one dot per element with deterministic jitter for co-located
// elements, and optionally a dashed closed polyline through the elements of a
// configuration. Output is byte-stable for equal inputs.
std::string render_radar(const TestBench& bench,
                         const TestBenchConfiguration* highlight = nullptr);

}  // namespace tbc
