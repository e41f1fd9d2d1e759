#include "tbc/radar_viz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace tbc {

namespace {

constexpr double kCanvas = 800.0;
constexpr double kCenter = kCanvas / 2.0;
constexpr double kRadius = 320.0;
constexpr double kJitterSpacing = 10.0;
constexpr double kPi = 3.14159265358979323846;

int stage_ring(Stage s) {
    switch (s) {
        case Stage::simulated: return 1;
        case Stage::emulated: return 2;
        case Stage::real: return 3;
    }
    return 1;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    // avoid the "-0.00" artifact
    if (std::string(buf) == "-0.00") return "0.00";
    return buf;
}

struct Point {
    double x{0.0};
    double y{0.0};
};

}  // namespace

std::string render_radar(const TestBench& bench, const TestBenchConfiguration* highlight) {
    const auto bench_report = validate_test_bench(bench);
    if (!bench_report.ok()) {
        const auto& f = bench_report.findings.front();
        throw Error(f.code, "bench " + bench.id + ": " + f.message);
    }
    if (highlight) {
        const auto report = validate_configuration(*highlight, bench);
        if (!report.ok()) {
            const auto& f = report.findings.front();
            throw Error(f.code, "highlight " + highlight->id + ": " + f.message);
        }
    }

    const auto leaves = leaf_dimensions(bench);
    const std::size_t n = leaves.size();

    std::map<std::string, double> spoke_angle;  // leaf key -> angle [rad]
    for (std::size_t i = 0; i < n; ++i) {
        spoke_angle[leaves[i].key()] = -kPi / 2.0 + 2.0 * kPi * static_cast<double>(i) / n;
    }

    // Dot position per element: on the spoke at the stage ring, tangentially
    // offset when several elements share one (dimension, stage) cell.
    std::map<std::string, Point> dot;  // element id -> position
    for (const auto& leaf : leaves) {
        auto cell_elements = elements_at(bench, leaf);  // sorted by id
        std::map<int, std::vector<const Element*>> by_ring;
        for (const Element* e : cell_elements) by_ring[stage_ring(e->stage)].push_back(e);
        const double angle = spoke_angle[leaf.key()];
        for (const auto& [ring, group] : by_ring) {
            const double r = kRadius * ring / 3.0;
            for (std::size_t k = 0; k < group.size(); ++k) {
                const double offset =
                    (static_cast<double>(k) - (group.size() - 1) / 2.0) * kJitterSpacing;
                // tangential direction is the spoke direction rotated by 90 degrees
                dot[group[k]->id] = Point{
                    kCenter + r * std::cos(angle) - offset * std::sin(angle),
                    kCenter + r * std::sin(angle) + offset * std::cos(angle)};
            }
        }
    }

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" "
           "height=\"800\" viewBox=\"0 0 800 800\">\n";
    svg << "<style>\n"
           ".ring { fill: none; stroke: #b0b0b0; stroke-width: 1; }\n"
           ".spoke { stroke: #808080; stroke-width: 1; }\n"
           ".dot { fill: #2b6cb0; }\n"
           ".highlight { fill: none; stroke: #dd6b20; stroke-width: 2.5; "
           "stroke-dasharray: 8 5; }\n"
           ".label { font: 13px sans-serif; fill: #303030; text-anchor: middle; }\n"
           ".ringlabel { font: 11px sans-serif; fill: #808080; }\n"
           "</style>\n";
    svg << "<title>" << bench.id << "</title>\n";

    for (int ring = 1; ring <= 3; ++ring) {
        svg << "<circle class=\"ring\" cx=\"" << fmt(kCenter) << "\" cy=\"" << fmt(kCenter)
            << "\" r=\"" << fmt(kRadius * ring / 3.0) << "\"/>\n";
        svg << "<text class=\"ringlabel\" x=\"" << fmt(kCenter + 4.0) << "\" y=\""
            << fmt(kCenter - kRadius * ring / 3.0 - 4.0) << "\">" << ring << "</text>\n";
    }

    for (const auto& leaf : leaves) {
        const double angle = spoke_angle[leaf.key()];
        const Point tip{kCenter + kRadius * std::cos(angle), kCenter + kRadius * std::sin(angle)};
        svg << "<line class=\"spoke\" x1=\"" << fmt(kCenter) << "\" y1=\"" << fmt(kCenter)
            << "\" x2=\"" << fmt(tip.x) << "\" y2=\"" << fmt(tip.y) << "\"/>\n";
        const Point label{kCenter + (kRadius + 28.0) * std::cos(angle),
                          kCenter + (kRadius + 28.0) * std::sin(angle)};
        svg << "<text class=\"label\" x=\"" << fmt(label.x) << "\" y=\"" << fmt(label.y) << "\">"
            << leaf.key() << "</text>\n";
    }

    if (highlight) {
        svg << "<polygon class=\"highlight\" points=\"";
        bool first = true;
        for (const auto& leaf : leaves) {
            const auto it = highlight->selection.find(leaf.key());
            const Point p = dot.at(it->second);
            if (!first) svg << " ";
            svg << fmt(p.x) << "," << fmt(p.y);
            first = false;
        }
        svg << "\"/>\n";
    }

    for (const auto& e : bench.elements) {
        const Point p = dot.at(e.id);
        svg << "<circle class=\"dot\" cx=\"" << fmt(p.x) << "\" cy=\"" << fmt(p.y)
            << "\" r=\"5\"><title>" << e.id << "</title></circle>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

}  // namespace tbc
