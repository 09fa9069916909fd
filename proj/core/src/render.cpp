#include "overstep/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace overstep {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

}  // namespace

std::string render_svg(const HeightGrid& grid, const PlanResult* plan,
                       const ExecutionLog* log, const std::vector<CellIndex>* searched,
                       const std::vector<ObstacleDisc>* obstacles) {
    const int w = grid.width();
    const int h = grid.height();
    const double cell = grid.cell_size();

    double h_max = 0.0;
    for (double v : grid.heights()) h_max = std::max(h_max, v);

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + std::to_string(w) +
           " " + std::to_string(h) + "\" width=\"" + std::to_string(w * 16) + "\" height=\"" +
           std::to_string(h * 16) + "\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(w) + "\" height=\"" +
           std::to_string(h) + "\" fill=\"#fafafa\"/>\n";

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double z = grid.height_at(CellIndex{x, y});
            if (z <= 0.0) continue;
            const int level =
                h_max > 0.0 ? 236 - static_cast<int>(std::lround(196.0 * z / h_max)) : 236;
            svg += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) +
                   "\" width=\"1\" height=\"1\" fill=\"rgb(" + std::to_string(level) + "," +
                   std::to_string(level) + "," + std::to_string(level) + ")\"/>\n";
        }
    }

    if (searched) {
        for (const CellIndex& c : *searched) {
            svg += "<rect x=\"" + num(c.x + 0.12) + "\" y=\"" + num(c.y + 0.12) +
                   "\" width=\"0.76\" height=\"0.76\" fill=\"#7ac943\" fill-opacity=\"0.4\"/>\n";
        }
    }

    if (obstacles) {
        for (const ObstacleDisc& d : *obstacles) {
            svg += "<circle cx=\"" + num(d.x / cell) + "\" cy=\"" + num(d.y / cell) +
                   "\" r=\"" + num(d.radius / cell) +
                   "\" fill=\"#f2a33c\" fill-opacity=\"0.7\" stroke=\"#a86b10\" "
                   "stroke-width=\"0.05\"/>\n";
        }
    }

    if (plan && !plan->path.empty()) {
        std::string pts;
        for (const CellIndex& c : plan->path) {
            if (!pts.empty()) pts += " ";
            pts += num(c.x + 0.5) + "," + num(c.y + 0.5);
        }
        svg += "<polyline points=\"" + pts +
               "\" fill=\"none\" stroke=\"#d4443c\" stroke-width=\"0.18\" "
               "stroke-linejoin=\"round\" stroke-linecap=\"round\"/>\n";
        const CellIndex s = plan->path.front();
        const CellIndex g = plan->path.back();
        svg += "<circle cx=\"" + num(s.x + 0.5) + "\" cy=\"" + num(s.y + 0.5) +
               "\" r=\"0.3\" fill=\"#2e8b57\"/>\n";
        svg += "<circle cx=\"" + num(g.x + 0.5) + "\" cy=\"" + num(g.y + 0.5) +
               "\" r=\"0.3\" fill=\"none\" stroke=\"#c03030\" stroke-width=\"0.12\"/>\n";
    }

    if (log && !log->trajectory.empty()) {
        std::string pts;
        for (const auto& row : log->trajectory) {
            if (!pts.empty()) pts += " ";
            pts += num(row[1] / cell) + "," + num(row[2] / cell);
        }
        svg += "<polyline points=\"" + pts +
               "\" fill=\"none\" stroke=\"#2a6fd6\" stroke-width=\"0.12\" "
               "stroke-linejoin=\"round\" stroke-linecap=\"round\"/>\n";
    }

    svg += "</svg>\n";
    return svg;
}

}  // namespace overstep
