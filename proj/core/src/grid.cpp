#include "overstep/grid.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace overstep {

HeightGrid::HeightGrid(int width, int height, double cell_size, std::vector<double> heights)
    : width_(width), height_(height), cell_size_(cell_size), heights_(std::move(heights)) {
    if (width_ < 1 || height_ < 1)
        throw std::invalid_argument("HeightGrid: width and height must be >= 1");
    if (!(cell_size_ > 0.0)) throw std::invalid_argument("HeightGrid: cell_size must be > 0");
    const auto expected = static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
    if (heights_.size() != expected)
        throw std::invalid_argument("HeightGrid: heights length must equal width*height");
    for (double h : heights_) {
        if (!std::isfinite(h))
            throw std::invalid_argument("HeightGrid: heights must all be finite");
    }
}

double HeightGrid::height_at(CellIndex c) const {
    if (!in_bounds(c)) throw std::invalid_argument("HeightGrid: cell index out of bounds");
    return heights_[index_of(c)];
}

MoveKind move_kind_between(CellIndex from, CellIndex to) {
    const int dx = std::abs(to.x - from.x);
    const int dy = std::abs(to.y - from.y);
    if (dx == 0 && dy == 0) throw std::invalid_argument("move: cells must be distinct");
    if (dx > 1 || dy > 1) throw std::invalid_argument("move: cells must be adjacent");
    return (dx + dy == 1) ? MoveKind::Cardinal : MoveKind::Diagonal;
}

TraversalClass classify_transition(const HeightGrid& grid, CellIndex from, CellIndex to,
                                   const RobotProfile& profile) {
    if (!grid.in_bounds(from) || !grid.in_bounds(to))
        throw std::invalid_argument("classify_transition: cell out of bounds");
    const MoveKind kind = move_kind_between(from, to);
    const double dh = std::abs(grid.height_at(to) - grid.height_at(from));
    if (dh < profile.max_direct_height) return TraversalClass::Direct;
    if (dh > profile.max_overcome_height) return TraversalClass::Blocked;
    // In the overcome band. Face-on approach only: diagonals read as Blocked.
    return kind == MoveKind::Cardinal ? TraversalClass::Overcome : TraversalClass::Blocked;
}

std::vector<NeighborEntry> neighbors(const HeightGrid& grid, CellIndex at,
                                     const RobotProfile& profile) {
    std::vector<NeighborEntry> out;
    out.reserve(8);
    neighbors(grid, at, profile, out);
    return out;
}

void neighbors(const HeightGrid& grid, CellIndex at, const RobotProfile& profile,
               std::vector<NeighborEntry>& out) {
    if (!grid.in_bounds(at)) throw std::invalid_argument("neighbors: cell out of bounds");
    static constexpr int kOffsets[8][2] = {{-1, -1}, {0, -1}, {1, -1}, {-1, 0},
                                           {1, 0},   {-1, 1}, {0, 1},  {1, 1}};
    out.clear();
    for (const auto& off : kOffsets) {
        const CellIndex c{at.x + off[0], at.y + off[1]};
        if (!grid.in_bounds(c)) continue;
        const TraversalClass cls = classify_transition(grid, at, c, profile);
        if (cls == TraversalClass::Blocked) continue;
        if (off[0] != 0 && off[1] != 0) {
            // No corner cutting: a diagonal move needs both flanking cardinal
            // cells passable, or the footprint would sweep across the barrier.
            const CellIndex side_a{at.x + off[0], at.y};
            const CellIndex side_b{at.x, at.y + off[1]};
            if (classify_transition(grid, at, side_a, profile) == TraversalClass::Blocked ||
                classify_transition(grid, at, side_b, profile) == TraversalClass::Blocked)
                continue;
        }
        out.push_back({c, move_kind_between(at, c), cls});
    }
}

namespace {

const nlohmann::json& require_field(const nlohmann::json& doc, const char* name) {
    auto it = doc.find(name);
    if (it == doc.end())
        throw std::runtime_error(std::string("map: missing field `") + name + "`");
    return *it;
}

}  // namespace

HeightGrid load_map(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("map: not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw std::runtime_error("map: document must be a JSON object");

    const auto& jw = require_field(doc, "width");
    const auto& jh = require_field(doc, "height");
    const auto& jc = require_field(doc, "cell_size_m");
    const auto& jz = require_field(doc, "heights");
    if (!jw.is_number_integer() || !jh.is_number_integer())
        throw std::runtime_error("map: `width` and `height` must be integers");
    if (!jc.is_number()) throw std::runtime_error("map: `cell_size_m` must be a number");
    if (!jz.is_array()) throw std::runtime_error("map: `heights` must be an array");

    const int width = jw.get<int>();
    const int height = jh.get<int>();
    const double cell = jc.get<double>();
    if (width < 1 || height < 1) throw std::runtime_error("map: `width`/`height` must be >= 1");
    if (!(cell > 0.0)) throw std::runtime_error("map: `cell_size_m` must be > 0");
    const auto expected = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (jz.size() != expected)
        throw std::runtime_error("map: `heights` length must equal width*height");

    std::vector<double> heights;
    heights.reserve(expected);
    for (const auto& v : jz) {
        if (!v.is_number()) throw std::runtime_error("map: `heights` entries must be numbers");
        const double h = v.get<double>();
        if (!std::isfinite(h)) throw std::runtime_error("map: `heights` entries must be finite");
        heights.push_back(h);
    }
    return HeightGrid(width, height, cell, std::move(heights));
}

std::string save_map(const HeightGrid& grid) {
    nlohmann::json doc;
    doc["width"] = grid.width();
    doc["height"] = grid.height();
    doc["cell_size_m"] = grid.cell_size();
    doc["heights"] = grid.heights();
    return doc.dump(2) + "\n";
}

HeightGrid load_map_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("map: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_map(buf.str());
}

void save_map_file(const HeightGrid& grid, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("map: cannot write " + path.string());
    out << save_map(grid);
}

}  // namespace overstep
