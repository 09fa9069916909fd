#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "overstep/profile.hpp"

namespace overstep {

// Column/row address of one grid cell. x grows east, y grows with the row
// index (row 0 is the top of the map file).
struct CellIndex {
    int x = 0;
    int y = 0;

    friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

enum class TraversalClass { Direct, Overcome, Blocked };
enum class MoveKind { Cardinal, Diagonal };

// Immutable 2.5D heightfield: one elevation per cell, row-major storage.
class HeightGrid {
public:
    HeightGrid(int width, int height, double cell_size, std::vector<double> heights);

    int width() const { return width_; }
    int height() const { return height_; }
    double cell_size() const { return cell_size_; }
    const std::vector<double>& heights() const { return heights_; }

    bool in_bounds(CellIndex c) const {
        return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_;
    }
    std::size_t index_of(CellIndex c) const {
        return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(c.x);
    }
    double height_at(CellIndex c) const;

    // World-frame center of a cell, in meters. The world y axis runs with the
    // row index so rendering and simulation share one frame.
    double center_x(CellIndex c) const { return (c.x + 0.5) * cell_size_; }
    double center_y(CellIndex c) const { return (c.y + 0.5) * cell_size_; }

private:
    int width_;
    int height_;
    double cell_size_;
    std::vector<double> heights_;
};

struct NeighborEntry {
    CellIndex cell;
    MoveKind kind;
    TraversalClass cls;
};

// MoveKind of the step from `from` to `to`; throws if the cells are not
// distinct 8-neighbors.
MoveKind move_kind_between(CellIndex from, CellIndex to);

// Three-way surmountability of one adjacent step, from the height difference
// against the profile thresholds. Diagonal steps never classify as Overcome:
// climbing requires a face-on approach, so a diagonal step whose height change
// lands in the overcome band reads as Blocked.
TraversalClass classify_transition(const HeightGrid& grid, CellIndex from, CellIndex to,
                                   const RobotProfile& profile);

// All adjacent, in-bounds, non-Blocked steps out of `at`. Direct steps come
// from the full 8-neighborhood, Overcome steps only from the 4-neighborhood.
// Order is fixed: offsets scan (dy, dx) ascending.
std::vector<NeighborEntry> neighbors(const HeightGrid& grid, CellIndex at,
                                     const RobotProfile& profile);

// Same, into a caller-owned buffer (cleared first). Search loops call this
// once per expansion; reusing the buffer keeps the hot path allocation-free.
void neighbors(const HeightGrid& grid, CellIndex at, const RobotProfile& profile,
               std::vector<NeighborEntry>& out);

// Map file round trip. The format is a JSON document with fields `width`,
// `height`, `cell_size_m` and `heights` (row-major, row 0 first).
HeightGrid load_map(const std::string& text);
std::string save_map(const HeightGrid& grid);
HeightGrid load_map_file(const std::filesystem::path& path);
void save_map_file(const HeightGrid& grid, const std::filesystem::path& path);

}  // namespace overstep
