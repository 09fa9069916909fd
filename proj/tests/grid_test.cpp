#include <cmath>
#include <vector>

#include "doctest.h"
#include "overstep/grid.hpp"

using namespace overstep;

namespace {

HeightGrid tiny(std::vector<double> z, int w = 3, int h = 3) {
    return HeightGrid(w, h, 1.0, std::move(z));
}

}  // namespace

TEST_CASE("grid construction rejects bad shapes") {
    CHECK_THROWS_AS(HeightGrid(0, 3, 1.0, {}), std::invalid_argument);
    CHECK_THROWS_AS(HeightGrid(2, 2, 0.0, std::vector<double>(4, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(HeightGrid(2, 2, 1.0, std::vector<double>(3, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(HeightGrid(2, 2, 1.0, {0.0, 0.0, 0.0, std::nan("")}), std::invalid_argument);
}

TEST_CASE("transition class follows the height difference thresholds") {
    RobotProfile p;  // direct under 0.05, overcome band 0.05..0.5 inclusive
    const HeightGrid g = tiny({0.0, 0.04, 0.0,   //
                               0.05, 0.3, 0.5,   //
                               0.0, 0.51, 1.0});

    CHECK(classify_transition(g, {0, 0}, {1, 0}, p) == TraversalClass::Direct);
    // both band edges are inclusive for cardinal steps
    CHECK(classify_transition(g, {0, 0}, {0, 1}, p) == TraversalClass::Overcome);
    CHECK(classify_transition(g, {2, 0}, {2, 1}, p) == TraversalClass::Overcome);
    // just past the upper edge is blocked even face-on
    CHECK(classify_transition(g, {0, 2}, {1, 2}, p) == TraversalClass::Blocked);
    CHECK(classify_transition(g, {1, 1}, {2, 1}, p) == TraversalClass::Overcome);
    CHECK(move_kind_between({0, 0}, {1, 1}) == MoveKind::Diagonal);
    CHECK_THROWS_AS(classify_transition(g, {0, 0}, {2, 1}, p), std::invalid_argument);
}

TEST_CASE("band transitions are direction independent in class but not in cost") {
    RobotProfile p;
    const HeightGrid g = tiny({0.0, 0.3, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0});
    CHECK(classify_transition(g, {0, 0}, {1, 0}, p) == TraversalClass::Overcome);
    CHECK(classify_transition(g, {1, 0}, {0, 0}, p) == TraversalClass::Overcome);
}

TEST_CASE("diagonal steps never classify as overcome") {
    RobotProfile p;
    const HeightGrid g = tiny({0.0, 0.0, 0.0,  //
                               0.0, 0.3, 0.0,  //
                               0.0, 0.0, 0.0});
    CHECK(classify_transition(g, {0, 0}, {1, 1}, p) == TraversalClass::Blocked);
    CHECK(classify_transition(g, {0, 1}, {1, 1}, p) == TraversalClass::Overcome);
    // stepping off the block is symmetric
    CHECK(classify_transition(g, {1, 1}, {0, 0}, p) == TraversalClass::Blocked);
    CHECK(classify_transition(g, {1, 1}, {2, 1}, p) == TraversalClass::Overcome);
}

TEST_CASE("steps above the overcome limit are blocked even face-on") {
    RobotProfile p;
    const HeightGrid g = tiny({0.0, 0.6, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0});
    CHECK(classify_transition(g, {0, 0}, {1, 0}, p) == TraversalClass::Blocked);
}

TEST_CASE("neighbors scan a fixed order and drop blocked steps") {
    RobotProfile p;
    const HeightGrid g = tiny({0.0, 0.0, 0.0,  //
                               0.0, 0.0, 0.3,  //
                               0.0, 1.0, 0.0});
    const auto n = neighbors(g, {1, 1}, p);
    // 8-neighborhood minus the impassable block at (1,2) and minus the two
    // diagonals flanked by it, which would cut its corner. The cardinal step
    // onto the 0.3 block stays, classified Overcome, and the diagonal past
    // that climbable flank stays too: only impassable corners forbid the cut.
    std::vector<CellIndex> cells;
    for (const auto& e : n) cells.push_back(e.cell);
    const std::vector<CellIndex> expected = {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {2, 1}};
    CHECK(cells == expected);
    for (const auto& e : n) {
        if (e.cell == CellIndex{2, 1}) {
            CHECK(e.cls == TraversalClass::Overcome);
            CHECK(e.kind == MoveKind::Cardinal);
        } else if (e.cell == CellIndex{2, 0}) {
            CHECK(e.cls == TraversalClass::Direct);
            CHECK(e.kind == MoveKind::Diagonal);
        }
    }
}

TEST_CASE("corner cells have three neighbors on a flat grid") {
    RobotProfile p;
    const HeightGrid g = tiny(std::vector<double>(9, 0.0));
    CHECK(neighbors(g, {0, 0}, p).size() == 3);
    CHECK(neighbors(g, {2, 2}, p).size() == 3);
    CHECK(neighbors(g, {1, 1}, p).size() == 8);
}

TEST_CASE("map json round trips exactly") {
    const HeightGrid g = tiny({0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8});
    const std::string text = save_map(g);
    const HeightGrid back = load_map(text);
    CHECK(back.width() == g.width());
    CHECK(back.height() == g.height());
    CHECK(back.cell_size() == g.cell_size());
    CHECK(back.heights() == g.heights());
    CHECK(save_map(back) == text);
}

TEST_CASE("map json rejects malformed documents with a named field") {
    CHECK_THROWS_WITH_AS(load_map("not json"),
                         doctest::Contains("not valid JSON"), std::runtime_error);
    CHECK_THROWS_WITH_AS(load_map(R"({"width": 2, "height": 2, "heights": [0,0,0,0]})"),
                         doctest::Contains("cell_size_m"), std::runtime_error);
    CHECK_THROWS_WITH_AS(
        load_map(R"({"width": 2, "height": 2, "cell_size_m": 1.0, "heights": [0,0,0]})"),
        doctest::Contains("length"), std::runtime_error);
    CHECK_THROWS_WITH_AS(
        load_map(R"({"width": 2, "height": 2, "cell_size_m": 1.0, "heights": [0,0,0,"x"]})"),
        doctest::Contains("numbers"), std::runtime_error);
}
