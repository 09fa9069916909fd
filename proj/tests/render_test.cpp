#include <string>

#include "doctest.h"
#include "overstep/render.hpp"

using namespace overstep;

namespace {

std::size_t count_of(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t at = hay.find(needle); at != std::string::npos;
         at = hay.find(needle, at + needle.size()))
        ++n;
    return n;
}

}  // namespace

TEST_CASE("rendering draws every requested layer exactly once") {
    const HeightGrid g(6, 4, 1.0,
                       {0.0, 0.0, 0.0, 0.0, 0.0, 0.0,  //
                        0.0, 0.3, 1.0, 0.0, 0.0, 0.0,  //
                        0.0, 0.0, 0.0, 0.0, 0.0, 0.0,  //
                        0.0, 0.0, 0.0, 0.0, 0.0, 0.0});
    RobotProfile p;
    const PlanOutcome o = plan(g, {0, 1}, {5, 1}, p, Strategy::Abfs);
    REQUIRE(plan_success(o) != nullptr);
    const PlanResult& r = *plan_success(o);

    ExecutionLog log;
    log.trajectory = {{0.0, 0.5, 1.5, 0.0, 0.0, 0.0}, {0.1, 0.6, 1.5, 0.0, 1.0, 0.0}};
    const std::vector<CellIndex> searched = {{0, 1}, {1, 1}};
    const std::vector<ObstacleDisc> obstacles = {{2.5, 2.5, 0.4, 0.0, 0.0}};

    const std::string svg = render_svg(g, &r, &log, &searched, &obstacles);
    CHECK(svg.starts_with("<svg "));
    CHECK(svg.find("viewBox=\"0 0 6 4\"") != std::string::npos);
    CHECK(count_of(svg, "<polyline") == 2);  // plan and trajectory
    CHECK(count_of(svg, "fill-opacity=\"0.4\"") == 2);  // searched tint per cell
    CHECK(count_of(svg, "#f2a33c") == 1);
    // two raised cells shaded, darker for the taller one
    CHECK(count_of(svg, "fill=\"rgb(") == 2);
    CHECK(svg.find("rgb(40,40,40)") != std::string::npos);   // 1.0 m block
    CHECK(svg.find("rgb(177,177,177)") != std::string::npos);  // 0.3 m step

    // identical inputs render identical bytes
    CHECK(render_svg(g, &r, &log, &searched, &obstacles) == svg);

    // layers are genuinely optional
    const std::string bare = render_svg(g, nullptr, nullptr, nullptr, nullptr);
    CHECK(count_of(bare, "<polyline") == 0);
    CHECK(bare.find("</svg>") != std::string::npos);
}
