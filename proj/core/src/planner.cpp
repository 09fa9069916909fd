#include "overstep/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

namespace overstep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kReparentTol = 1e-12;  // float churn guard on strictly-smaller-g

struct OpenEntry {
    double key;  // f for best-first, h for greedy
    double g;
    std::size_t idx;
};

// Min-key ordering; ties prefer the deeper node (larger g), then the smaller
// row-major index. Fully deterministic.
struct OpenWorse {
    bool operator()(const OpenEntry& a, const OpenEntry& b) const {
        if (a.key != b.key) return a.key > b.key;
        if (a.g != b.g) return a.g < b.g;
        return a.idx > b.idx;
    }
};

struct NodeRec {
    double g = kInf;
    double f = kInf;
    int parent = -1;  // row-major index, -1 for the start node
    bool closed = false;
    bool via_overcome = false;
};

struct ViaChain {
    CellIndex parent;
    std::vector<CellIndex> via;
};

int rotate_x(int dx, int dy, int sense) { return sense > 0 ? -dy : dy; }
int rotate_y(int dx, int dy, int sense) { return sense > 0 ? dx : -dx; }

bool barrier_step(const HeightGrid& grid, const RobotProfile& profile, CellIndex from,
                  CellIndex to, double switch_threshold, bool allow_overcome) {
    const TraversalClass cls = classify_transition(grid, from, to, profile);
    if (cls == TraversalClass::Blocked) return true;
    if (cls == TraversalClass::Overcome) {
        if (!allow_overcome) return true;
        const double t =
            overcoming_time(grid.height_at(to) - grid.height_at(from), profile);
        return t > switch_threshold;
    }
    return false;
}

struct Search {
    const HeightGrid& grid;
    const RobotProfile& profile;
    const CellIndex goal;
    const Strategy strategy;
    const PlanOptions& options;
    const double switch_threshold;
    const int wall_budget;

    std::vector<NodeRec> rec;
    std::vector<bool> episode_trail;  // cells walked by any wall-follow episode
    std::unordered_map<std::size_t, ViaChain> via_chains;
    std::priority_queue<OpenEntry, std::vector<OpenEntry>, OpenWorse> open;
    std::vector<std::size_t> suppressed_anchors;
    SearchStats stats;
    std::vector<CellIndex> footprint;
    std::vector<double> h_cache;  // per-cell heuristic, lazy; -1 = unset
    std::vector<NeighborEntry> nb_buf;

    Search(const HeightGrid& g, const RobotProfile& p, CellIndex goal_cell, Strategy s,
           const PlanOptions& opts)
        : grid(g),
          profile(p),
          goal(goal_cell),
          strategy(s),
          options(opts),
          switch_threshold(opts.switch_threshold > 0.0
                               ? opts.switch_threshold
                               : 2.0 * g.cell_size() / p.speed),
          wall_budget(opts.wall_budget > 0 ? opts.wall_budget
                                           : 4 * (g.width() + g.height())),
          rec(static_cast<std::size_t>(g.width()) * g.height()),
          episode_trail(rec.size(), false),
          h_cache(rec.size(), -1.0) {
        nb_buf.reserve(8);
    }

    double h_of(CellIndex c) {
        double& h = h_cache[grid.index_of(c)];
        if (h < 0.0) h = heuristic_time(c, goal, grid, profile, options.metric);
        return h;
    }
    CellIndex cell_of(std::size_t idx) const {
        return CellIndex{static_cast<int>(idx % grid.width()),
                         static_cast<int>(idx / grid.width())};
    }

    void push_open(std::size_t idx, double g) {
        const double h = h_of(cell_of(idx));
        rec[idx].f = evaluate_f(g, h);
        open.push({strategy == Strategy::Gbfs ? h : rec[idx].f, g, idx});
        ++stats.nodes_generated;
    }

    void fill_neighbors(std::size_t idx) { neighbors(grid, cell_of(idx), profile, nb_buf); }

    void expand_neighbors(std::size_t idx) {
        fill_neighbors(idx);
        expand_from_buf(idx);
    }

    void expand_from_buf(std::size_t idx) {
        const CellIndex at = cell_of(idx);
        const double g_here = rec[idx].g;
        for (const NeighborEntry& nb : nb_buf) {
            if (nb.cls == TraversalClass::Overcome && !options.allow_overcome) continue;
            const std::size_t nidx = grid.index_of(nb.cell);
            NodeRec& r = rec[nidx];
            if (r.closed) continue;
            const double ng =
                g_here + step_cost(grid, at, nb.cell, nb.kind, nb.cls, profile).total;
            if (ng < r.g - kReparentTol) {
                r.g = ng;
                r.parent = static_cast<int>(idx);
                r.via_overcome = nb.cls == TraversalClass::Overcome;
                via_chains.erase(nidx);
                push_open(nidx, ng);
            }
        }
    }

    // Episode trigger: every strictly h-improving neighbor of the popped cell
    // is barred (Blocked, or Overcome costing more than the switch threshold).
    // Reads the neighbor buffer the expansion is about to use; a neighbor the
    // buffer omits is blocked, and blocked is barred.
    bool barrier_ahead(CellIndex at) {
        const double h_here = h_of(at);
        for (const NeighborEntry& nb : nb_buf) {
            if (!(h_of(nb.cell) < h_here)) continue;
            if (nb.cls == TraversalClass::Overcome) {
                if (!options.allow_overcome) continue;
                if (overcoming_time(grid.height_at(nb.cell) - grid.height_at(at), profile) >
                    switch_threshold)
                    continue;
            }
            return false;
        }
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                if (dx == 0 && dy == 0) continue;
                const CellIndex c{at.x + dx, at.y + dy};
                if (grid.in_bounds(c) && h_of(c) < h_here) return true;
            }
        }
        return false;
    }

    // The barrier cell the episode follows: the cardinal barred neighbor with
    // the smallest heuristic, ties to the smaller row-major index.
    std::optional<CellIndex> pick_wall(CellIndex at) {
        static constexpr int kCardinal[4][2] = {{0, -1}, {-1, 0}, {1, 0}, {0, 1}};
        std::optional<CellIndex> best;
        double best_h = kInf;
        for (const auto& off : kCardinal) {
            const CellIndex c{at.x + off[0], at.y + off[1]};
            if (!grid.in_bounds(c)) continue;
            if (!barrier_step(grid, profile, at, c, switch_threshold, options.allow_overcome))
                continue;
            const double h = h_of(c);
            if (h < best_h) {
                best_h = h;
                best = c;
            }
        }
        return best;
    }

    // Returns true when at least one jump point entered the open list; normal
    // expansion of the anchor is then skipped and deferred.
    bool run_episode(std::size_t anchor_idx) {
        const CellIndex at = cell_of(anchor_idx);
        if (episode_trail[anchor_idx]) return false;
        const auto wall = pick_wall(at);
        if (!wall) return false;
        const std::size_t wall_idx = grid.index_of(*wall);
        if (episode_trail[wall_idx]) return false;

        SearchNode anchor{at, rec[anchor_idx].g, rec[anchor_idx].f, std::nullopt,
                          rec[anchor_idx].via_overcome};
        const auto jumps =
            wall_follow_episode(grid, profile, anchor, *wall, goal, options.metric,
                                switch_threshold, wall_budget, options.allow_overcome);
        ++stats.mode_switches;
        episode_trail[anchor_idx] = true;
        episode_trail[wall_idx] = true;

        std::size_t accepted = 0;
        for (const JumpPoint& jp : jumps) {
            for (const CellIndex& c : jp.via) episode_trail[grid.index_of(c)] = true;
            const std::size_t jidx = grid.index_of(jp.cell);
            episode_trail[jidx] = true;
            NodeRec& r = rec[jidx];
            if (r.closed) continue;
            if (jp.g < r.g - kReparentTol) {
                r.g = jp.g;
                r.parent = static_cast<int>(anchor_idx);
                const CellIndex last = jp.via.empty() ? at : jp.via.back();
                r.via_overcome = classify_transition(grid, last, jp.cell, profile) ==
                                 TraversalClass::Overcome;
                via_chains[jidx] = ViaChain{at, jp.via};
                push_open(jidx, jp.g);
                ++accepted;
            }
        }
        stats.jump_points += accepted;
        return accepted > 0;
    }

    std::vector<CellIndex> rebuild_path(std::size_t goal_idx) const {
        std::vector<CellIndex> cells;
        std::size_t idx = goal_idx;
        std::size_t guard = 0;
        while (true) {
            if (++guard > rec.size() * 4)
                throw std::logic_error("plan: parent chain does not terminate");
            const CellIndex c = cell_of(idx);
            cells.push_back(c);
            const int parent = rec[idx].parent;
            if (parent < 0) break;
            auto it = via_chains.find(idx);
            if (it != via_chains.end() &&
                grid.index_of(it->second.parent) == static_cast<std::size_t>(parent)) {
                for (auto rit = it->second.via.rbegin(); rit != it->second.via.rend(); ++rit)
                    cells.push_back(*rit);
            }
            idx = static_cast<std::size_t>(parent);
        }
        std::reverse(cells.begin(), cells.end());
        return cells;
    }
};

StepMode mode_of(TraversalClass cls, double dh) {
    if (cls != TraversalClass::Overcome || dh == 0.0) return StepMode::Direct;
    return dh > 0.0 ? StepMode::OvercomeUp : StepMode::OvercomeDown;
}

}  // namespace

PlanOutcome plan(const HeightGrid& grid, CellIndex start, CellIndex goal,
                 const RobotProfile& profile, Strategy strategy, const PlanOptions& options) {
    profile.validate();
    if (!grid.in_bounds(start) || !grid.in_bounds(goal))
        throw std::invalid_argument("plan: start or goal out of bounds");

    const auto t0 = std::chrono::steady_clock::now();
    Search s(grid, profile, goal, strategy, options);

    const std::size_t start_idx = grid.index_of(start);
    s.rec[start_idx].g = 0.0;
    s.push_open(start_idx, 0.0);

    std::optional<std::size_t> found;
    while (!found) {
        if (s.open.empty()) {
            // Completeness fallback: anchors whose normal expansion an episode
            // displaced get expanded before giving up.
            if (!s.suppressed_anchors.empty()) {
                const auto anchors = std::move(s.suppressed_anchors);
                s.suppressed_anchors.clear();
                for (std::size_t a : anchors) s.expand_neighbors(a);
                continue;
            }
            break;
        }
        const OpenEntry e = s.open.top();
        s.open.pop();
        NodeRec& r = s.rec[e.idx];
        if (r.closed || e.g != r.g) continue;  // stale entry
        if (e.idx == grid.index_of(goal)) {
            found = e.idx;
            break;
        }
        r.closed = true;
        ++s.stats.nodes_expanded;
        if (options.collect_footprint) s.footprint.push_back(s.cell_of(e.idx));
        if (options.on_expand) {
            const int p = r.parent;
            options.on_expand(SearchNode{
                s.cell_of(e.idx), r.g, r.f,
                p >= 0 ? std::optional<CellIndex>(s.cell_of(static_cast<std::size_t>(p)))
                       : std::nullopt,
                r.via_overcome});
        }
        s.fill_neighbors(e.idx);
        if (strategy == Strategy::Multimodal && s.barrier_ahead(s.cell_of(e.idx))) {
            if (s.run_episode(e.idx)) {
                s.suppressed_anchors.push_back(e.idx);
                continue;
            }
        }
        s.expand_from_buf(e.idx);
    }

    const auto t1 = std::chrono::steady_clock::now();
    s.stats.wall_clock = std::chrono::duration<double>(t1 - t0).count();

    if (!found) return NoPath{s.stats};

    PlanResult result;
    result.path = s.rebuild_path(*found);
    result.stats = s.stats;
    result.footprint = std::move(s.footprint);
    annotate_path(grid, profile, result);
    return result;
}

std::vector<JumpPoint> wall_follow_episode(const HeightGrid& grid, const RobotProfile& profile,
                                           const SearchNode& anchor, CellIndex wall,
                                           CellIndex goal, Metric metric,
                                           double switch_threshold, int budget,
                                           bool allow_overcome) {
    if (!grid.in_bounds(anchor.cell) || !grid.in_bounds(wall))
        throw std::invalid_argument("wall_follow_episode: cell out of bounds");
    if (move_kind_between(anchor.cell, wall) != MoveKind::Cardinal)
        throw std::invalid_argument("wall_follow_episode: wall must be a cardinal neighbor");

    const double h_anchor = heuristic_time(anchor.cell, goal, grid, profile, metric);
    const int wall_dx = wall.x - anchor.cell.x;
    const int wall_dy = wall.y - anchor.cell.y;

    const auto walkable = [&](CellIndex from, CellIndex to) {
        if (!grid.in_bounds(to)) return false;
        return !barrier_step(grid, profile, from, to, switch_threshold, allow_overcome);
    };

    std::vector<JumpPoint> jumps;
    std::vector<bool> visited;
    for (int sense : {+1, -1}) {
        CellIndex pos = anchor.cell;
        int hx = rotate_x(wall_dx, wall_dy, sense);
        int hy = rotate_y(wall_dx, wall_dy, sense);
        double g = anchor.g;
        std::vector<CellIndex> via;
        visited.assign(static_cast<std::size_t>(grid.width()) * grid.height(), false);
        visited[grid.index_of(pos)] = true;

        for (int step = 0; step < budget; ++step) {
            // Wall-side first, then straight, then away, then back.
            const int cand[4][2] = {{rotate_x(hx, hy, -sense), rotate_y(hx, hy, -sense)},
                                    {hx, hy},
                                    {rotate_x(hx, hy, sense), rotate_y(hx, hy, sense)},
                                    {-hx, -hy}};
            bool moved = false;
            for (const auto& d : cand) {
                const CellIndex next{pos.x + d[0], pos.y + d[1]};
                if (!walkable(pos, next)) continue;
                if (visited[grid.index_of(next)]) continue;
                const TraversalClass cls = classify_transition(grid, pos, next, profile);
                g += step_cost(grid, pos, next, MoveKind::Cardinal, cls, profile).total;
                hx = d[0];
                hy = d[1];
                pos = next;
                visited[grid.index_of(pos)] = true;
                moved = true;
                break;
            }
            if (!moved) break;  // boundary end or enclosure
            if (heuristic_time(pos, goal, grid, profile, metric) <= h_anchor) {
                jumps.push_back(JumpPoint{pos, g, via});
                break;
            }
            via.push_back(pos);
        }
    }
    return jumps;
}

std::vector<CellIndex> reconstruct_path(
    const std::function<std::optional<CellIndex>(CellIndex)>& parent_of, CellIndex goal) {
    std::vector<CellIndex> cells;
    cells.push_back(goal);
    std::size_t guard = 0;
    for (auto p = parent_of(goal); p.has_value(); p = parent_of(*p)) {
        if (++guard > 1u << 24)
            throw std::logic_error("reconstruct_path: parent chain does not terminate");
        cells.push_back(*p);
    }
    std::reverse(cells.begin(), cells.end());
    return cells;
}

void annotate_path(const HeightGrid& grid, const RobotProfile& profile, PlanResult& result) {
    result.steps.clear();
    result.total_time = 0.0;
    if (result.path.empty()) throw std::logic_error("annotate_path: empty path");
    result.steps.reserve(result.path.size() - 1);
    for (std::size_t i = 0; i + 1 < result.path.size(); ++i) {
        const CellIndex a = result.path[i];
        const CellIndex b = result.path[i + 1];
        const MoveKind kind = move_kind_between(a, b);
        const TraversalClass cls = classify_transition(grid, a, b, profile);
        if (cls == TraversalClass::Blocked)
            throw std::logic_error("annotate_path: path crosses a blocked transition");
        const double dh = grid.height_at(b) - grid.height_at(a);
        result.steps.push_back(PlanStep{kind, cls, mode_of(cls, dh)});
        result.total_time += step_cost(grid, a, b, kind, cls, profile).total;
    }
}

std::string verify_plan(const HeightGrid& grid, const RobotProfile& profile,
                        const PlanResult& result, CellIndex start, CellIndex goal) {
    if (result.path.empty()) return "path is empty";
    if (!(result.path.front() == start)) return "path does not begin at start";
    if (!(result.path.back() == goal)) return "path does not end at goal";
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < result.path.size(); ++i) {
        const CellIndex a = result.path[i];
        const CellIndex b = result.path[i + 1];
        if (!grid.in_bounds(a) || !grid.in_bounds(b)) return "path leaves the grid";
        MoveKind kind;
        try {
            kind = move_kind_between(a, b);
        } catch (const std::invalid_argument&) {
            return "consecutive path cells are not adjacent";
        }
        const TraversalClass cls = classify_transition(grid, a, b, profile);
        if (cls == TraversalClass::Blocked) return "path crosses a blocked transition";
        if (cls == TraversalClass::Overcome && kind == MoveKind::Diagonal)
            return "path overcomes on a diagonal step";
        if (kind == MoveKind::Diagonal) {
            const CellIndex side_a{b.x, a.y};
            const CellIndex side_b{a.x, b.y};
            if (classify_transition(grid, a, side_a, profile) == TraversalClass::Blocked ||
                classify_transition(grid, a, side_b, profile) == TraversalClass::Blocked)
                return "path cuts a corner past a blocked cell";
        }
        total += step_cost(grid, a, b, kind, cls, profile).total;
    }
    if (std::abs(total - result.total_time) > 1e-9)
        return "total_time does not match recomputed step costs";
    return {};
}

namespace {

nlohmann::json stats_to_json(const SearchStats& stats) {
    // wall_clock is a measurement, not part of the artifact: identical inputs
    // must produce identical bytes.
    return nlohmann::json{{"nodes_expanded", stats.nodes_expanded},
                          {"nodes_generated", stats.nodes_generated},
                          {"mode_switches", stats.mode_switches},
                          {"jump_points", stats.jump_points}};
}

SearchStats stats_from_json(const nlohmann::json& doc) {
    SearchStats stats;
    stats.nodes_expanded = doc.at("nodes_expanded").get<std::uint64_t>();
    stats.nodes_generated = doc.at("nodes_generated").get<std::uint64_t>();
    stats.mode_switches = doc.at("mode_switches").get<std::uint64_t>();
    stats.jump_points = doc.at("jump_points").get<std::uint64_t>();
    return stats;
}

const char* mode_tag(StepMode m) {
    switch (m) {
        case StepMode::Direct: return "direct";
        case StepMode::OvercomeUp: return "overcome_up";
        case StepMode::OvercomeDown: return "overcome_down";
    }
    return "direct";
}

}  // namespace

std::string plan_to_json(const PlanOutcome& outcome) {
    nlohmann::json doc;
    if (const PlanResult* r = plan_success(outcome)) {
        auto path = nlohmann::json::array();
        for (const CellIndex& c : r->path) path.push_back({c.x, c.y});
        auto modes = nlohmann::json::array();
        for (const PlanStep& s : r->steps) modes.push_back(mode_tag(s.mode));
        doc["path"] = std::move(path);
        doc["modes"] = std::move(modes);
        doc["total_time_s"] = r->total_time;
        doc["stats"] = stats_to_json(r->stats);
    } else {
        doc["no_path"] = true;
        doc["stats"] = stats_to_json(plan_stats(outcome));
    }
    return doc.dump(2) + "\n";
}

PlanOutcome plan_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("plan: not valid JSON: ") + e.what());
    }
    if (doc.value("no_path", false)) return NoPath{stats_from_json(doc.at("stats"))};

    PlanResult r;
    for (const auto& p : doc.at("path")) r.path.push_back(CellIndex{p.at(0), p.at(1)});
    const auto& modes = doc.at("modes");
    if (r.path.empty() || modes.size() + 1 != r.path.size())
        throw std::runtime_error("plan: `modes` length must be path length - 1");
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const std::string tag = modes[i].get<std::string>();
        const MoveKind kind = move_kind_between(r.path[i], r.path[i + 1]);
        StepMode mode;
        TraversalClass cls;
        if (tag == "direct") {
            mode = StepMode::Direct;
            cls = TraversalClass::Direct;
        } else if (tag == "overcome_up") {
            mode = StepMode::OvercomeUp;
            cls = TraversalClass::Overcome;
        } else if (tag == "overcome_down") {
            mode = StepMode::OvercomeDown;
            cls = TraversalClass::Overcome;
        } else {
            throw std::runtime_error("plan: unknown mode tag `" + tag + "`");
        }
        r.steps.push_back(PlanStep{kind, cls, mode});
    }
    r.total_time = doc.at("total_time_s").get<double>();
    r.stats = stats_from_json(doc.at("stats"));
    return r;
}

std::string strategy_name(Strategy s) {
    switch (s) {
        case Strategy::Abfs: return "astar";
        case Strategy::Gbfs: return "greedy";
        case Strategy::Multimodal: return "multimodal";
    }
    return "astar";
}

Strategy strategy_from_name(const std::string& name) {
    if (name == "astar") return Strategy::Abfs;
    if (name == "greedy") return Strategy::Gbfs;
    if (name == "multimodal") return Strategy::Multimodal;
    throw std::invalid_argument("unknown strategy `" + name + "` (astar|greedy|multimodal)");
}

std::string metric_name(Metric m) {
    return m == Metric::Octile ? "octile" : "manhattan";
}

Metric metric_from_name(const std::string& name) {
    if (name == "octile") return Metric::Octile;
    if (name == "manhattan") return Metric::Manhattan;
    throw std::invalid_argument("unknown metric `" + name + "` (octile|manhattan)");
}

}  // namespace overstep
