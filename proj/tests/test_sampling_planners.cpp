#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "pathbench/graph_planners.hpp"
#include "pathbench/map_gen.hpp"
#include "pathbench/sampling_planners.hpp"

using namespace pathbench;

namespace {

using Planner = PlanOutcome (*)(const GridMap&, const MoveModel&, const SamplerParams&, const PlanOptions&);

const std::vector<std::pair<const char*, Planner>> kPlanners{
    {"d-rrt", d_rrt}, {"d-rt", d_rt}, {"d-rrt-connect", d_rrt_connect}, {"d-rrt-star", d_rrt_star}, {"d-sprm", d_sprm}};

GridMap with_endpoints(GridMap m, const Cell& a, const Cell& g) {
  m.set_agent(a);
  m.set_goal(g);
  return m;
}

SamplerParams seeded(std::uint64_t s) {
  SamplerParams p;
  p.seed = s;
  return p;
}

// Every node reaches node 0 by following parents.
bool is_tree(const TreeDump& t) {
  std::vector<int> parent(t.nodes.size(), -1);
  for (const auto& [a, b] : t.edges) {
    if (parent[static_cast<std::size_t>(b)] >= 0) return false;
    parent[static_cast<std::size_t>(b)] = a;
  }
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    std::size_t hops = 0;
    int at = static_cast<int>(i);
    while (at != 0) {
      at = parent[static_cast<std::size_t>(at)];
      if (at < 0 || ++hops > t.nodes.size()) return false;
    }
  }
  return true;
}

}  // namespace

TEST(GridSteer, NoProgressTowardSelf) {
  EXPECT_FALSE(grid_steer(Cell(3, 3), Cell(3, 3), 4, GridMap(8, 8)));
}

TEST(GridSteer, ClearCorridorStepThree) {
  EXPECT_EQ(grid_steer(Cell(2, 0), Cell(2, 9), 3, GridMap(5, 10)), Cell(2, 3));
  EXPECT_EQ(grid_steer(Cell(0, 0), Cell(6, 6), 3, GridMap(8, 8)), Cell(3, 3));
}

TEST(GridSteer, StopsBeforeObstacle) {
  GridMap m(5, 10);
  m.set_obstacle(Cell(2, 2));
  EXPECT_EQ(grid_steer(Cell(2, 0), Cell(2, 9), 5, m), Cell(2, 1));
  m.set_obstacle(Cell(2, 1));
  EXPECT_FALSE(grid_steer(Cell(2, 0), Cell(2, 9), 5, m));
}

TEST(Samplers, AdjacentGoalOnEmptyMap) {
  const auto m = with_endpoints(GridMap(16, 16), Cell(7, 7), Cell(7, 8));
  for (const auto& [name, plan] : kPlanners) {
    auto p = seeded(1);
    p.max_samples = 200;
    const auto o = plan(m, MoveModel{}, p, {});
    ASSERT_TRUE(o.success) << name;
    EXPECT_FALSE(validate_path(m, MoveModel{}, *o.path, m.agent(), m.goal())) << name;
  }
}

TEST(Samplers, EmptyMapSucceeds) {
  const auto m = with_endpoints(GridMap(32, 32), Cell(0, 0), Cell(31, 20));
  for (const auto& [name, plan] : kPlanners) {
    const auto o = plan(m, MoveModel{}, seeded(5), {});
    ASSERT_TRUE(o.success) << name;
    EXPECT_FALSE(validate_path(m, MoveModel{}, *o.path, m.agent(), m.goal())) << name;
  }
}

TEST(Samplers, StartEqualsGoal) {
  const auto m = with_endpoints(GridMap(4, 4), Cell(1, 1), Cell(1, 1));
  for (const auto& [name, plan] : kPlanners) {
    const auto o = plan(m, MoveModel{}, seeded(2), {});
    ASSERT_TRUE(o.success) << name;
    EXPECT_EQ(o.path->size(), 1u) << name;
  }
}

TEST(Samplers, PathsValidAndFailuresReported) {
  Rng rng(21);
  for (int t = 0; t < 30; ++t) {
    GenConfig c;
    c.extent = {24, 24, 1};
    c.type = static_cast<MapType>(t % 3);
    c.seed = static_cast<std::uint64_t>(t);
    const GridMap m = place_agent_goal(generate_map(c), rng);
    const bool solvable = astar(m).success;
    for (const auto& [name, plan] : kPlanners) {
      const auto o = plan(m, MoveModel{}, seeded(static_cast<std::uint64_t>(t)), {});
      if (o.success) {
        EXPECT_TRUE(solvable) << name;
        EXPECT_FALSE(validate_path(m, MoveModel{}, *o.path, m.agent(), m.goal())) << name;
      } else {
        EXPECT_NE(o.failure, FailureReason::None) << name;
        EXPECT_TRUE(m.is_free(o.terminal_cell)) << name;
      }
      for (const auto& cell : o.trace.explored) EXPECT_TRUE(m.is_free(cell)) << name;
    }
  }
}

TEST(Samplers, FixedSeedIsDeterministic) {
  Rng rng(4);
  GenConfig c;
  c.extent = {32, 32, 1};
  c.seed = 4;
  const GridMap m = place_agent_goal(generate_map(c), rng);
  PlanOptions opts;
  opts.record_tree = true;
  for (const auto& [name, plan] : kPlanners) {
    const auto a = plan(m, MoveModel{}, seeded(8), opts), b = plan(m, MoveModel{}, seeded(8), opts);
    EXPECT_EQ(a.success, b.success) << name;
    if (a.success) {
      EXPECT_EQ(a.path->cells, b.path->cells) << name;
    }
    EXPECT_EQ(a.trace.explored, b.trace.explored) << name;
    EXPECT_EQ(a.tree->nodes, b.tree->nodes) << name;
    EXPECT_EQ(a.tree->edges, b.tree->edges) << name;
  }
}

TEST(Samplers, ParameterValidation) {
  const auto m = with_endpoints(GridMap(4, 4), Cell(0, 0), Cell(3, 3));
  SamplerParams p;
  p.step_cells = -1;
  EXPECT_THROW(d_rrt(m, MoveModel{}, p), std::invalid_argument);
  p = {};
  p.goal_bias = 1.5;
  EXPECT_THROW(d_rrt_connect(m, MoveModel{}, p), std::invalid_argument);
  EXPECT_THROW(d_sprm(GridMap(3, 3), MoveModel{}, SamplerParams{}), std::invalid_argument);
}

TEST(Samplers, TreeDumpEdgesAreTrees) {
  Rng rng(12);
  GenConfig c;
  c.extent = {24, 24, 1};
  for (int t = 0; t < 10; ++t) {
    c.seed = static_cast<std::uint64_t>(t);
    const GridMap m = place_agent_goal(generate_map(c), rng);
    PlanOptions opts;
    opts.record_tree = true;
    for (const Planner plan : {Planner(d_rrt), Planner(d_rt), Planner(d_rrt_star)}) {
      const auto o = plan(m, MoveModel{}, seeded(3), opts);
      ASSERT_TRUE(o.tree);
      EXPECT_TRUE(is_tree(*o.tree));
      EXPECT_EQ(o.tree->nodes.front(), *m.agent());
    }
  }
}

TEST(SampleTree, RewiringNeverCreatesCycles) {
  GridMap m(10, 10);
  SampleTree t(m);
  t.add(Cell(0, 0), -1, {});
  t.add(Cell(0, 2), 0, {Cell(0, 1), Cell(0, 2)});
  t.add(Cell(2, 2), 1, {Cell(1, 2), Cell(2, 2)});
  t.add(Cell(1, 1), 0, {Cell(1, 1)});
  t.reparent(2, 3, {Cell(2, 2)});
  EXPECT_TRUE(t.acyclic());
  EXPECT_TRUE(t.edges_valid(MoveModel{}));
  EXPECT_DOUBLE_EQ(t.cost(2), 2.0 * std::sqrt(2.0));
  EXPECT_EQ(t.branch(2), (std::vector<Cell>{Cell(0, 0), Cell(1, 1), Cell(2, 2)}));
}

TEST(RrtStar, MoreSamplesDoNotRaiseMeanCost) {
  Rng rng(31);
  double small = 0.0, large = 0.0;
  int both = 0;
  for (int t = 0; t < 100; ++t) {
    GenConfig c;
    c.extent = {24, 24, 1};
    c.seed = 1000 + static_cast<std::uint64_t>(t);
    const GridMap m = place_agent_goal(generate_map(c), rng);
    auto p = seeded(static_cast<std::uint64_t>(t));
    p.max_samples = 600;
    const auto a = d_rrt_star(m, MoveModel{}, p);
    p.max_samples = 1200;
    const auto b = d_rrt_star(m, MoveModel{}, p);
    if (!a.success || !b.success) continue;
    small += a.path->cost;
    large += b.path->cost;
    ++both;
  }
  ASSERT_GT(both, 50);
  EXPECT_LE(large / both, 1.01 * small / both);
}

TEST(DRt, SingleCorridorSucceeds) {
  GridMap m(3, 25);
  m.fill(true);
  for (int c = 0; c < 25; ++c) m.set_obstacle(Cell(1, c), false);
  m = with_endpoints(m, Cell(1, 0), Cell(1, 24));
  int ok = 0;
  for (std::uint64_t s = 0; s < 100; ++s) ok += d_rt(m, MoveModel{}, seeded(s)).success;
  EXPECT_EQ(ok, 100);
}

TEST(DSprm, DirectEdgeWhenInRange) {
  GridMap m(20, 20);
  m.set_obstacle(Cell(10, 3));
  m = with_endpoints(m, Cell(2, 2), Cell(6, 7));
  const auto p = seeded(9);
  PlanOptions opts;
  opts.record_tree = true;
  const auto o = d_sprm(m, MoveModel{}, p, opts);
  ASSERT_TRUE(o.success);
  EXPECT_EQ(o.path->cells, line_cells(Cell(2, 2), Cell(6, 7), MoveModel{}));
  const auto& edges = o.tree->edges;
  EXPECT_NE(std::find(edges.begin(), edges.end(), std::pair<int, int>{0, 1}), edges.end());
}

TEST(DSprm, DisconnectedRoadmapIsUnreachable) {
  GridMap m(9, 9);
  for (int r = 0; r < 9; ++r) m.set_obstacle(Cell(r, 4));
  m = with_endpoints(m, Cell(4, 0), Cell(4, 8));
  const auto o = d_sprm(m, MoveModel{}, seeded(1));
  EXPECT_FALSE(o.success);
  EXPECT_EQ(o.failure, FailureReason::Unreachable);
  EXPECT_LT(o.terminal_cell[1], 4);
}

TEST(Samplers, ThreeDimensional) {
  Rng rng(6);
  GenConfig c;
  c.dims = 3;
  c.extent = {12, 12, 12};
  c.seed = 6;
  const GridMap m = place_agent_goal(generate_map(c), rng);
  if (!astar(m).success) GTEST_SKIP();
  for (const auto& [name, plan] : kPlanners) {
    const auto o = plan(m, MoveModel{}, seeded(6), {});
    if (o.success) {
      EXPECT_FALSE(validate_path(m, MoveModel{}, *o.path, m.agent(), m.goal())) << name;
    }
  }
}
